"""N*-modules, diagonal-type sequences, and the alpha-MCF machinery.

An N*-module is a set with a free multiplicative action of the positive
integers, a compatible norm, and finite divisor sets.  A GSequence is a
function from such a module into the group algebra; the multiple cover
formula (MCF) is the functional equation

    F(x) = sum_{k|x} k^alpha * Prim(F)(x/k) * T_{|x|/k}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import Any, Callable

from covercount.arith import divisors
from covercount.group_algebra import (
    GroupElement,
    mult_op,
    prim_coefficient,
    t_basis_decompose,
    torsion_average,
)


class MissingDivisorError(KeyError):
    """A required divisor of an element could not be evaluated."""


class InfiniteFiberError(ValueError):
    """Fiber enumeration exceeded the configured bound."""


@dataclass(frozen=True)
class NStarModule:
    """Opaque-key N*-module described by callbacks.

    divisor_fn(x) must return the list of pairs (k, x/k) over all k
    dividing x, including k = 1.
    """

    name: str
    norm_fn: Callable[[Any], int]
    divisor_fn: Callable[[Any], list]
    act_fn: Callable[[int, Any], Any]

    def norm(self, x):
        return self.norm_fn(x)

    def divisors_of(self, x):
        return list(self.divisor_fn(x))

    def act(self, k, x):
        return self.act_fn(k, x)

    def gcd_of(self, x):
        """The largest k with k | x (so x = k * primitive root)."""
        return max(k for k, _ in self.divisors_of(x))

    def primitive_root(self, x):
        ell = self.gcd_of(x)
        for k, y in self.divisors_of(x):
            if k == ell:
                return y
        raise MissingDivisorError(x)


def nstar_module(d=1):
    """The module N* with norm |k| = d*k."""
    return NStarModule(
        name=f"N*({d})",
        norm_fn=lambda x: d * x,
        divisor_fn=lambda x: [(k, x // k) for k in divisors(x)],
        act_fn=lambda k, x: k * x,
    )


def p2_module():
    """The module P2 = {(delta, n) : delta | n^2}, norm (delta, n) -> n.

    k divides (delta, n) when k | delta, k | n and (delta/k) | (n/k)^2.
    """

    def div(x):
        delta, n = x
        out = []
        for k in divisors(gcd(delta, n)):
            d2, n2 = delta // k, n // k
            if (n2 * n2) % d2 == 0:
                out.append((k, (d2, n2)))
        return out

    return NStarModule(
        name="P2",
        norm_fn=lambda x: x[1],
        divisor_fn=div,
        act_fn=lambda k, x: (k * x[0], k * x[1]),
    )


@dataclass
class GSequence:
    """A memoized function from an N*-module into the group algebra."""

    domain: NStarModule
    fn: Callable[[Any], GroupElement]
    _cache: dict = field(default_factory=dict)

    def __call__(self, x):
        key = x
        if key not in self._cache:
            value = self.fn(x)
            if value is None:
                raise MissingDivisorError(x)
            self._cache[key] = value
        return self._cache[key]


@dataclass
class MCFEntry:
    x: Any
    ok: bool
    lhs: GroupElement
    rhs: GroupElement
    torsion_invariant: bool


@dataclass
class MCFReport:
    alpha: int
    entries: list

    @property
    def ok(self):
        return all(e.ok for e in self.entries)

    def failures(self):
        return [e for e in self.entries if not e.ok]

    def to_json(self):
        out = {"alpha": self.alpha, "ok": self.ok, "entries": []}
        for e in self.entries:
            rec = {"x": repr(e.x), "ok": e.ok,
                   "torsion_invariant": e.torsion_invariant}
            for side, elem in (("lhs", e.lhs), ("rhs", e.rhs)):
                try:
                    dec = t_basis_decompose(_lcm_all(elem), elem)
                    rec[side] = {str(k): str(c) for k, c in dec.items() if c}
                except Exception:
                    rec[side] = repr(elem)
            out["entries"].append(rec)
        return json.dumps(out, sort_keys=True, indent=2)


def _lcm_all(elem):
    n = 1
    for p in elem.terms:
        n = n * p.den // gcd(n, p.den)
    return n


def prim_sequence(F):
    """x -> Prim_{|x|}(F(x))."""

    def prim(x):
        return prim_coefficient(F.domain.norm(x), F(x))

    return prim


def mcf_reconstruct(domain, prim, alpha, x):
    """Right-hand side of the alpha-MCF at x from a primitive function."""
    norm_x = domain.norm(x)
    out = GroupElement()
    for k, y in domain.divisors_of(x):
        c = prim(y)
        if c:
            out = out + torsion_average(norm_x // k).scale(
                _int_pow(k, alpha) * c
            )
    return out


def _int_pow(k, alpha):
    from fractions import Fraction

    if alpha >= 0:
        return Fraction(k**alpha)
    return Fraction(1, k ** (-alpha))


def check_alpha_mcf(F, alpha, elements):
    """Compare F(x) against the alpha-MCF right-hand side for each x."""
    prim = prim_sequence(F)
    entries = []
    for x in elements:
        lhs = F(x)
        rhs = mcf_reconstruct(F.domain, prim, alpha, x)
        base = F.domain.norm(x) // F.domain.gcd_of(x)
        invariant = lhs * torsion_average(base) == lhs
        entries.append(MCFEntry(x, lhs == rhs and invariant, lhs, rhs,
                                invariant))
    return MCFReport(alpha=alpha, entries=entries)


def orbit_restrict_and_unshift(F, l):
    """The sequence delta -> m{l}(F(l*delta)) on N* with the standard norm.

    F must live on an integer-keyed module (N* with some norm scale).
    """
    return GSequence(domain=nstar_module(1),
                     fn=lambda delta: mult_op(l, F(l * delta)))


@dataclass(frozen=True)
class Morphism:
    """A morphism of N*-modules with enumerable fibers."""

    source: NStarModule
    target: NStarModule
    map_fn: Callable[[Any], Any]
    fiber_fn: Callable[[Any], list]

    def fiber(self, y, max_fiber=None):
        xs = list(self.fiber_fn(y))
        if max_fiber is not None and len(xs) > max_fiber:
            raise InfiniteFiberError(
                f"fiber over {y!r} has {len(xs)} > {max_fiber} elements"
            )
        return xs


def pushforward(F, f, max_fiber=100000):
    """(f_* F)(y) = sum over the fiber of y of F(x)."""

    def fn(y):
        out = GroupElement()
        for x in f.fiber(y, max_fiber=max_fiber):
            out = out + F(x)
        return out

    return GSequence(domain=f.target, fn=fn)

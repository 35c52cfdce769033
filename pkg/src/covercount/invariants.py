"""Assembled correlated invariants and end-to-end multiple cover checks.

The invariant for E x P^1 at genus g and degree (a, w) is the sum of
floor diagram multiplicities; its coefficient at a torsion point theta
is the correlated count for the correlator theta.  The abelian surface
invariant at genus g and diagram degree B = (|B|, a) is the sum of
pearl diagram multiplicities; its coefficient at a torsion point u is
the count for the abelian surface with monodromy u.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from covercount.arith import divisors
from covercount.diagrams import (
    enumerate_floor_diagrams,
    enumerate_pearl_diagrams,
    floor_multiplicity,
    pearl_multiplicity,
)
from covercount.group_algebra import (
    GroupElement,
    TorsionPoint,
    prim_coefficient,
)
from covercount.mcf_core import GSequence, NStarModule, check_alpha_mcf
from covercount.refined_divisors import refined_sigma


@dataclass(frozen=True)
class RamificationProfile:
    """Degree data (a, w) for E x P^1: a >= 1 and a balanced end profile."""

    a: int
    w: tuple

    def __post_init__(self):
        if self.a < 1:
            raise ValueError("a must be positive")
        if not self.w or sum(self.w) != 0 or any(x == 0 for x in self.w):
            raise ValueError("w must be nonempty, nonzero and sum to zero")

    @property
    def norm(self):
        out = 0
        for wi in self.w:
            out = gcd(out, abs(wi))
        return out


@dataclass(frozen=True)
class DiagramDegree:
    """Degree data (|B|, a) for an abelian surface diagram."""

    norm: int
    a: int

    def __post_init__(self):
        if self.norm < 1 or self.a < 1:
            raise ValueError("diagram degree entries must be positive")


def ramification_module():
    """(a, w) pairs under simultaneous scaling; norm is gcd of the profile."""

    def norm(x):
        out = 0
        for wi in x[1]:
            out = gcd(out, abs(wi))
        return out

    def div(x):
        a, w = x
        g = a
        for wi in w:
            g = gcd(g, wi)
        return [
            (k, (a // k, tuple(wi // k for wi in w))) for k in divisors(g)
        ]

    return NStarModule(
        name="ramification data",
        norm_fn=norm,
        divisor_fn=div,
        act_fn=lambda k, x: (k * x[0], tuple(k * wi for wi in x[1])),
    )


def degree_module():
    """(|B|, a) pairs under scaling; norm is the first coordinate."""
    return NStarModule(
        name="diagram degrees",
        norm_fn=lambda x: x[0],
        divisor_fn=lambda x: [
            (k, (x[0] // k, x[1] // k)) for k in divisors(gcd(x[0], x[1]))
        ],
        act_fn=lambda k, x: (k * x[0], k * x[1]),
    )


@lru_cache(maxsize=None)
def ep1_invariant(g, profile, mode="points", g0=None, aut="unlabeled",
                  workers=1):
    """Sum of floor diagram multiplicities at genus g, degree profile.

    profile is a RamificationProfile or an (a, w) pair.  The result
    lives in the group algebra of gcd(w)-torsion points.
    """
    if isinstance(profile, RamificationProfile):
        a, w = profile.a, profile.w
    else:
        a, w = profile
    out = GroupElement()
    for d in enumerate_floor_diagrams(g, a, tuple(w), g0=g0, workers=workers):
        out = out + floor_multiplicity(d, mode=mode, aut=aut)
    return out


@lru_cache(maxsize=None)
def abelian_invariant(g, B, mode="points", g0=None, aut="unlabeled",
                      workers=1):
    """Sum of pearl diagram multiplicities at genus g, diagram degree B."""
    if isinstance(B, DiagramDegree):
        B = (B.norm, B.a)
    out = GroupElement()
    for d in enumerate_pearl_diagrams(g, B, g0=g0, workers=workers):
        out = out + pearl_multiplicity(d, mode=mode, aut=aut)
    return out


def single_floor_closed_form(a, w):
    """Local contribution of one floor with two ends of weight w.

    w^2 * a^(n-1) * sigma^w(a) with n = 2 boundary points.
    """
    if a < 1 or w < 1:
        raise ValueError("a and w must be positive")
    return refined_sigma(1, w, a).scale(Fraction(w * w * a))


def divisibility_of_class(B, u):
    """Divisibility gcd(a, |B|, |B|/order(u)) of the surface class for u."""
    if isinstance(B, DiagramDegree):
        B = (B.norm, B.a)
    norm, a = B
    if norm % u.order:
        raise ValueError(f"{u} is not {norm}-torsion")
    return gcd(gcd(a, norm), norm // u.order)


THEOREMS = {
    "ep1_points": "floor diagrams, point insertions",
    "abelian_points": "pearl diagrams, point insertions",
    "ep1_lambda": "floor diagrams, lambda refinement",
    "abelian_lambda": "pearl diagrams, lambda refinement",
}


def theorem_exponent(which, g, base, g0=None):
    """The cover exponent of the functional equation for each theorem."""
    if which == "ep1_points":
        return 2 * len(base[1]) + 4 * g - 4
    if which == "ep1_lambda":
        return 2 * len(base[1]) + 2 * g0 + 2 * g - 4
    if which == "abelian_points":
        return 4 * g - 3
    if which == "abelian_lambda":
        return 2 * g + 2 * g0 - 3
    raise ValueError(f"unknown theorem {which!r}")


def invariant_sequence(which, g, g0=None, aut="unlabeled", workers=1):
    """The invariant as a memoized sequence on its scaling module."""
    if which not in THEOREMS:
        raise ValueError(f"unknown theorem {which!r}")
    mode = "lambda" if which.endswith("lambda") else "points"
    if which.startswith("ep1"):
        return GSequence(
            domain=ramification_module(),
            fn=lambda x: ep1_invariant(
                g, x, mode=mode, g0=g0, aut=aut, workers=workers
            ),
        )
    return GSequence(
        domain=degree_module(),
        fn=lambda x: abelian_invariant(
            g, x, mode=mode, g0=g0, aut=aut, workers=workers
        ),
    )


def verify_theorem(which, g, base, max_delta=3, g0=None, alpha=None,
                   workers=1):
    """Check the multiple cover formula on the scaling orbit of base.

    base is the primitive parameter: (a, w) for E x P^1 theorems, or
    (|B|, a) for abelian surface theorems.  The check runs the
    alpha-MCF on the orbit k * base for k up to max_delta and then
    verifies the per-coefficient form of the statement: for theta of
    exact order d, the theta-coefficient of the invariant equals
    sum over k dividing both the parameter and norm/d of k^alpha times
    the primitive invariant of the k-fold cover parameter.
    """
    if which.startswith("ep1"):
        base = (base[0], tuple(base[1]))
    else:
        base = tuple(base)
    if alpha is None:
        alpha = theorem_exponent(which, g, base, g0=g0)
    F = invariant_sequence(which, g, g0=g0, workers=workers)
    domain = F.domain
    orbit = [domain.act(k, base) for k in range(1, max_delta + 1)]
    report = check_alpha_mcf(F, alpha, orbit)
    for entry in report.entries:
        if not _coefficient_identity(F, alpha, entry.x):
            entry.ok = False
    return report


def _coefficient_identity(F, alpha, x):
    """The theorem statement coefficient by coefficient at x."""
    domain = F.domain
    norm = domain.norm(x)
    value = F(x)
    for d in divisors(norm):
        theta = TorsionPoint(1, 0, d)
        lhs = value.coeff(theta)
        rhs = Fraction(0)
        for k, y in domain.divisors_of(x):
            if (norm // d) % k:
                continue
            sub_norm = domain.norm(y)
            prim = prim_coefficient(sub_norm, F(y))
            rhs += Fraction(k**alpha) * prim / (sub_norm * sub_norm)
        if lhs != rhs:
            return False
    return True

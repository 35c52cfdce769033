"""The group algebra of torsion points of the 2-torus.

Elements are finitely supported formal Q-linear combinations of points of
(Q/Z)^2.  The module provides the multiplication operator m{d}, the
division (root-averaging) operator d{1/d}, the torsion averages T_n, and
decomposition in the (T_k)_{k|n} basis with primitive-coefficient
extraction.
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache
from math import gcd

from covercount.arith import divisors, jordan2


class NotTorsionError(ValueError):
    """Support of an element escapes the requested torsion subgroup."""


class NotDiagonalError(ValueError):
    """Element is not in the span of the torsion averages T_k."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


_ZERO = Fraction(0)


def _max_terms():
    try:
        return int(os.environ.get("MCF_MAX_TERMS", "1000000"))
    except ValueError:
        return 1000000


class TorsionPoint:
    """A point (x/den, y/den) of (Q/Z)^2, stored fully reduced.

    The constructor reduces modulo 1 and divides out gcd(x, y, den), so
    equal points always have equal representations and den is the exact
    order of the point.
    """

    __slots__ = ("x", "y", "den")

    def __init__(self, x, y, den=1):
        if den <= 0:
            raise ValueError("denominator must be positive")
        x %= den
        y %= den
        g = gcd(gcd(x, y), den)
        self.x = x // g
        self.y = y // g
        self.den = den // g

    @property
    def order(self):
        return self.den

    def __add__(self, other):
        d = self.den * other.den // gcd(self.den, other.den)
        return TorsionPoint(
            self.x * (d // self.den) + other.x * (d // other.den),
            self.y * (d // self.den) + other.y * (d // other.den),
            d,
        )

    def scaled(self, k):
        """The point k*self in (Q/Z)^2, for any integer k."""
        return TorsionPoint(self.x * k, self.y * k, self.den)

    def __eq__(self, other):
        return (
            isinstance(other, TorsionPoint)
            and self.x == other.x
            and self.y == other.y
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.x, self.y, self.den))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (Fraction(self.x, self.den), Fraction(self.y, self.den))

    def __repr__(self):
        return f"({self.x}/{self.den}, {self.y}/{self.den})"


def _point_raw(x, y, den):
    """TorsionPoint from an already fully reduced triple."""
    p = TorsionPoint.__new__(TorsionPoint)
    p.x = x
    p.y = y
    p.den = den
    return p


ZERO_POINT = TorsionPoint(0, 0, 1)


class GroupElement:
    """Immutable sparse Q-linear combination of torsion points."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for point, coeff in terms.items():
                c = Fraction(coeff)
                if c:
                    clean[point] = c
        if len(clean) > _max_terms():
            raise MemoryError(
                f"group element support {len(clean)} exceeds MCF_MAX_TERMS"
            )
        object.__setattr__(self, "terms", clean)

    @staticmethod
    def _raw(terms):
        """Wrap a dict of nonzero Fraction values without copying."""
        if len(terms) > _max_terms():
            raise MemoryError(
                f"group element support {len(terms)} exceeds MCF_MAX_TERMS"
            )
        obj = GroupElement.__new__(GroupElement)
        object.__setattr__(obj, "terms", terms)
        return obj

    @staticmethod
    def point(x, y, den=1, coeff=1):
        return GroupElement({TorsionPoint(x, y, den): Fraction(coeff)})

    @staticmethod
    def zero():
        return GroupElement()

    @staticmethod
    def one():
        return GroupElement({ZERO_POINT: Fraction(1)})

    def coeff(self, point):
        return self.terms.get(point, Fraction(0))

    def support(self):
        return set(self.terms)

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for point, coeff in other.terms.items():
            c = out.get(point, _ZERO) + coeff
            if c:
                out[point] = c
            else:
                out.pop(point, None)
        return GroupElement._raw(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return GroupElement()
        if c == 1:
            return self
        return GroupElement._raw(
            {p: v * c for p, v in self.terms.items()}
        )

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if len(self.terms) * len(other.terms) >= 1024:
            a = _diagonal_coeffs(self)
            b = _diagonal_coeffs(other) if a is not None else None
            if b is not None:
                prod = {}
                for j, cj in a.items():
                    for k, ck in b.items():
                        key = j * k // gcd(j, k)
                        prod[key] = prod.get(key, Fraction(0)) + cj * ck
                return rebuild_from_t_basis(prod)
        return ga_mul_pointwise(self, other)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for p in sorted(self.terms, key=TorsionPoint.sort_key):
            bits.append(f"{self.terms[p]}*{p}")
        return " + ".join(bits)


def ga_add(x, y):
    return x + y


def ga_scale(c, x):
    return x.scale(c)


def ga_mul(x, y):
    return x * y


def ga_mul_pointwise(x, y):
    """Definitional convolution product, bypassing the T-basis fast path.

    x * y routes large products of diagonal elements through their
    T-basis decomposition; this is the underlying pointwise definition,
    kept public so the two paths can be cross-checked.
    """
    out = {}
    cap = _max_terms()
    for p, cp in x.terms.items():
        for q, cq in y.terms.items():
            r = p + q
            c = out.get(r, _ZERO) + cp * cq
            if c:
                out[r] = c
            else:
                out.pop(r, None)
        if len(out) > cap:
            raise MemoryError(f"product support exceeds MCF_MAX_TERMS={cap}")
    return GroupElement._raw(out)


def _diagonal_coeffs(x):
    """T-basis coefficients of x, or None if x is not diagonal."""
    n = 1
    for p in x.terms:
        n = n * p.den // gcd(n, p.den)
        if n > 4096:
            return None
    try:
        return t_basis_decompose(n, x)
    except NotDiagonalError:
        return None


def degree(x):
    """Sum of all coefficients (the degree morphism to Q)."""
    return sum(x.terms.values(), Fraction(0))


def mult_op(d, x):
    """The operator m{d}: linear extension of (theta) -> (d*theta)."""
    if d > 1 and len(x.terms) >= 1024:
        coeffs = _diagonal_coeffs(x)
        if coeffs is not None:
            out = {}
            for k, c in coeffs.items():
                key = k // gcd(d, k)
                out[key] = out.get(key, _ZERO) + c
            return rebuild_from_t_basis(out)
    out = {}
    for p, c in x.terms.items():
        q = p.scaled(d)
        val = out.get(q, _ZERO) + c
        if val:
            out[q] = val
        else:
            out.pop(q, None)
    return GroupElement._raw(out)


def div_op(d, x):
    """The operator d{1/d}: average over the d^2 d-th roots of each point."""
    if d <= 0:
        raise ValueError("div_op requires d >= 1")
    if d > 1 and len(x.terms) * d * d >= 1024:
        coeffs = _diagonal_coeffs(x)
        if coeffs is not None:
            return rebuild_from_t_basis(
                {k * d: c for k, c in coeffs.items()}
            )
    out = {}
    w = Fraction(1, d * d)
    cap = _max_terms()
    for p, c in x.terms.items():
        den = p.den * d
        cw = c * w
        for i in range(d):
            for j in range(d):
                q = TorsionPoint(p.x + i * p.den, p.y + j * p.den, den)
                val = out.get(q, Fraction(0)) + cw
                if val:
                    out[q] = val
                else:
                    out.pop(q, None)
        if len(out) > cap:
            raise MemoryError(f"div_op support exceeds MCF_MAX_TERMS={cap}")
    return GroupElement._raw(out)


@lru_cache(maxsize=None)
def torsion_average(n):
    """T_n: the average of the n^2 points of order dividing n."""
    if n <= 0:
        raise ValueError("torsion_average requires n >= 1")
    if n * n > _max_terms():
        raise MemoryError(
            f"group element support {n * n} exceeds MCF_MAX_TERMS"
        )
    w = Fraction(1, n * n)
    return GroupElement._raw(
        {TorsionPoint(i, j, n): w for i in range(n) for j in range(n)}
    )


def _order_values(coeffs):
    """Coefficient of sum c_k T_k at any point of exact order d, per d.

    A point of exact order d lies in the support of T_k exactly when
    d | k, with coefficient 1/k^2.
    """
    values = {}
    for k, c in coeffs.items():
        if not c:
            continue
        w = c / (k * k)
        for d in divisors(k):
            values[d] = values.get(d, _ZERO) + w
    return values


def t_basis_decompose(n, x):
    """Write x = sum_{k|n} c_k T_k and return {k: c_k}.

    Solves the triangular system by probing the coefficient at one point
    of exact order d for each divisor d of n, descending.  A full
    support comparison against the reconstruction makes the result
    sound on arbitrary input.
    """
    if n <= 0:
        raise ValueError("t_basis_decompose requires n >= 1")
    for p in x.terms:
        if n % p.den:
            raise NotTorsionError(
                f"support point {p} is not {n}-torsion"
            )
    divs = sorted(divisors(n), reverse=True)
    coeffs = {}
    for d in divs:
        c = x.coeff(_point_raw(1 % d, 0, d) if d > 1 else ZERO_POINT)
        for k, ck in coeffs.items():
            if ck and k % d == 0:
                c -= ck / (k * k)
        coeffs[d] = c * d * d
    values = _order_values(coeffs)
    expected_size = sum(jordan2(d) for d, v in values.items() if v)
    witness = None
    if expected_size != len(x.terms):
        for d, v in values.items():
            if v:
                probe = _point_raw(1 % d, 0, d) if d > 1 else ZERO_POINT
                if probe not in x.terms:
                    witness = probe
                    break
    if witness is None:
        for p, c in x.terms.items():
            if c != values.get(p.den, _ZERO):
                witness = p
                break
    if witness is not None or expected_size != len(x.terms):
        raise NotDiagonalError(
            f"element is not in the span of (T_k)_(k|{n}); "
            f"mismatch at {witness}",
            witness=witness,
        )
    return coeffs


def prim_coefficient(n, x):
    """The T_n-coordinate of x in the (T_k)_{k|n} basis."""
    return t_basis_decompose(n, x)[n]


def rebuild_from_t_basis(coeffs):
    """Inverse of t_basis_decompose: sum c_k T_k."""
    values = _order_values(coeffs)
    n = 1
    for d, v in values.items():
        if v:
            n = n * d // gcd(n, d)
    if n * n > _max_terms():
        raise MemoryError(
            f"group element support {n * n} exceeds MCF_MAX_TERMS"
        )
    out = {}
    for i in range(n):
        for j in range(n):
            g = gcd(gcd(i, j), n)
            v = values.get(n // g)
            if v:
                out[_point_raw(i // g, j // g, n // g)] = v
    return GroupElement._raw(out)


def element_to_json(x):
    """Deterministic JSON form: sorted list of {x, y, coeff} records."""
    records = []
    for p in sorted(x.terms, key=TorsionPoint.sort_key):
        fx = Fraction(p.x, p.den)
        fy = Fraction(p.y, p.den)
        c = x.terms[p]
        records.append(
            {
                "x": [fx.numerator, fx.denominator],
                "y": [fy.numerator, fy.denominator],
                "coeff": [c.numerator, c.denominator],
            }
        )
    return records


def element_from_json(records):
    out = {}
    for rec in records:
        fx = Fraction(rec["x"][0], rec["x"][1])
        fy = Fraction(rec["y"][0], rec["y"][1])
        den = fx.denominator * fy.denominator // gcd(
            fx.denominator, fy.denominator
        )
        p = TorsionPoint(
            fx.numerator * (den // fx.denominator),
            fy.numerator * (den // fy.denominator),
            den,
        )
        out[p] = out.get(p, Fraction(0)) + Fraction(
            rec["coeff"][0], rec["coeff"][1]
        )
    return GroupElement(out)

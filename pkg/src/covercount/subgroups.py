"""Subgroup lattice of Z_n^2 and the refined counting functions M, F, G.

Subgroups are kept in a canonical Hermite-style generator form.  The
closed-form counting functions are implemented directly; brute-force
oracles computed from the enumerated lattice live alongside them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from covercount.arith import divisors, euler_phi, factorize, mobius
from covercount.group_algebra import (
    GroupElement,
    TorsionPoint,
    torsion_average,
)


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of Z_n^2 generated by (a, 0), (b, c) together with nZ^2.

    Canonical form: a | n, c | n, 0 <= b < a and a | (n/c)*b.  Distinct
    triples give distinct subgroups; the index in Z_n^2 is a*c.
    """

    n: int
    a: int
    b: int
    c: int

    def __post_init__(self):
        n, a, b, c = self.n, self.a, self.b, self.c
        if n % a or n % c or not (0 <= b < a) or ((n // c) * b) % a:
            raise ValueError("subgroup generators not in canonical form")

    @property
    def index(self):
        return self.a * self.c

    @property
    def order(self):
        return self.n * self.n // self.index

    def cotype(self):
        """Invariant factors (d1, d2) of Z_n^2 / K, with d1 | d2."""
        d1 = gcd(gcd(self.a, self.b), self.c)
        return (d1, self.a * self.c // d1)

    @lru_cache(maxsize=None)
    def elements(self):
        """The subgroup as a frozenset of pairs in Z_n^2."""
        n, a, b, c = self.n, self.a, self.b, self.c
        return frozenset(
            ((x * a + y * b) % n, (y * c) % n)
            for x in range(n // a)
            for y in range(n // c)
        )

    def contains(self, other):
        return other.elements() <= self.elements()


@lru_cache(maxsize=None)
def enumerate_subgroups(n):
    """All subgroups of Z_n^2 paired with their cotype."""
    if n <= 0:
        raise ValueError("enumerate_subgroups requires n >= 1")
    out = []
    for a in divisors(n):
        for c in divisors(n):
            step = a // gcd(a, n // c)
            for b in range(0, a, step):
                K = Subgroup(n, a, b, c)
                out.append((K, K.cotype()))
    return tuple(out)


def subgroup_average(K):
    """T_K = (1/|K|) sum over points of K embedded in (Q/Z)^2."""
    w = Fraction(1, K.order)
    return GroupElement(
        {TorsionPoint(u, v, K.n): w for (u, v) in K.elements()}
    )


def lattice_mobius(quotient_cotype):
    """Weisner Moebius function of the abelian group Z_d1 x Z_d2.

    Nonzero only when the group is elementary abelian at each prime:
    locally 1 for the trivial group, -1 for Z_p, p for Z_p^2.
    """
    d1, d2 = quotient_cotype
    if d1 <= 0 or d2 <= 0 or d2 % d1:
        raise ValueError("cotype requires d1 | d2")
    result = 1
    for p, e in factorize(d2):
        e1 = 0
        m = d1
        while m % p == 0:
            m //= p
            e1 += 1
        if e > 1 or e1 > 1:
            return 0
        if e1 == 1:
            result *= p
        else:
            result *= -1
    return result


def quotient_cotype(K, H):
    """Invariant factors (e1, e2) of the quotient K/H for H inside K."""
    if not K.contains(H):
        raise ValueError("H is not contained in K")
    n = K.n
    hset = H.elements()
    size = K.order // H.order
    exponent = 1
    for (u, v) in K.elements():
        t = 1
        while ((t * u) % n, (t * v) % n) not in hset:
            t += 1
        exponent = exponent * t // gcd(exponent, t)
    return (size // exponent, exponent)


# --- closed forms -----------------------------------------------------------


def refined_cotype_count(d1, d2, n):
    """M(d1, d2, n): sum of T_K over subgroups of cotype (d1, d2)."""
    _require_chain(d1, d2, n)
    q = d2 // d1
    out = GroupElement()
    for k in divisors(q):
        coeff = Fraction(k * euler_phi(k) * euler_phi(q // k), euler_phi(q))
        out = out + torsion_average(n * k // d2).scale(coeff)
    return out


def refined_index_count(delta, n):
    """M(delta, n): sum of T_K over subgroups of index delta in Z_n^2."""
    if delta <= 0 or n <= 0 or (n * n) % delta:
        raise ValueError("refined_index_count requires delta | n^2")
    out = GroupElement()
    for d1 in divisors(delta):
        d2 = delta // d1
        if d2 % d1 == 0 and n % d2 == 0:
            out = out + refined_cotype_count(d1, d2, n)
    return out


def twisted_pair_count(d1, d2, n):
    """F(d1, d2, n): zero unless d1 = 1, else sum_{k|d2} mu(k) T_{(n/d2)k}."""
    _require_chain(d1, d2, n)
    if d1 != 1:
        return GroupElement()
    out = GroupElement()
    for k in divisors(d2):
        mu = mobius(k)
        if mu:
            out = out + torsion_average(n // d2 * k).scale(mu)
    return out


def twisted_pair_count_agg(delta, n):
    """F(delta, n) on P2: sum_{k|delta} mu(k) T_{(n/delta)k} if delta | n."""
    if delta <= 0 or n <= 0 or (n * n) % delta:
        raise ValueError("twisted_pair_count_agg requires delta | n^2")
    if n % delta:
        return GroupElement()
    return twisted_pair_count(1, delta, n)


def marked_pair_count(omega, d1, d2, n):
    """G_omega(d1, d2, n) = F(d1, d2, n) * T_omega when omega | n, else 0."""
    if omega <= 0:
        raise ValueError("marked_pair_count requires omega >= 1")
    if n % omega:
        return GroupElement()
    return twisted_pair_count(d1, d2, n) * torsion_average(omega)


def marked_pair_count_agg(omega, delta, n):
    """Aggregate G_omega(delta, n) over cotype factorizations of delta."""
    if omega <= 0:
        raise ValueError("marked_pair_count requires omega >= 1")
    if n % omega:
        return GroupElement()
    return twisted_pair_count_agg(delta, n) * torsion_average(omega)


def _require_chain(d1, d2, n):
    if d1 <= 0 or d2 <= 0 or n <= 0 or d2 % d1 or n % d2:
        raise ValueError("cotype arguments must satisfy d1 | d2 | n")


# --- brute-force oracles ----------------------------------------------------


def cotype_count_bruteforce(d1, d2, n):
    out = GroupElement()
    for K, ct in enumerate_subgroups(n):
        if ct == (d1, d2):
            out = out + subgroup_average(K)
    return out


def index_count_bruteforce(delta, n):
    out = GroupElement()
    for K, _ in enumerate_subgroups(n):
        if K.index == delta:
            out = out + subgroup_average(K)
    return out


def _mobius_pairs(n, d1, d2):
    """Pairs (K, mu(K/H)) over H of cotype (d1,d2) and K containing H."""
    groups = enumerate_subgroups(n)
    hs = [H for H, ct in groups if ct == (d1, d2)]
    for H in hs:
        for K, _ in groups:
            if K.contains(H):
                mu = lattice_mobius(quotient_cotype(K, H))
                if mu:
                    yield K, mu


def twisted_pair_bruteforce(d1, d2, n):
    out = GroupElement()
    for K, mu in _mobius_pairs(n, d1, d2):
        out = out + subgroup_average(K).scale(mu)
    return out


def t_k_omega_bruteforce(K, omega):
    """T_K(omega) from its definition as an average over morphisms."""
    n = K.n
    if n % omega:
        return GroupElement()
    kset = K.elements()
    cosets = {}
    seen = set()
    for u in range(n):
        for v in range(n):
            if (u, v) in seen:
                continue
            coset = frozenset(((u + x) % n, (v + y) % n) for (x, y) in kset)
            cosets[(u, v)] = coset
            seen |= coset
    index = len(cosets)
    out = {}
    w = Fraction(1, index * K.order)
    shift = n // omega
    for rep in cosets:
        target_rep = ((rep[0] * shift) % n, (rep[1] * shift) % n)
        for coset in cosets.values():
            if target_rep in coset:
                for (u, v) in coset:
                    p = TorsionPoint(u, v, n)
                    out[p] = out.get(p, Fraction(0)) + w
                break
    return GroupElement(out)


def marked_pair_bruteforce(omega, d1, d2, n):
    if n % omega:
        return GroupElement()
    out = GroupElement()
    for K, mu in _mobius_pairs(n, d1, d2):
        out = out + t_k_omega_bruteforce(K, omega).scale(mu)
    return out


def lattice_json(n):
    """JSON-ready dump of the subgroup lattice of Z_n^2."""
    out = []
    for K, ct in enumerate_subgroups(n):
        out.append(
            {
                "basis": [[K.a, K.b], [0, K.c]],
                "cotype": list(ct),
                "index": K.index,
                "order": K.order,
            }
        )
    out.sort(key=lambda r: (r["index"], r["cotype"], r["basis"]))
    return out

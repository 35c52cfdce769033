"""Refined powered sum-of-divisors functions with values in the group algebra."""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from covercount.arith import divisors, factorize
from covercount.group_algebra import GroupElement, torsion_average


@lru_cache(maxsize=None)
def refined_sigma(m, delta, a):
    """sigma^delta_m(a) = sum_{k|a} (a/k)^m T_{delta/gcd(delta,k)}."""
    if delta <= 0 or a <= 0:
        raise ValueError("refined_sigma requires delta >= 1 and a >= 1")
    if m < 0:
        raise ValueError("refined_sigma requires m >= 0")
    out = GroupElement()
    for k in divisors(a):
        out = out + torsion_average(delta // gcd(delta, k)).scale(
            (a // k) ** m
        )
    return out


def refined_sigma_multiplicative(m, delta, a):
    """Cross-check form: the product over primes of local refined sigmas."""
    out = GroupElement.one()
    primes = {p for p, _ in factorize(delta)} | {p for p, _ in factorize(a)}
    for p in sorted(primes):
        dp = p ** _valuation(p, delta)
        ap = p ** _valuation(p, a)
        out = out * refined_sigma(m, dp, ap)
    return out


def _valuation(p, n):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v

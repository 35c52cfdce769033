"""Exact integer arithmetic and classical multiplicative functions.

Everything works on Python's arbitrary-precision integers.  Factorization
is plain trial division against a memoized prime list, which is plenty for
the inputs this package sees (well below 10^6).
"""

from __future__ import annotations

from functools import lru_cache
from math import isqrt

_primes = [2, 3, 5, 7, 11, 13]


def _extend_primes(limit):
    """Grow the cached prime list to cover candidates up to limit."""
    candidate = _primes[-1]
    while _primes[-1] < limit:
        candidate += 2
        top = isqrt(candidate)
        if all(candidate % p for p in _primes if p <= top):
            _primes.append(candidate)


@lru_cache(maxsize=None)
def factorize(n):
    """Return the prime factorization of n as a tuple of (p, exponent)."""
    if n <= 0:
        raise ValueError("factorize requires n >= 1")
    out = []
    rest = n
    i = 0
    while True:
        if i >= len(_primes):
            _extend_primes(_primes[-1] + 64)
        p = _primes[i]
        if p * p > rest:
            break
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            out.append((p, e))
        i += 1
    if rest > 1:
        out.append((rest, 1))
    return tuple(out)


@lru_cache(maxsize=None)
def divisors(n):
    """Sorted tuple of the positive divisors of n."""
    if n <= 0:
        raise ValueError("divisors requires n >= 1")
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


def mobius(n):
    """Moebius function: (-1)^omega on squarefree n, 0 otherwise."""
    if n <= 0:
        raise ValueError("mobius requires n >= 1")
    result = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        result = -result
    return result


def euler_phi(n):
    """Euler totient n * prod_{p|n} (1 - 1/p)."""
    if n <= 0:
        raise ValueError("euler_phi requires n >= 1")
    result = n
    for p, _ in factorize(n):
        result = result // p * (p - 1)
    return result


def jordan2(n):
    """Second Jordan totient n^2 * prod_{p|n} (1 - 1/p^2)."""
    if n <= 0:
        raise ValueError("jordan2 requires n >= 1")
    result = n * n
    for p, _ in factorize(n):
        result = result // (p * p) * (p * p - 1)
    return result


def dedekind_psi(n):
    """Dedekind psi n * prod_{p|n} (1 + 1/p)."""
    if n <= 0:
        raise ValueError("dedekind_psi requires n >= 1")
    result = n
    for p, _ in factorize(n):
        result = result // p * (p + 1)
    return result


_TOTIENTS = {"euler": euler_phi, "jordan2": jordan2, "dedekind": dedekind_psi}


def totient(kind, n):
    """Dispatch to one of the totients: euler, jordan2 or dedekind."""
    try:
        fn = _TOTIENTS[kind]
    except KeyError:
        raise ValueError(f"unknown totient kind {kind!r}") from None
    return fn(n)


def sigma_power(m, a):
    """Powered sum of divisors: sum_{k|a} (a/k)^m."""
    if a <= 0:
        raise ValueError("sigma_power requires a >= 1")
    if m < 0:
        raise ValueError("sigma_power requires m >= 0")
    return sum((a // k) ** m for k in divisors(a))

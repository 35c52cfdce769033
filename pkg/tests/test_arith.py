import random
from math import gcd

import pytest
from hypothesis import given, strategies as st

from covercount.arith import (
    dedekind_psi,
    divisors,
    euler_phi,
    factorize,
    jordan2,
    mobius,
    sigma_power,
    totient,
)


def test_mobius_values():
    assert mobius(1) == 1
    assert mobius(6) == 1
    assert mobius(12) == 0
    assert [mobius(p) for p in (2, 3, 5, 7, 11)] == [-1] * 5


def test_mobius_rejects_zero():
    with pytest.raises(ValueError):
        mobius(0)


def test_totient_examples():
    assert totient("euler", 12) == 4
    assert totient("euler", 12) == sum(
        1 for k in range(1, 13) if gcd(k, 12) == 1
    )
    for p in (2, 3, 5, 13):
        assert totient("dedekind", p) == p + 1
    assert totient("jordan2", 1) == 1
    with pytest.raises(ValueError):
        totient("euler", 0)
    with pytest.raises(ValueError):
        totient("nope", 3)


def test_sigma_power_examples():
    assert sigma_power(1, 6) == 12
    for a in (1, 4, 9, 30):
        assert sigma_power(0, a) == len(divisors(a))
    for m in range(5):
        assert sigma_power(m, 1) == 1
    with pytest.raises(ValueError):
        sigma_power(1, 0)


def test_factorize_roundtrip():
    for n in range(1, 500):
        prod = 1
        for p, e in factorize(n):
            prod *= p**e
        assert prod == n


coprime_pairs = st.tuples(
    st.integers(min_value=1, max_value=100),
    st.integers(min_value=1, max_value=100),
).filter(lambda ab: gcd(ab[0], ab[1]) == 1)


@given(coprime_pairs)
def test_multiplicativity(ab):
    a, b = ab
    for f in (euler_phi, jordan2, dedekind_psi, mobius):
        assert f(a * b) == f(a) * f(b)
    for m in (0, 1, 2, 3):
        assert sigma_power(m, a * b) == sigma_power(m, a) * sigma_power(m, b)


def test_mobius_inversion_roundtrip():
    rng = random.Random(7)
    f = {n: rng.randint(-50, 50) for n in range(1, 201)}
    g = {n: sum(f[d] for d in divisors(n)) for n in range(1, 201)}
    for n in range(1, 201):
        assert f[n] == sum(mobius(n // d) * g[d] for d in divisors(n))


def test_jordan_convolution_identity():
    # J2 * eps0 = eps2, i.e. sum_{d|n} J2(d) = n^2
    for n in range(1, 201):
        assert sum(jordan2(d) for d in divisors(n)) == n * n

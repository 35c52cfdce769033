from math import gcd

import pytest

from covercount.arith import sigma_power
from covercount.group_algebra import (
    GroupElement,
    degree,
    div_op,
    mult_op,
    prim_coefficient,
    torsion_average,
)
from covercount.mcf_core import GSequence, check_alpha_mcf, nstar_module
from covercount.refined_divisors import (
    refined_sigma,
    refined_sigma_multiplicative,
)


def test_examples():
    for a in (1, 2, 6, 12):
        assert refined_sigma(1, 1, a) == torsion_average(1).scale(
            sigma_power(1, a)
        )
    assert refined_sigma(1, 2, 4) == torsion_average(1).scale(
        3
    ) + torsion_average(2).scale(4)
    with pytest.raises(ValueError):
        refined_sigma(1, 0, 4)
    with pytest.raises(ValueError):
        refined_sigma(1, 2, 0)


def test_prim_of_sigma():
    # Prim_delta sigma^delta_m(delta*a) = sum over k|a coprime to delta
    for m in (0, 1, 2):
        for delta in (1, 2, 3, 4, 6):
            for a in (1, 2, 3, 4, 6):
                got = prim_coefficient(delta, refined_sigma(m, delta, delta * a))
                from covercount.arith import divisors

                expected = sum(
                    (delta * a // k) ** m
                    for k in divisors(a)
                    if gcd(k, delta) == 1
                )
                assert got == expected


def test_arithmetic_properties_small():
    # Lemma properties (i)-(vi) on a small grid (full grid in acceptance)
    rng = range(1, 9)
    for delta in rng:
        for a in rng:
            s = refined_sigma(1, delta, a)
            assert degree(s) == sigma_power(1, a)
            for d in rng:
                assert mult_op(d, s) == refined_sigma(1, delta // gcd(d, delta), a)
            for d in (k for k in rng if delta % k == 0):
                assert div_op(delta // d, refined_sigma(1, d, a)) == s * (
                    torsion_average(delta // d)
                )
            assert s == s * torsion_average(delta // gcd(a, delta))
            g = gcd(delta, a)
            assert s == div_op(delta // g, refined_sigma(1, g, a))
            assert s == refined_sigma_multiplicative(1, delta, a)


def test_zero_mcf_small():
    for m in (0, 1):
        for a in (1, 2, 3, 4):
            F = GSequence(
                domain=nstar_module(1),
                fn=lambda delta, m=m, a=a: refined_sigma(m, delta, delta * a),
            )
            report = check_alpha_mcf(F, 0, list(range(1, 9)))
            assert report.ok, report.failures()

import json
from fractions import Fraction
from math import gcd, lcm

import pytest
from hypothesis import given, settings, strategies as st

from covercount.group_algebra import (
    GroupElement,
    NotDiagonalError,
    NotTorsionError,
    TorsionPoint,
    degree,
    div_op,
    element_from_json,
    element_to_json,
    ga_add,
    ga_mul,
    ga_scale,
    mult_op,
    prim_coefficient,
    rebuild_from_t_basis,
    t_basis_decompose,
    torsion_average,
)


def pt(x, y, den):
    return GroupElement.point(x, y, den)


def test_point_canonicalization():
    assert TorsionPoint(2, 0, 4) == TorsionPoint(1, 0, 2)
    assert TorsionPoint(5, 3, 3) == TorsionPoint(2, 0, 3)
    assert TorsionPoint(0, 0, 7) == TorsionPoint(0, 0, 1)
    assert TorsionPoint(1, 2, 4).order == 4
    assert TorsionPoint(2, 2, 4).order == 2


def test_vector_space_ops():
    one = GroupElement.one()
    assert ga_add(one, one) == one.scale(2)
    x = pt(1, 0, 3) + pt(0, 1, 4).scale(2)
    assert ga_add(x, x.scale(-1)).is_zero()
    assert ga_scale(Fraction(1, 2), pt(1, 1, 5)).coeff(
        TorsionPoint(1, 1, 5)
    ) == Fraction(1, 2)


def test_mul_examples():
    assert ga_mul(torsion_average(2), torsion_average(3)) == torsion_average(6)
    theta = pt(1, 2, 5)
    assert ga_mul(theta, GroupElement.one()) == theta
    assert ga_mul(torsion_average(2), torsion_average(2)) == torsion_average(2)


def test_mult_op_examples():
    assert mult_op(2, torsion_average(4)) == torsion_average(2)
    x = pt(1, 0, 3) + pt(1, 1, 7).scale(3)
    assert mult_op(1, x) == x
    assert mult_op(3, pt(1, 0, 3)) == GroupElement.one()


def test_div_op_examples():
    for d in (1, 2, 3, 5):
        assert div_op(d, GroupElement.one()) == torsion_average(d)
    assert mult_op(2, div_op(2, GroupElement.one())) == GroupElement.one()
    expected = GroupElement(
        {
            TorsionPoint(1, 0, 4): Fraction(1, 4),
            TorsionPoint(3, 0, 4): Fraction(1, 4),
            TorsionPoint(1, 2, 4): Fraction(1, 4),
            TorsionPoint(3, 2, 4): Fraction(1, 4),
        }
    )
    assert div_op(2, pt(1, 0, 2)) == expected
    with pytest.raises(ValueError):
        div_op(0, GroupElement.one())


def test_torsion_average_examples():
    assert torsion_average(1) == GroupElement.one()
    two = GroupElement(
        {
            TorsionPoint(0, 0, 1): Fraction(1, 4),
            TorsionPoint(1, 0, 2): Fraction(1, 4),
            TorsionPoint(0, 1, 2): Fraction(1, 4),
            TorsionPoint(1, 1, 2): Fraction(1, 4),
        }
    )
    assert torsion_average(2) == two
    for n in (1, 2, 5, 12):
        assert degree(torsion_average(n)) == 1
        assert len(torsion_average(n).terms) == n * n


def test_degree():
    assert degree(GroupElement.zero()) == 0
    assert degree(pt(1, 0, 3).scale(3) + pt(0, 1, 5).scale(2)) == 5


def test_operator_laws_generators():
    # morphism properties on generator pairs, plus the T_n laws
    pairs = [(1, 0, 3, 0, 1, 4), (1, 1, 2, 1, 0, 6), (2, 3, 5, 1, 1, 3)]
    for d in range(1, 7):
        for (x1, y1, n1, x2, y2, n2) in pairs:
            x = pt(x1, y1, n1)
            y = pt(x2, y2, n2)
            assert mult_op(d, x * y) == mult_op(d, x) * mult_op(d, y)
            assert div_op(d, x * y) == div_op(d, x) * div_op(d, y)
    for d in range(1, 8):
        for n in range(1, 8):
            tn = torsion_average(n)
            assert mult_op(d, tn) == torsion_average(n // gcd(d, n))
            assert div_op(d, tn) == torsion_average(n * d)
            assert mult_op(d, div_op(d, tn)) == tn
            assert div_op(d, mult_op(d, tn)) == tn * torsion_average(d)
    for n in range(1, 8):
        for m in range(1, 8):
            assert torsion_average(n) * torsion_average(m) == torsion_average(
                lcm(n, m)
            )


def test_div_op_root_form():
    # d{1/d}(theta) = (theta_0) * T_d for any d-root theta_0
    theta = pt(1, 2, 5)
    for d in (2, 3):
        root = GroupElement.point(1, 2, 5 * d)
        assert div_op(d, theta) == root * torsion_average(d)


def test_t_basis_decompose():
    x = torsion_average(1) + torsion_average(2).scale(4)
    assert t_basis_decompose(2, x) == {1: 1, 2: 4}
    with pytest.raises(NotDiagonalError):
        t_basis_decompose(2, pt(1, 0, 2))
    with pytest.raises(NotTorsionError):
        t_basis_decompose(2, pt(1, 0, 3))


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=1, max_value=12),
    st.dictionaries(
        st.integers(min_value=1, max_value=12),
        st.fractions(min_value=-5, max_value=5),
        max_size=4,
    ),
)
def test_decompose_roundtrip(n, raw):
    from covercount.arith import divisors

    coeffs = {k: c for k, c in raw.items() if n % k == 0}
    x = rebuild_from_t_basis(coeffs)
    got = t_basis_decompose(n, x)
    for k in divisors(n):
        assert got[k] == coeffs.get(k, 0)
    assert rebuild_from_t_basis(got) == x


def test_prim_coefficient():
    assert prim_coefficient(1, GroupElement.one()) == 1
    assert prim_coefficient(2, torsion_average(1)) == 0
    x = torsion_average(6).scale(7) + torsion_average(2).scale(-2)
    assert prim_coefficient(6, x) == 7
    # equals n^2 times the coefficient at the probe point (1/n, 0)
    assert x.coeff(TorsionPoint(1, 0, 6)) * 36 == 7


def test_json_roundtrip():
    x = pt(1, 0, 2).scale(Fraction(3, 7)) + torsion_average(3)
    records = element_to_json(x)
    assert element_from_json(records) == x
    assert records == sorted(
        records, key=lambda r: (Fraction(*r["x"]), Fraction(*r["y"]))
    )
    json.dumps(records)  # serializable


def test_max_terms_guard(monkeypatch):
    monkeypatch.setenv("MCF_MAX_TERMS", "10")
    with pytest.raises(MemoryError):
        torsion_average.__wrapped__(4)
    with pytest.raises(MemoryError):
        div_op(4, GroupElement.one())

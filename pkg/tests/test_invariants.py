import pytest

from covercount.group_algebra import TorsionPoint, torsion_average
from covercount.invariants import (
    DiagramDegree,
    RamificationProfile,
    abelian_invariant,
    degree_module,
    divisibility_of_class,
    ep1_invariant,
    invariant_sequence,
    ramification_module,
    single_floor_closed_form,
    theorem_exponent,
    verify_theorem,
)


def test_profile_validation():
    p = RamificationProfile(2, (4, -2, -2))
    assert p.norm == 2
    with pytest.raises(ValueError):
        RamificationProfile(0, (1, -1))
    with pytest.raises(ValueError):
        RamificationProfile(1, (1, -2))
    with pytest.raises(ValueError):
        RamificationProfile(1, (1, 0, -1))
    with pytest.raises(ValueError):
        DiagramDegree(0, 1)


def test_modules():
    R = ramification_module()
    x = (4, (2, -2))
    assert R.norm(x) == 2
    assert R.divisors_of(x) == [(1, x), (2, (2, (1, -1)))]
    assert R.act(3, (1, (1, -1))) == (3, (3, -3))
    D = degree_module()
    assert D.norm((4, 2)) == 4
    assert D.divisors_of((4, 2)) == [(1, (4, 2)), (2, (2, 1))]


def test_ep1_invariant_primitive():
    assert ep1_invariant(1, (1, (1, -1))) == torsion_average(1).scale(2)


def test_ep1_invariant_vs_single_floor_anchor():
    # the assembled genus one invariant is 2w times the one floor local
    # contribution w^2 a sigma^w(a); the factor 2w comes from the two
    # flat placements (factor 2) and the extra end weight w
    for (a, w) in ((1, 1), (2, 1), (1, 2), (2, 2)):
        assembled = ep1_invariant(1, (a, (w, -w)))
        anchor = single_floor_closed_form(a, w)
        assert assembled == anchor.scale(2 * w)


def test_abelian_invariant_primitive():
    assert abelian_invariant(2, (1, 1)) == torsion_average(1).scale(2)


def test_divisibility_of_class():
    u = TorsionPoint(1, 0, 2)
    assert divisibility_of_class((4, 2), u) == 2
    assert divisibility_of_class((4, 4), TorsionPoint(0, 0, 1)) == 4
    assert divisibility_of_class(DiagramDegree(4, 2), u) == 2
    with pytest.raises(ValueError):
        divisibility_of_class((2, 1), TorsionPoint(1, 0, 3))


def test_theorem_exponents():
    assert theorem_exponent("ep1_points", 1, (1, (1, -1))) == 4
    assert theorem_exponent("ep1_points", 2, (1, (1, -1, 1, -1))) == 12
    assert theorem_exponent("abelian_points", 2, (1, 1)) == 5
    assert theorem_exponent("abelian_points", 3, (1, 1)) == 9
    assert theorem_exponent("ep1_lambda", 2, (1, (1, -1)), g0=1) == 6
    assert theorem_exponent("abelian_lambda", 3, (1, 1), g0=2) == 7
    with pytest.raises(ValueError):
        theorem_exponent("nope", 1, (1, (1, -1)))


def test_verify_theorem_positive():
    assert verify_theorem("ep1_points", 1, (1, (1, -1)), max_delta=3).ok
    assert verify_theorem("abelian_points", 2, (1, 1), max_delta=3).ok
    assert verify_theorem(
        "ep1_lambda", 2, (1, (1, -1)), max_delta=3, g0=1
    ).ok
    assert verify_theorem(
        "abelian_lambda", 3, (1, 1), max_delta=3, g0=2
    ).ok


def test_verify_theorem_negative_controls():
    exp = theorem_exponent("ep1_points", 1, (1, (1, -1)))
    for off in (-1, 1):
        assert not verify_theorem(
            "ep1_points", 1, (1, (1, -1)), max_delta=3, alpha=exp + off
        ).ok
    exp = theorem_exponent("abelian_points", 2, (1, 1))
    for off in (-1, 1):
        assert not verify_theorem(
            "abelian_points", 2, (1, 1), max_delta=3, alpha=exp + off
        ).ok


def test_invariant_sequence_matches_direct():
    F = invariant_sequence("ep1_points", 1)
    assert F((1, (1, -1))) == ep1_invariant(1, (1, (1, -1)))
    G = invariant_sequence("abelian_points", 2)
    assert G((1, 1)) == abelian_invariant(2, (1, 1))
    with pytest.raises(ValueError):
        invariant_sequence("nope", 1)

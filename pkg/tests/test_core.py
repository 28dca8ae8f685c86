from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from transdyn.core import (
    INF,
    Box,
    CheckBudget,
    Circle,
    CirclePoint,
    FinitePoint,
    FiniteSet,
    IntervalPoint,
    SequenceSpace,
    ShiftSpace,
    UnitInterval,
    Verdict,
    basis,
    fmt_value,
    net,
    normalize_region,
    rational,
    region_contains,
)
from transdyn.errors import BadRational, InvalidParameter, MixedVariant, SpaceMismatch, UnsupportedSpace

from helpers import iu

fracs = st.fractions(min_value=0, max_value=1, max_denominator=64)


@pytest.mark.parametrize("text,want", [("3/4", F(3, 4)), ("0.25", F(1, 4)), ("7", F(7)), ("inf", INF), (" -1/2 ", F(-1, 2))])
def test_rational_parses(text, want):
    assert rational(text) == want


@pytest.mark.parametrize("text", ["3/0", "abc", "1/x", ""])
def test_rational_rejects(text):
    with pytest.raises(BadRational):
        rational(text)


def test_fmt_value():
    assert fmt_value(F(6, 3)) == "2"
    assert fmt_value(F(1, 3)) == "1/3"
    assert fmt_value(INF) == "inf"


def test_normalize_merges_overlap():
    assert str(normalize_region([(0, F(1, 2)), (F(1, 4), F(3, 4))])) == "(0,3/4)"


def test_normalize_degenerate_is_empty():
    assert normalize_region([(F(1, 2), F(1, 2))]).parts == ()


def test_normalize_cylinder_absorption():
    r = normalize_region([(0, (0, 1)), (0, (0,))], ShiftSpace(2, False))
    assert str(r) == "[0]@0"


def test_normalize_rejects_mixed_variants():
    with pytest.raises(MixedVariant):
        normalize_region([(0, F(1, 2)), (0, (0, 1)), 3])


def test_normalize_finite():
    r = normalize_region([3, 1, 3], SequenceSpace(8))
    assert r == FiniteSet(9, (1, 3))


@given(st.lists(st.tuples(fracs, fracs), min_size=1, max_size=6), st.randoms())
def test_normalize_idempotent_and_order_free(pairs, rnd):
    pairs = [(min(a, b), max(a, b)) for a, b in pairs]
    r = normalize_region(pairs)
    assert normalize_region(r.parts) == r
    shuffled = pairs[:]
    rnd.shuffle(shuffled)
    assert normalize_region(shuffled) == r


@given(st.lists(st.tuples(fracs, fracs), min_size=1, max_size=5), fracs)
def test_normalize_preserves_membership(pairs, x):
    pairs = [(min(a, b), max(a, b)) for a, b in pairs]
    r = normalize_region(pairs)
    brute = any(a < x < b for a, b in pairs)
    assert region_contains(r, IntervalPoint(x)) is brute


def test_region_contains_examples():
    r = iu((0, F(1, 2)))
    assert region_contains(r, IntervalPoint(F(1, 4))) is True
    assert region_contains(r, IntervalPoint(F(1, 2))) is False
    c = iu((F(49, 100), F(51, 100)), space="circle")
    assert region_contains(c, CirclePoint(F(1, 2), F(1, 100))) is None
    assert region_contains(c, CirclePoint(F(1, 2), F(1, 1000))) is True


def test_region_contains_space_mismatch():
    with pytest.raises(SpaceMismatch):
        region_contains(iu((0, 1)), FinitePoint(1))


def test_circle_wraps():
    r = normalize_region([(F(7, 8), F(9, 8))], Circle())
    assert region_contains(r, CirclePoint(F(0))) is True
    assert region_contains(r, CirclePoint(F(1, 2))) is False


@pytest.mark.parametrize("eps", [F(1, 4), F(1, 8), F(1, 10), F(1, 16)])
def test_interval_basis_covers_and_is_small(eps):
    regions = basis(UnitInterval(), eps)
    for r in regions:
        assert r.measure <= eps
    for k in range(201):
        p = IntervalPoint(F(k, 200))
        assert any(region_contains(r, p) for r in regions)


def test_interval_basis_quarter():
    regions = basis(UnitInterval(), F(1, 4))
    assert [str(r) for r in regions] == ["[0,1/4)", "(1/8,3/8)", "(1/4,1/2)", "(3/8,5/8)",
                                         "(1/2,3/4)", "(5/8,7/8)", "(3/4,1]"]


def test_shift_basis_uses_cylinder_diameter():
    # cylinders of length m have diameter 2^-m, so eps = 1/4 needs length 2 and 1/8 needs 3
    assert {len(c.cylinders[0][1]) for c in basis(ShiftSpace(2, False), F(1, 4))} == {2}
    assert len(basis(ShiftSpace(2, False), F(1, 8))) == 8
    two = basis(ShiftSpace(2, True), F(1, 8))
    assert len(two) == 32 and two[0].cylinders[0][0] == -2


def test_finite_basis_singletons_and_tail():
    regions = basis(SequenceSpace(64), F(1, 4))
    assert [str(r) for r in regions] == ["{0,4-64}", "{3}", "{2}", "{1}"]
    with pytest.raises(UnsupportedSpace):
        basis(SequenceSpace(4), F(1, 10))


def test_net_points():
    assert len(net(UnitInterval(), F(1, 4))) == 9
    assert net(Circle(), F(1, 4))[1] == CirclePoint(F(1, 8))


def test_basis_rejects_nonpositive():
    with pytest.raises(InvalidParameter):
        basis(UnitInterval(), 0)


def test_box_membership():
    b = Box((iu((0, F(1, 2))), iu((F(1, 2), 1))))
    from transdyn.core import ProductPoint
    assert region_contains(b, ProductPoint((IntervalPoint(F(1, 4)), IntervalPoint(F(3, 4))))) is True
    assert region_contains(b, ProductPoint((IntervalPoint(F(3, 4)), IntervalPoint(F(3, 4))))) is False


def test_budget_validation_and_format():
    b = CheckBudget()
    assert str(b) == "eps=1/8,H=32,k=2,L=8"
    with pytest.raises(InvalidParameter):
        CheckBudget(horizon=0)
    assert CheckBudget(horizon=8).scaled(4).horizon == 32


def test_verdict_evidence_string():
    v = Verdict.fails(U="(0,1)", hitting="{}", exact=True)
    assert v.is_fails and not v.is_holds
    assert v.evidence_str() == "U=(0,1);hitting={};exact=True"
    assert str(Verdict.holds(notes=("at scale",), n=F(1, 2))) == "Holds(n=1/2;note=at scale)"

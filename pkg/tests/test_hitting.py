from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from transdyn.actions import dai, pnst
from transdyn.core import CirclePoint, FinitePoint, FiniteSet, IntervalPoint
from transdyn.errors import MixedKind, NotAbelianDeclared
from transdyn.hitting import (
    filter_check,
    furstenberg_probe,
    hitting_UV,
    hitting_Ux,
    hitting_xV,
    product_identity_audit,
    product_identity_sweep,
)
from transdyn.symbolic import full_shift, golden_mean, morse_thue, periodic_point
from transdyn.systems_interval import TranslationSemiflow, doubling, pl_image, pl_preimage, rotation, swap_f, tent
from transdyn.timesets import COFINITE, DISCRETE, TimeWindowSet, classify

from helpers import cyl, iu

HALF = F(1, 2)
U_MID = iu((F(2, 5), F(3, 5)))


def test_tent_UV():
    N = hitting_UV(tent(), U_MID, U_MID, 16)
    assert all(N.contains(n) for n in range(4, 200))
    assert N.tail is not None and N.tail.start == 4 and N.tail.full


def test_full_shift_UV_suffix_rule():
    s = full_shift(2)
    N = hitting_UV(s, cyl(s, (0, 1)), cyl(s, (1, 0)), 8)
    assert N.hits == tuple(range(1, 9)) and N.beyond_known


def test_translation_UV_empty():
    t = TranslationSemiflow()
    N = hitting_UV(t, iu((2, 3), space="halfline"), iu((0, 1), space="halfline"))
    assert not N.hits and N.provably_empty


def test_tent_Ux_cofinite_from_4():
    N = hitting_Ux(tent(), U_MID, IntervalPoint(F(1, 3)), 16)
    assert all(n in N.hits for n in range(4, 17))
    c = classify(N)
    assert c.cls == COFINITE and c.threshold <= 4


def test_pnst_Ux_singleton():
    p = pnst()
    U = FiniteSet(p.space.size, (2,))
    for z in (0, 1, 5, 64):
        N = hitting_Ux(p, U, FinitePoint(z), 3)
        assert N.hits == ((z,),) and N.complete


def test_two_sided_Ux_empty():
    s = full_shift(2, True)
    N = hitting_Ux(s, cyl(s, (1, 1)), periodic_point((0,), True), 16)
    assert N.provably_empty


def test_xV_examples():
    # the orbit {0, 1/3, 2/3} misses (2/5, 3/5) at every time
    N = hitting_xV(rotation(F(1, 3)), CirclePoint(F(0)), iu((F(2, 5), F(3, 5)), space="circle"), 64)
    assert N.provably_empty
    # 1/3 itself lies in (3/10, 2/5), so that window is hit every third step
    N = hitting_xV(rotation(F(1, 3)), CirclePoint(F(0)), iu((F(3, 10), F(2, 5)), space="circle"), 12)
    assert N.hits == (1, 4, 7, 10)
    assert hitting_xV(tent(), IntervalPoint(F(2, 5)), iu((F(1, 10), F(9, 10))), 8).hits
    N = hitting_xV(tent(), IntervalPoint(F(0)), iu((0, HALF)).union(iu()), 8)
    assert not N.hits  # 0 is fixed but (0,1/2) is open at 0
    N = hitting_xV(tent(), IntervalPoint(F(2, 3)), iu((F(1, 2), 1)), 8)
    assert N.hits == tuple(range(1, 9))


def test_filter_examples():
    d = doubling()
    sets = [hitting_Ux(d, U, CirclePoint(F(k, 5)), 32) for U in d.basis(F(1, 8)) for k in range(5)]
    assert filter_check(sets).is_holds
    f = swap_f()
    x = IntervalPoint(F(1, 5))
    v = filter_check([hitting_Ux(f, iu((0, HALF)), x, 32), hitting_Ux(f, iu((HALF, 1)), x, 32)])
    assert v.is_fails and v.evidence["pair"] == (0, 1)
    assert filter_check([TimeWindowSet(DISCRETE, (3,), 8)] * 2).is_holds


def test_filter_mixed_kind():
    with pytest.raises(MixedKind):
        filter_check([TimeWindowSet(DISCRETE, (3,), 8), TimeWindowSet(DISCRETE, (3,), 9)])


def test_filter_word_sets():
    d = dai()
    sets = [hitting_Ux(d, U, CirclePoint(F(1, 3)), 6) for U in d.basis(F(1, 8))]
    assert filter_check(sets).is_holds


def test_product_identity_examples():
    f = swap_f()
    v = product_identity_audit(f, iu((0, HALF)), iu((0, HALF)), iu((HALF, 1)), iu((0, HALF)), 32)
    assert v.is_holds and v.evidence["hits"] == 0
    assert product_identity_sweep(full_shift(2), F(1, 4), 16).is_holds


@pytest.mark.parametrize("sys", [tent(), doubling(), swap_f(), rotation(F(1, 3)), golden_mean()],
                         ids=lambda s: s.label)
def test_product_identity_on_builtins(sys):
    assert product_identity_sweep(sys, F(1, 4), 16).is_holds


def test_product_identity_words_and_flow():
    t = TranslationSemiflow()
    A = [iu((0, 1), space="halfline"), iu((2, 3), space="halfline")]
    assert product_identity_audit(t, A[0], A[0], A[1], A[1], 32).is_holds
    d = dai()
    b = d.basis(F(1, 4))
    assert product_identity_audit(d, b[0], b[1], b[2], b[3], 4).is_holds


def test_furstenberg_probe():
    d = doubling()
    b = d.basis(F(1, 8))
    assert furstenberg_probe(d, b[0], b[3], b[5], b[9]).is_holds
    assert furstenberg_probe(d, b[2], b[2], b[2], b[2]).evidence["U3"] == str(b[2])
    r = rotation(F(1, 3))
    rb = r.basis(F(1, 8))
    # N(U2, V2) is empty, so nothing nonempty fits inside the intersection
    assert furstenberg_probe(r, rb[0], rb[0], rb[0], rb[2]).is_undetermined
    with pytest.raises(NotAbelianDeclared):
        furstenberg_probe(dai(), *d.basis(F(1, 4))[:4])


def test_two_sided_tail_skips_search():
    s = full_shift(2, True)
    N = hitting_UV(s, cyl(s, (0, 1, 1), -1), cyl(s, (1, 0, 1), -1), 8)
    assert N.beyond_known and N.tail.full


def test_morse_UV_matches_occurrence_scan():
    tm = morse_thue()
    from oracles import morse_prefix
    seq = morse_prefix(4096)
    u, v = (0, 1, 1), (1, 0, 0)
    N = hitting_UV(tm, cyl(tm, u), cyl(tm, v), 24)
    occ_u = [i for i in range(2000) if seq[i:i + 3] == u]
    occ_v = set(i for i in range(4000) if seq[i:i + 3] == v)
    brute = {n for n in range(1, 25) if any(i + n in occ_v for i in occ_u)}
    assert set(N.hits) == brute


# invariants

fr = st.fractions(min_value=0, max_value=1, max_denominator=24)


@given(fr, fr, fr, fr, st.integers(2, 24))
def test_monotone_in_horizon(a, b, c, d, h1):
    a, b = sorted((a, b))
    c, d = sorted((c, d))
    if a == b or c == d:
        return
    U, V = iu((a, b)), iu((c, d))
    small = hitting_UV(tent(), U, V, h1)
    big = hitting_UV(tent(), U, V, 24)
    assert set(small.hits) == {n for n in big.extended(24).hits if n <= h1}


@given(fr, fr, fr, fr)
def test_forward_equals_backward(a, b, c, d):
    a, b = sorted((a, b))
    c, d = sorted((c, d))
    if a == b or c == d:
        return
    f = doubling()
    U, V = iu((a, b), space="circle"), iu((c, d), space="circle")
    N = hitting_UV(f, U, V, 8)
    pre = V
    for n in range(1, 9):
        pre = pl_preimage(f, pre)
        assert (n in N.hits) == bool(U.intersect(pre).parts)
        assert (n in N.hits) == bool(pl_image(f, U, n).intersect(V).parts)


WORDS = [(0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1), (0, 1, 0), (1, 0, 1)]


@given(st.sampled_from(WORDS), st.sampled_from(WORDS))
def test_two_sided_matches_one_sided_at_offset_zero(u, v):
    s1, s2 = full_shift(2), full_shift(2, True)
    a = hitting_UV(s1, cyl(s1, u), cyl(s1, v), 10)
    b = hitting_UV(s2, cyl(s2, u), cyl(s2, v), 10)
    assert a.extended(10).hits == b.extended(10).hits

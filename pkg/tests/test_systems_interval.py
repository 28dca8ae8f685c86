from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from transdyn.core import CirclePoint, IntervalPoint
from transdyn.errors import BudgetExceeded, InvalidParameter, SpaceMismatch, UnknownName
from transdyn.systems_interval import (
    PLMap,
    TranslationSemiflow,
    builtin,
    doubling,
    periodic_solutions,
    pl_image,
    pl_power,
    pl_preimage,
    rotation,
    swap_f,
    tent,
    translation_hitting,
    translation_point_hitting,
)

from helpers import closed, iu
from oracles import tent_onto_time

fracs = st.fractions(min_value=0, max_value=1, max_denominator=97)
MAPS = [tent(), doubling(), swap_f(), rotation(F(1, 3)), PLMap((0, F(1, 3), 1), (F(1, 5), 1, 0))]


def test_tent_images():
    U = iu((F(2, 5), F(3, 5)))
    assert str(pl_image(tent(), U, 1)) == "(4/5,1]"
    assert str(pl_image(tent(), U, 3)) == "[0,4/5)"
    assert str(pl_image(tent(), U, 4)) == "[0,1]"
    assert pl_image(tent(), iu(), 3).parts == ()


def test_tent_onto_time_matches_oracle():
    U = iu((F(2, 5), F(3, 5)))
    n = next(n for n in range(1, 20) if pl_image(tent(), U, n) == tent().whole())
    assert n == tent_onto_time(F(2, 5), F(3, 5)) == 4


def test_preimages():
    assert str(pl_preimage(tent(), iu((F(1, 2), 1)))) == "(1/4,1/2)|(1/2,3/4)"
    assert str(pl_preimage(doubling(), iu((0, F(1, 2)), space="circle"))) == "(0,1/4)|(1/2,3/4)"
    const = PLMap((0, 1), (F(1, 3), F(1, 3)))
    assert pl_preimage(const, iu((F(1, 2), 1))).parts == ()
    assert pl_preimage(const, iu((0, F(1, 2)))) == const.whole()


def test_space_mismatch():
    with pytest.raises(SpaceMismatch):
        pl_image(tent(), iu((0, F(1, 2)), space="circle"))


def test_piece_cap():
    f = PLMap((0, F(1, 2), 1), (0, 1, 0), piece_cap=4)
    with pytest.raises(BudgetExceeded):
        pl_image(f, iu((F(1, 100), F(3, 100)), (F(5, 100), F(7, 100)), (F(9, 100), F(11, 100)),
                       (F(13, 100), F(15, 100)), (F(17, 100), F(19, 100))), 1)


def test_validation():
    with pytest.raises(InvalidParameter):
        PLMap((0, 1), (0, 2))
    with pytest.raises(InvalidParameter):
        PLMap((0, F(1, 2)), (0, 1))
    with pytest.raises(InvalidParameter):
        PLMap((0, 1), (0, F(1, 2)), mod_one=True)
    with pytest.raises(UnknownName):
        builtin("logistic")
    with pytest.raises(InvalidParameter):
        builtin("rotation(1/0)")


def test_builtins():
    t = builtin("tent")
    assert t.breakpoints == (0, F(1, 2), 1) and t.values == (0, 1, 0)
    assert builtin("rotation(1/3)") == rotation(F(1, 3))
    assert isinstance(builtin("translation_semiflow"), TranslationSemiflow)


def test_swap_pieces():
    f = swap_f()
    assert f(F(0)) == F(1, 2) and f(F(1, 4)) == 1 and f(F(1, 2)) == F(1, 2) and f(F(1)) == 0
    assert str(pl_image(f, iu((0, F(1, 2))), 1)) == "(1/2,1]"


def test_swap_square_is_tent_on_left_half():
    sq = pl_power(swap_f(), 2)
    # h(x) = 1 - 2x carries [0,1/2] onto [0,1] and conjugates the square to the tent
    h = lambda x: 1 - 2 * x
    for k in range(0, 33):
        x = F(k, 64)
        assert h(sq(x)) == tent()(h(x))
    left = pl_image(sq, closed(0, F(1, 2)), 1)
    assert left == closed(0, F(1, 2))


def test_rotation_basis_orbits_are_periodic():
    r = rotation(F(1, 3))
    for U in r.basis(F(1, 8)):
        assert pl_image(r, U, 3) == U


def test_translation_hitting_examples():
    assert str(translation_hitting(iu((2, 3), space="halfline"), iu((0, 1), space="halfline"))) == "{}"
    assert str(translation_hitting(iu((0, 1), space="halfline"), iu((2, 3), space="halfline"))) == "(1,3)"
    assert str(translation_hitting(iu((0, 1), space="halfline"), iu((0, 1), space="halfline"))) == "(0,1)"
    s = translation_point_hitting(IntervalPoint(F(0)), iu((2, 3), space="halfline"))
    assert str(s) == "(2,3)" and s.beyond_known


def test_periodic_solutions():
    assert periodic_solutions(tent(), 1) == [0, F(2, 3)]
    assert set(periodic_solutions(doubling(), 2)) == {0, F(1, 3), F(2, 3)}


@pytest.mark.parametrize("f", MAPS, ids=lambda f: f.name)
@given(a=fracs, b=fracs, n=st.integers(1, 5), data=st.data())
def test_image_exactness(f, a, b, n, data):
    a, b = min(a, b), max(a, b)
    if a == b:
        return
    space = "circle" if f.mod_one else "interval"
    r = iu((a, b), space=space)
    img = pl_image(f, r, n)
    x = data.draw(st.fractions(min_value=a, max_value=b, max_denominator=200))
    if x in (a, b):
        return
    y = x
    for _ in range(n):
        y = f(y)
    assert img.contains_value(y)


@pytest.mark.parametrize("f", MAPS, ids=lambda f: f.name)
@given(a=fracs, b=fracs)
def test_preimage_duality(f, a, b):
    a, b = min(a, b), max(a, b)
    space = "circle" if f.mod_one else "interval"
    r = iu((a, b), space=space)
    pre = pl_preimage(f, r)
    for k in range(0, 41):
        x = F(k, 40)
        if f.mod_one and x == 1:
            continue
        assert pre.contains_value(x) == r.contains_value(f(x)), x


@pytest.mark.parametrize("eps", [F(1, 4), F(1, 8), F(1, 16)])
def test_tent_leo_witness_for_every_basis_region(eps):
    t = tent()
    for U in t.basis(eps):
        assert any(pl_image(t, U, n) == t.whole() for n in range(1, 12))


def test_swap_parity():
    f, U = swap_f(), iu((0, F(1, 2)))
    r = U
    for n in range(1, 65):
        r = pl_image(f, r, 1)
        target = closed(F(1, 2), 1) if n % 2 else closed(0, F(1, 2))
        assert r.intersect(target) == r, n


def test_step_and_circle_error():
    d = doubling()
    p = d.step(CirclePoint(F(1, 3), F(1, 1000)), 3)
    assert p.value == F(2, 3) and p.error == F(8, 1000)
    with pytest.raises(SpaceMismatch):
        d.step(IntervalPoint(F(1, 3)))

from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from transdyn.actions import (
    SemigroupAction,
    act,
    backward_set,
    constant,
    dai,
    eps_dense,
    from_map,
    golden_convergent,
    leo_sampled,
    multiply,
    nao_standin,
    orbit_set,
    pl_gen,
    pnst,
    rotation_gen,
    structure_report,
)
from transdyn.actions import builtin as action_builtin
from transdyn.core import Circle, CirclePoint, FinitePoint, IntervalPoint, SequenceSpace, UnitInterval
from transdyn.errors import ErrorBudgetExceeded, InvalidParameter, SpaceMismatch, UnknownName
from transdyn.systems_interval import doubling, tent

GOLDEN = (5 ** 0.5 - 1) / 2


def test_act_examples():
    d = dai()
    assert act(d, (0,), CirclePoint(F(1, 3))) == CirclePoint(F(2, 3))
    back = act(d, (1, 2), CirclePoint(F(1, 3)))
    assert back.value == F(1, 3) and back.error == 2 * d.delta
    p = pnst()
    assert act(p, (3, 5, 7), FinitePoint(11)) == FinitePoint(7)


def test_golden_convergent_bound():
    a, delta = golden_convergent(100)
    assert a.denominator >= 100
    assert abs(float(a) - GOLDEN) < float(delta)


def test_dai_denominator_meets_budget():
    d = dai(16, F(1, 64))
    q = d.angle.denominator
    assert q >= 10 * 16 * 64
    # worst accumulated error after doubling rotations L times stays below eps/10
    assert d.delta * 16 * 2 ** 16 < F(1, 640)


def test_orbit_examples():
    p = pnst()
    assert len(orbit_set(p, FinitePoint(3), 1)) == p.space.size
    assert len(orbit_set(dai(), CirclePoint(F(0)), 12)) >= 40
    r3 = SemigroupAction(Circle(), (rotation_gen(F(1, 3)),), True, "r3")
    assert [q.value for q in orbit_set(r3, CirclePoint(F(0)), 10)] == [0, F(1, 3), F(2, 3)]


def test_orbit_rejects_bad_length():
    with pytest.raises(InvalidParameter):
        orbit_set(pnst(), FinitePoint(1), 0)


def test_backward_examples():
    p = pnst()
    assert backward_set(p, FinitePoint(5), 1) == [FinitePoint(i) for i in range(p.space.size)]
    dbl = leo_sampled((2,))
    assert [q.value for q in backward_set(dbl, CirclePoint(F(0)), 3)] == [F(k, 8) for k in range(8)]
    one = SemigroupAction(SequenceSpace(64), (constant(1),), False, "c1")
    assert backward_set(one, FinitePoint(3), 4) == []
    assert backward_set(nao_standin(), FinitePoint(0), 3) == []


def test_eps_dense_examples():
    assert eps_dense(orbit_set(pnst(), FinitePoint(2), 1), F(1, 8), SequenceSpace(64)).is_holds
    v = eps_dense([IntervalPoint(F(0))], F(1, 4), UnitInterval())
    assert v.is_fails
    with pytest.raises(ErrorBudgetExceeded):
        eps_dense([CirclePoint(F(0), F(1, 10))], F(1, 4), Circle())


def test_error_budget_enforced():
    # a coarse convergent accumulates error quickly under doubling
    coarse = SemigroupAction(Circle(), (multiply(2, "tau"), rotation_gen(F(3, 5), F(1, 25), name="mu")),
                             False, "coarse")
    with pytest.raises(ErrorBudgetExceeded):
        orbit_set(coarse, CirclePoint(F(0)), 6, F(1, 50))


def test_structure_reports():
    rc = structure_report(pnst())
    assert rc["almost_open"].is_fails and rc["central"].is_fails
    rd = structure_report(from_map(doubling()))
    assert rd["central"].is_holds and rd["almost_open"].is_holds
    rt = structure_report(from_map(tent()))
    assert rt["irreducible"].is_fails
    assert rt["irreducible"].evidence["closed_set"] == "[1/8,1]"


def test_action_validation():
    with pytest.raises(InvalidParameter):
        SemigroupAction(Circle(), (), False)
    with pytest.raises(SpaceMismatch):
        SemigroupAction(UnitInterval(), (multiply(2),), False)
    with pytest.raises(InvalidParameter):
        SemigroupAction(SequenceSpace(8), (constant(20),), False)
    with pytest.raises(InvalidParameter):
        # x2 and a rotation by 1/3 do not commute
        SemigroupAction(Circle(), (multiply(2), rotation_gen(F(1, 3))), True)
    with pytest.raises(UnknownName):
        action_builtin("nope")


def test_flags():
    assert not pnst().central and not pnst().abelian
    assert leo_sampled().abelian and leo_sampled().central
    assert dai().central and not dai().abelian


def test_elements_completeness():
    els, complete = pnst(8).elements(3)
    assert complete and len(els) == 9
    _, complete = dai().elements(4)
    assert not complete


words = st.lists(st.integers(0, 2), min_size=1, max_size=6)


@given(words, words, st.integers(0, 63))
def test_composition(w1, w2, k):
    d = dai()
    x = CirclePoint(F(k, 64))
    lhs = act(d, tuple(w1 + w2), x)
    rhs = act(d, tuple(w2), act(d, tuple(w1), x))
    assert lhs.value == rhs.value and lhs.error == rhs.error


@given(st.integers(0, 15), st.integers(1, 3))
def test_backward_forward_adjoint(k, L):
    a = SemigroupAction(Circle(), (multiply(2, "x2"), multiply(3, "x3")), True, "x23")
    x = CirclePoint(F(k, 16))
    for y in backward_set(a, x, L):
        assert any(p.value == x.value for p in orbit_set(a, y, L))


@given(st.integers(0, 64), st.integers(1, 2))
def test_backward_forward_adjoint_constants(k, L):
    a = pnst(64)
    x = FinitePoint(k)
    for y in backward_set(a, x, L):
        assert x in orbit_set(a, y, L)


def test_pl_generator_action():
    a = SemigroupAction(UnitInterval(), (pl_gen(tent()),), True, "tent_action")
    assert [p.value for p in orbit_set(a, IntervalPoint(F(1, 3)), 4)] == [F(2, 3)]
    assert [p.value for p in backward_set(a, IntervalPoint(F(0)), 2)] == [0, F(1, 2), 1]

from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from transdyn.core import INF, Interval
from transdyn.errors import MixedKind
from transdyn.timesets import (
    COFINITE,
    DISCRETE,
    EMPTY,
    FINITE,
    SYNDETIC,
    THICK,
    PeriodicTail,
    TimeWindowSet,
    classify,
    continuous_set,
)


def D(hits, H=64, **kw):
    return TimeWindowSet(DISCRETE, tuple(hits), H, **kw)


def test_classify_cofinite():
    c = classify(D(range(4, 65)))
    assert c.cls == COFINITE and c.threshold == 4


def test_classify_evens_syndetic_not_thick():
    c = classify(D(range(2, 65, 2)))
    assert c.cls == SYNDETIC and c.gap == 2
    assert not c.at_least(THICK)


def test_classify_long_runs_thick():
    hits = list(range(4, 13)) + list(range(20, 41)) + list(range(50, 65))
    c = classify(D(hits))
    assert c.cls == THICK and c.run >= 15


def test_classify_empty_and_finite():
    assert classify(D([])).cls == EMPTY
    assert classify(D([3, 50])).cls == FINITE


def test_classify_with_tail_is_beyond_horizon():
    s = D([2, 4, 6, 8], H=8, tail=PeriodicTail(1, 2, frozenset({0})))
    c = classify(s)
    assert c.cls == SYNDETIC and c.gap == 2 and not c.at_horizon
    full = D([3, 4, 5, 6, 7, 8], H=8, tail=PeriodicTail(3, 1, frozenset({0})))
    assert classify(full).cls == COFINITE and classify(full).threshold == 3


def test_classify_continuous():
    assert classify(continuous_set([Interval(F(1), INF)])).cls == COFINITE
    assert classify(continuous_set([Interval(F(1), F(3))])).cls == FINITE
    assert classify(continuous_set([])).cls == EMPTY


def test_tail_extension_and_membership():
    s = D([3, 6], H=6, tail=PeriodicTail(1, 3, frozenset({0})))
    assert s.extended(12).hits == (3, 6, 9, 12)
    assert s.contains(300) is True and s.contains(301) is False
    assert D([1], H=4).contains(10) is None


def test_provably_empty():
    assert D([], H=8, tail=PeriodicTail(1, 3, frozenset())).provably_empty
    assert not D([], H=8).provably_empty


def test_intersect_mixed_kinds():
    with pytest.raises(MixedKind):
        D([1]).intersect(continuous_set([Interval(F(0), F(1))]))


def test_tail_intersection_lcm():
    a = PeriodicTail(2, 2, frozenset({0}))
    b = PeriodicTail(5, 3, frozenset({1}))
    t = a.intersect(b)
    assert t.period == 6 and t.start == 5 and t.residues == frozenset({4})


@given(st.sets(st.integers(1, 64)))
def test_cofinite_implies_weaker_classes(hits):
    s = D(sorted(hits))
    c = classify(s)
    if c.cls == COFINITE:
        # cofinite at horizon: everything from the threshold on is a hit
        assert all(n in hits for n in range(c.threshold, 65))
    if c.cls == SYNDETIC:
        gaps = [b - a for a, b in zip([0] + sorted(hits), sorted(hits) + [65])]
        assert max(gaps) <= c.gap


@given(st.sets(st.integers(1, 40)), st.integers(1, 40))
def test_monotone_window(hits, h1):
    big = D(sorted(hits), H=40)
    small = big.extended(h1)
    assert set(small.hits) == {n for n in hits if n <= h1}

from fractions import Fraction as F

import pytest

from transdyn.actions import dai, pnst
from transdyn.core import Box, IntervalPoint, ProductPoint, Verdict
from transdyn.errors import IncompatibleKinds, InvalidParameter, UnknownName, UnsupportedSpace, VerificationFailed
from transdyn.hierarchy import (
    CONDITIONAL_EDGES,
    DIAGONAL,
    EDGES,
    INDEPENDENT,
    FACTORS,
    FactorMap,
    ProductSystem,
    VerdictTable,
    _restrict,
    builtin_factor,
    identity_factor,
    implication_audit,
    implied_pairs,
    product,
    verify_preservation,
)
from transdyn.hitting import hitting_UV
from transdyn.symbolic import full_shift
from transdyn.systems_interval import TranslationSemiflow, doubling, swap_f, tent

from helpers import cyl, iu


def test_product_construction():
    t = tent()
    p = product([t, t])
    assert isinstance(p, ProductSystem) and p.mode == DIAGONAL
    assert len(p.basis(F(1, 4))) == len(t.basis(F(1, 4))) ** 2
    assert all(isinstance(b, Box) for b in p.basis(F(1, 4)))
    mixed = product([t, full_shift(2)], INDEPENDENT)
    assert mixed.time_kind == "cascade"
    assert product([t]) is t


def test_product_errors():
    with pytest.raises(IncompatibleKinds):
        product([tent(), TranslationSemiflow()])
    with pytest.raises(IncompatibleKinds):
        product([dai(), pnst()])
    with pytest.raises(InvalidParameter):
        product([])
    with pytest.raises(InvalidParameter):
        product([tent(), tent()], "sideways")


def test_product_dynamics():
    t = tent()
    p = product([t, t])
    x = ProductPoint((IntervalPoint(F(1, 3)), IntervalPoint(F(1, 5))))
    assert p.step(x, 1) == ProductPoint((IntervalPoint(F(2, 3)), IntervalPoint(F(2, 5))))
    U = Box((iu((0, F(1, 2))), iu((F(1, 2), 1))))
    img = p.image(U, 1)
    assert img.factors == (t.image(U.factors[0], 1), t.image(U.factors[1], 1))


def test_product_hitting_is_intersection():
    t = tent()
    p = product([t, t])
    a, b, c, d = t.basis(F(1, 4))[:4]
    N = p.hitting_UV(Box((a, b)), Box((c, d)), 16)
    M = hitting_UV(t, a, c, 16).intersect(hitting_UV(t, b, d, 16))
    assert N.extended(16).hits == M.extended(16).hits


def test_independent_product_hitting_unsupported():
    t = tent()
    p = product([t, t], INDEPENDENT)
    a = t.basis(F(1, 4))[0]
    with pytest.raises(UnsupportedSpace):
        p.hitting_UV(Box((a, a)), Box((a, a)), 8)


def test_doubling_to_tent():
    fm = builtin_factor("doubling_to_tent")
    assert fm.verified and fm.source.label == "doubling" and fm.target.label == "tent"
    phi = lambda x: 2 * x if x <= F(1, 2) else 2 * (1 - x)
    x = F(1, 3)
    assert phi(x) == F(2, 3)
    assert tent()(phi(x)) == phi(doubling()(x)) == F(2, 3)
    assert str(fm.apply_region(iu((0, F(1, 4)), space="circle"))) == "(0,1/2)"


def test_twosided_to_onesided():
    fm = builtin_factor("twosided_to_onesided_shift")
    s2 = full_shift(2, True)
    assert str(fm.apply_region(cyl(s2, (0, 1)))) == "[01]@0"
    assert str(_restrict(cyl(s2, (1, 0, 1), -1))) == "[01]@0"
    assert str(_restrict(cyl(s2, (1, 1), -2))) == "X"


def test_identity_and_registry():
    assert identity_factor(tent()).verified
    assert builtin_factor("identity").source == tent()
    assert set(FACTORS) >= {"doubling_to_tent", "twosided_to_onesided_shift"}
    with pytest.raises(UnknownName):
        builtin_factor("folding")


def test_unverified_factor_rejected():
    fm = FactorMap("bogus", tent(), tent(), "?", lambda r: r, False)
    with pytest.raises(VerificationFailed):
        verify_preservation(fm, "transitive")


@pytest.mark.parametrize("prop", ["leo", "mixing", "transitive", "minimal"])
def test_preservation_examples(prop):
    v = verify_preservation(builtin_factor("doubling_to_tent"), prop)
    assert v.is_holds


def test_preservation_two_sided_mixing():
    v = verify_preservation(builtin_factor("twosided_to_onesided_shift"), "mixing")
    assert v.is_holds and v.evidence["source"] == "Holds" and v.evidence["target"] == "Holds"


def test_preservation_vacuous():
    v = verify_preservation(builtin_factor("twosided_to_onesided_shift"), "leo")
    assert v.is_holds and "vacuous" in v.notes


def _table(system, cells, abelian=False, central=False):
    vt = VerdictTable()
    for prop, status in cells.items():
        vt.add(system, prop, getattr(Verdict, status)(), abelian, central)
    return vt


def test_audit_detects_injected_fault():
    found = implication_audit(_table("s", {"leo": "holds", "transitive": "fails"}))
    assert [str(v) for v in found] == ["s: leo Holds but transitive Fails"]
    found = implication_audit(_table("s", {"leo": "holds", "mixing": "fails"}))
    assert len(found) == 1 and (found[0].antecedent, found[0].consequent) == ("leo", "mixing")


def test_implied_pairs_closure():
    pairs = set(implied_pairs(EDGES))
    assert ("leo", "transitive") in pairs and ("leo", "strongly_transitive") in pairs
    assert ("transitive", "leo") not in pairs
    cond = set(implied_pairs(EDGES + CONDITIONAL_EDGES))
    assert ("minimal", "strongly_transitive") in cond and ("minimal", "strongly_transitive") not in pairs


def test_audit_undetermined_is_not_evidence():
    assert implication_audit(_table("s", {"leo": "holds", "mixing": "undetermined"})) == []


def test_conditional_edge_needs_abelian_and_central():
    cells = {"minimal": "holds", "vst": "fails"}
    assert implication_audit(_table("pnst", cells)) == []
    assert implication_audit(_table("s", cells, abelian=True)) == []
    assert len(implication_audit(_table("s", cells, abelian=True, central=True))) == 1


def test_edges_cover_diagram():
    pairs = set(EDGES)
    for a, c in [("leo", "mixing"), ("leo", "vst"), ("leo", "spt"), ("mixing", "weak_mixing"),
                 ("spt", "weak_mixing"), ("weak_mixing", "transitive"), ("vst", "strongly_transitive"),
                 ("strongly_transitive", "transitive"), ("minimal", "transitive")]:
        assert (a, c) in pairs
    assert CONDITIONAL_EDGES == (("minimal", "vst"),)


def test_swap_product_identity_parity():
    from transdyn.hitting import product_identity_audit
    f = swap_f()
    h = F(1, 2)
    v = product_identity_audit(f, iu((0, h)), iu((h, 1)), iu((0, h)), iu((0, h)), 32)
    assert v.is_holds and v.evidence["hits"] == 0

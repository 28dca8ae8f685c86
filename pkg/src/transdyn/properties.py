"""Property checkers: one per transitivity notion, each returning a three-valued Verdict.

Fails is only issued from exact evidence (provably empty hitting sets,
eventually periodic images, parity invariants, homeomorphism obstructions);
anything short of that is Undetermined.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .actions import SemigroupAction, backward_set, eps_dense, orbit_set
from .core import (
    Box,
    CheckBudget,
    Interval,
    IntervalPoint,
    IntervalUnion,
    Verdict,
    cylinder_length,
    interval_union,
)
from .errors import ErrorBudgetExceeded, UnsupportedGenerator
from .hierarchy import INDEPENDENT, ProductSystem, product
from .hitting import (
    _category,
    _orbit_image,
    filter_check,
    hit_mask,
    hitting_UV,
    hitting_Ux,
    hitting_xV,
    image_orbit,
    point_orbit,
    word_index,
)
from .symbolic import LANGUAGE_CAP, Subshift, occurrence_gap
from .systems_interval import PLMap, TranslationSemiflow, pl_preimage
from .timesets import COFINITE, CONTINUOUS, DISCRETE, EMPTY, FINITE, SYNDETIC, THICK, classify

PROPERTIES = ("transitive", "weak_mixing", "mixing", "leo", "strongly_transitive", "vst", "spt", "minimal")
COMPACT_NOTE = "compact=finite"
BACKWARD_WORDLEN = 5  # fibers of long words grow geometrically; density shows up well before


def _horizon(sys, b: CheckBudget) -> int:
    return b.wordlen if sys.time_kind == "words" else b.horizon


def _independent(sys) -> bool:
    return isinstance(sys, ProductSystem) and sys.mode == INDEPENDENT


def _conjunction(verdicts, b) -> Verdict:
    statuses = [v.status for v in verdicts]
    if any(v.is_fails for v in verdicts):
        bad = next(i for i, v in enumerate(verdicts) if v.is_fails)
        return Verdict.fails(b, factor=bad, witness=verdicts[bad].evidence_str())
    if all(v.is_holds for v in verdicts):
        return Verdict.holds(b, factors=len(verdicts))
    return Verdict.undetermined(b, statuses=[str(s) for s in statuses])


def _hint_pairs(sys) -> list:
    if isinstance(sys, TranslationSemiflow):
        return [(interval_union("halfline", [Interval(Fraction(2), Fraction(3))]),
                 interval_union("halfline", [Interval(Fraction(0), Fraction(1))]))]
    return []


def _first_hit(N) -> object:
    if N.kind == DISCRETE:
        return N.hits[0]
    if N.kind == CONTINUOUS:
        return N.hits[0].lo
    return len(N.hits[0])


# --------------------------------------------------------------------------
# exact parity invariant for substitutions whose images are two distinct letters

def _aligned_substitution(sys) -> bool:
    return (isinstance(sys, Subshift) and sys.kind == "substitution" and sys.two_sided
            and all(len(w) == 2 and w[0] != w[1] for w in sys.rule))


def _doubled_parity(region) -> Optional[int]:
    """Parity of the position of a forced doubled letter, common to every cylinder."""
    res = set()
    for off, w in region.cylinders:
        r = next(((off + i) % 2 for i in range(len(w) - 1) if w[i] is not None and w[i] == w[i + 1]), None)
        if r is None:
            return None
        res.add(r)
    return res.pop() if len(res) == 1 else None


def parity_constraint(sys, U, V) -> Optional[int]:
    """Residue ``r`` with ``N(U, V)`` inside ``r + 2N``, or None.

    Every point of a substitution subshift whose images are two distinct
    letters splits into aligned two-letter blocks, so a doubled letter always
    straddles a block boundary; two doubled letters sit at positions of equal
    parity in any one point.
    """
    if not _aligned_substitution(sys):
        return None
    ru, rv = _doubled_parity(U), _doubled_parity(V)
    if ru is None or rv is None:
        return None
    return (ru - rv) % 2


def _box_parity_conflict(sys, U, V) -> Optional[tuple]:
    if not isinstance(sys, ProductSystem):
        return None
    rs = [parity_constraint(c, a, b) for c, a, b in zip(sys.components, U.factors, V.factors)]
    known = {r for r in rs if r is not None}
    return tuple(rs) if len(known) > 1 else None


# --------------------------------------------------------------------------
# transitivity

def check_transitive(sys, b: CheckBudget = CheckBudget()) -> Verdict:
    """Every basis pair has a hitting time within the horizon."""
    if _independent(sys):
        return _conjunction([check_transitive(c, b) for c in sys.components], b)
    H = _horizon(sys, b)
    if isinstance(sys, ProductSystem) and sys.time_kind in ("cascade", "words"):
        return _product_transitive(sys, b, H)
    regions = sys.basis(b.epsilon)
    pairs = _hint_pairs(sys) + [(U, V) for U in regions for V in regions]
    undecided, worst = None, 0
    for U, V in pairs:
        N = hitting_UV(sys, U, V, H)
        if N.hits:
            first = _first_hit(N)
            worst = max(worst, first)
            continue
        if N.provably_empty:
            return Verdict.fails(b, U=str(U), V=str(V), hitting="{}", exact=True)
        conflict = _box_parity_conflict(sys, U, V)
        if conflict is not None:
            return Verdict.fails(b, U=str(U), V=str(V), parity=conflict)
        undecided = undecided or (U, V)
    if undecided is not None:
        return Verdict.undetermined(b, U=str(undecided[0]), V=str(undecided[1]), hitting="{}@H")
    return Verdict.holds(b, pairs=len(pairs), max_first_hit=worst)


def _product_transitive(sys: ProductSystem, b: CheckBudget, H: int) -> Verdict:
    """Diagonal products: a box pair hits iff the component hit masks share a bit."""
    bases = [c.basis(b.epsilon) for c in sys.components]
    tables = []
    for c, regs in zip(sys.components, bases):
        index = word_index(c, H) if sys.time_kind == "words" else None
        t = {}
        for i, U in enumerate(regs):
            for j, V in enumerate(regs):
                N = hitting_UV(c, U, V, H)
                if N.kind == DISCRETE:
                    N = N.extended(H)
                t[i, j] = (N, hit_mask(N, index))
        tables.append(t)
    undecided, worst, count = None, 0, 0
    for us in itertools.product(*(range(len(r)) for r in bases)):
        for vs in itertools.product(*(range(len(r)) for r in bases)):
            count += 1
            mask = -1
            for t, i, j in zip(tables, us, vs):
                mask &= t[i, j][1]
            if mask:
                if sys.time_kind == "cascade":
                    worst = max(worst, (mask & -mask).bit_length() - 1)
                continue
            U = Box(tuple(r[i] for r, i in zip(bases, us)))
            V = Box(tuple(r[j] for r, j in zip(bases, vs)))
            N = sys._meet([t[i, j][0] for t, i, j in zip(tables, us, vs)])
            if N.provably_empty:
                return Verdict.fails(b, U=str(U), V=str(V), hitting="{}", exact=True)
            conflict = _box_parity_conflict(sys, U, V)
            if conflict is not None:
                return Verdict.fails(b, U=str(U), V=str(V), parity=conflict)
            undecided = undecided or (U, V)
    if undecided is not None:
        return Verdict.undetermined(b, U=str(undecided[0]), V=str(undecided[1]), hitting="{}@H")
    return Verdict.holds(b, pairs=count, max_first_hit=worst)


def check_point_transitive(sys, x, b: CheckBudget = CheckBudget()) -> Verdict:
    """The forward orbit of ``x`` meets every basis region within the horizon."""
    H = _horizon(sys, b)
    undecided = None
    regions = sys.basis(b.epsilon)
    for V in regions:
        N = hitting_xV(sys, x, V, H)
        if N.hits:
            continue
        if N.provably_empty:
            return Verdict.fails(b, x=str(x), V=str(V), hitting="{}", exact=True)
        undecided = undecided or V
    if undecided is not None:
        return Verdict.undetermined(b, x=str(x), V=str(undecided), hitting="{}@H")
    return Verdict.holds(b, x=str(x), regions=len(regions))


def check_weak_mixing(sys, b: CheckBudget = CheckBudget()) -> Verdict:
    """Transitivity of the self-product, cross-checked against thickness of ``N(U, V)``."""
    if _independent(sys):
        return _conjunction([check_weak_mixing(c, b) for c in sys.components], b)
    prod = product([sys, sys])
    pt = check_transitive(prod, b)
    if pt.is_fails:
        return Verdict.fails(b, product_witness=pt.evidence_str())
    if pt.is_undetermined:
        return Verdict.undetermined(b, product=pt.evidence_str())
    if _category(sys) in ("word", "continuous"):
        return Verdict.holds(b, product_pairs=pt.evidence.get("pairs"),
                             notes=("thickness not applicable to this time kind",))
    H = _horizon(sys, b)
    regions = sys.basis(b.epsilon)
    for U in regions:
        for V in regions:
            cert = classify(hitting_UV(sys, U, V, H))
            if not cert.at_least(THICK):
                return Verdict.undetermined(b, diagnostic="product transitive but hitting set not thick",
                                            U=str(U), V=str(V), certificate=str(cert))
    return Verdict.holds(b, product_pairs=pt.evidence.get("pairs"), thick_pairs=len(regions) ** 2)


def _expanding_multipliers(sys) -> bool:
    return isinstance(sys, SemigroupAction) and all(g.kind == "multiply" and g.factor >= 2
                                                    for g in sys.generators)


def _onto_length(U: IntervalUnion) -> int:
    """Word length after which every product of multipliers >= 2 maps the arc ``U`` onto the circle."""
    longest = max(p.hi - p.lo for p in U.parts)
    n = 0
    while (1 << n) * longest <= 1:
        n += 1
    return n


def check_mixing(sys, b: CheckBudget = CheckBudget()) -> Verdict:
    """Every basis-pair hitting set is cofinite (co-compact)."""
    if _independent(sys):
        return _conjunction([check_mixing(c, b) for c in sys.components], b)
    cat = _category(sys)
    regions = sys.basis(b.epsilon)
    if cat == "word":
        if _expanding_multipliers(sys):
            n = max(_onto_length(U) for U in regions)
            return Verdict.holds(b, notes=(COMPACT_NOTE,), onto_after_wordlen=n,
                                 reason="every element of word length >= n maps each basis arc onto X")
        H = _horizon(sys, b)
        for U in regions:
            for V in regions:
                N = hitting_UV(sys, U, V, H)
                if N.provably_empty:
                    return Verdict.fails(b, notes=(COMPACT_NOTE,), U=str(U), V=str(V), hitting="{}")
        return Verdict.undetermined(b, notes=(COMPACT_NOTE,),
                                    reason="complement of N(U,V) not shown finite")
    H = _horizon(sys, b)
    undecided, worst = None, 0
    for U in regions:
        for V in regions:
            N = hitting_UV(sys, U, V, H)
            if N.provably_empty:
                return Verdict.fails(b, U=str(U), V=str(V), hitting="{}", exact=True)
            cert = classify(N)
            if N.beyond_known and cert.cls != COFINITE:
                witness = str(N.tail) if N.tail is not None else str(N)
                return Verdict.fails(b, U=str(U), V=str(V), certificate=str(cert), invariant=witness)
            r = parity_constraint(sys, U, V)
            if r is not None:
                return Verdict.fails(b, U=str(U), V=str(V), invariant=f"N(U,V) in {r}+2N")
            if cert.cls == COFINITE and N.exact and (not cert.at_horizon or cert.threshold <= H / 2):
                worst = max(worst, cert.threshold)
                continue
            undecided = undecided or (U, V, cert)
    if undecided is not None:
        U, V, cert = undecided
        return Verdict.undetermined(b, U=str(U), V=str(V), certificate=str(cert))
    return Verdict.holds(b, pairs=len(regions) ** 2, max_threshold=worst)


# --------------------------------------------------------------------------
# locally eventually onto

def leo_time(sys, U, H: int) -> Optional[int]:
    """Least ``N <= H`` with ``image(U, N)`` the whole space, for exactly iterated systems."""
    images, repeat = image_orbit(sys, U, H)
    for n in range(1, H + 1):
        if n >= len(images) and repeat is None:
            return None
        if sys.is_whole(_orbit_image(images, repeat, n)):
            return n
    return None


def _never_whole(sys, U, H) -> bool:
    images, repeat = image_orbit(sys, U, H)
    if repeat is None:
        return False
    m, p = repeat
    return not any(sys.is_whole(images[n]) for n in range(1, m + p))


def _dual_dense(sys, N: int, eps) -> Optional[Verdict]:
    """``f^{-N}(x)`` is eps-dense for every net point (PL maps); None when not computable."""
    if not isinstance(sys, PLMap):
        return None
    for x in sys.net(eps):
        pre = pl_preimage(sys, interval_union(sys.space.kind, [Interval(x.value, x.value, True, True)]))
        for _ in range(N - 1):
            pre = pl_preimage(sys, pre)
        pts = [IntervalPoint(p.lo) for p in pre.parts]
        v = eps_dense(pts, eps, sys.space)
        if not v.is_holds:
            return Verdict.fails(x=str(x), detail=v.evidence_str())
    return Verdict.holds()


def check_leo(sys, b: CheckBudget = CheckBudget()) -> Verdict:
    """Every basis region is mapped onto the whole space (by all but finitely many times)."""
    cat = _category(sys)
    regions = sys.basis(b.epsilon)
    if cat == "continuous":
        U = regions[0]
        return Verdict.fails(b, U=str(U), reason="U+t misses 0 for every t>0")
    if sys.invertible:
        U = next(r for r in regions if not sys.is_whole(r))
        return Verdict.fails(b, U=str(U), reason="homeomorphism: images of a proper open set stay proper")
    if cat == "word":
        if _expanding_multipliers(sys):
            n = max(_onto_length(U) for U in regions)
            return Verdict.holds(b, notes=(COMPACT_NOTE,), onto_after_wordlen=n)
        if sys.all_constant:
            return Verdict.fails(b, reason="every element has a single-point image")
        rot = next((g for g in sys.generators if g.kind in ("rotation", "inverse_rotation") and g.delta > 0),
                   None)
        if rot is not None:
            return Verdict.fails(b, notes=(COMPACT_NOTE,), generator=rot.name, U=str(regions[0]),
                                 reason="powers of an irrational rotation are infinitely many isometries")
        return Verdict.undetermined(b, notes=(COMPACT_NOTE,))
    if cat == "product":
        return _conjunction([check_leo(c, b) for c in sys.components], b)
    H = _horizon(sys, b)
    worst, undecided = 0, None
    for U in regions:
        n = leo_time(sys, U, H)
        if n is not None:
            worst = max(worst, n)
            continue
        if _never_whole(sys, U, H):
            return Verdict.fails(b, U=str(U), reason="image orbit cycles without reaching X")
        undecided = undecided or U
    if undecided is not None:
        return Verdict.undetermined(b, U=str(undecided), reason="not onto within horizon")
    dual = _dual_dense(sys, worst, b.epsilon)
    if dual is not None and not dual.is_holds:
        return Verdict.undetermined(b, diagnostic="forward and preimage-density criteria disagree",
                                    max_N=worst, dual=dual.evidence_str())
    return Verdict.holds(b, max_N=worst, dual="checked" if dual is not None else "n/a")


# --------------------------------------------------------------------------
# strong transitivity

def _forward_cover(sys, U, H: int) -> Optional[int]:
    """Least ``N`` with the images of ``U`` at times ``1..N`` covering the whole space exactly."""
    cat = _category(sys)
    if cat == "continuous":
        return None
    if cat == "word" or (cat == "product" and sys.time_kind == "words"):
        els, _ = sys.elements(H)
        acc = None
        for el in els:
            inner, _ = sys.image_bounds(el, U)
            if cat == "product":
                if sys.is_whole(inner):
                    return len(el.word)
                continue
            acc = inner if acc is None else sys.union(acc, inner)
            if sys.is_whole(acc):
                return len(el.word)
        return None
    if cat == "product":
        orbits = [image_orbit(c, f, H) for c, f in zip(sys.components, U.factors)]
        for n in range(1, H + 1):
            if all(n < len(im) or rep is not None for im, rep in orbits) and \
                    all(c.is_whole(_orbit_image(im, rep, n)) for c, (im, rep) in zip(sys.components, orbits)):
                return n
        return None
    if cat == "shift2":
        # whole-space tests enumerate the language over the union's window; cap it for
        # exponential-growth languages
        cap = LANGUAGE_CAP if sys.kind == "substitution" else 14
        acc = None
        for n in range(1, H + 1):
            im = sys.image(U, n)
            acc = im if acc is None else sys.union(acc, im)
            lo, hi = acc.window()
            if hi - lo > cap:
                return None
            if sys.is_whole(acc):
                return n
        return None
    images, repeat = image_orbit(sys, U, H)
    acc = None
    for n in range(1, H + 1):
        if n >= len(images) and repeat is None:
            return None
        im = _orbit_image(images, repeat, n)
        acc = im if acc is None else sys.union(acc, im)
        if sys.is_whole(acc):
            return n
    return None


def _test_points(sys, eps) -> list:
    pts = list(sys.net(eps))
    try:
        extra = [p for p, _ in sys.periodic_points()]
    except TypeError:
        extra = []
    return extra + [p for p in pts if p not in extra]


def _backward_cross_check(sys, eps, L) -> Optional[Verdict]:
    """Density of ``S^-(x)`` from a few net points (word actions)."""
    if not isinstance(sys, SemigroupAction):
        return None
    for x in sys.net(eps)[:3]:
        try:
            pts = backward_set(sys, x, min(L, BACKWARD_WORDLEN), eps)
        except (ErrorBudgetExceeded, UnsupportedGenerator):
            return None
        if not pts:
            return Verdict.fails(x=str(x), backward="{}")
        v = eps_dense(pts, eps, sys.space)
        if not v.is_holds:
            return v
    return Verdict.holds()


def check_strongly_transitive(sys, b: CheckBudget = CheckBudget()) -> Verdict:
    """Images of every basis region over all times cover the space; backward orbits are dense."""
    if _independent(sys):
        return _conjunction([check_strongly_transitive(c, b) for c in sys.components], b)
    H = _horizon(sys, b)
    regions = sys.basis(b.epsilon)
    points = None
    covered_forward, undecided, worst = 0, None, 0
    for U in regions:
        n = _forward_cover(sys, U, H)
        if n is not None:
            covered_forward += 1
            worst = max(worst, n)
            continue
        if points is None:
            points = _test_points(sys, b.epsilon)
        for x in points:
            N = hitting_Ux(sys, U, x, H)
            if N.hits:
                worst = max(worst, _first_hit(N))
                continue
            if N.provably_empty:
                return Verdict.fails(b, U=str(U), x=str(x), hitting="{}", exact=True)
            undecided = undecided or (U, x)
    if undecided is not None:
        return Verdict.undetermined(b, U=str(undecided[0]), x=str(undecided[1]), hitting="{}@H")
    cross = _backward_cross_check(sys, b.epsilon, H)
    if cross is not None and not cross.is_holds:
        return Verdict.undetermined(b, diagnostic="image cover and backward density disagree",
                                    backward=cross.evidence_str())
    return Verdict.holds(b, regions=len(regions), forward_covers=covered_forward, max_time=worst)


def check_vst(sys, b: CheckBudget = CheckBudget()) -> Verdict:
    """A finite set of times whose images of each basis region cover the space."""
    if _independent(sys):
        return _conjunction([check_vst(c, b) for c in sys.components], b)
    if isinstance(sys, SemigroupAction) and sys.all_constant and sys.space.kind == "finite":
        return Verdict.fails(b, reason="finitely many constant images form a finite set; X is infinite",
                             notes=("finite sequence space stands in for {1/n}u{0}",))
    H = _horizon(sys, b)
    regions = sys.basis(b.epsilon)
    worst, missing = 0, None
    for U in regions:
        n = _forward_cover(sys, U, H)
        if n is None:
            missing = missing or U
            continue
        worst = max(worst, n)
    if missing is not None:
        st = check_strongly_transitive(sys, b)
        if st.is_fails:
            return Verdict.fails(b, st_witness=st.evidence_str())
        return Verdict.undetermined(b, U=str(missing), reason="no finite cover within budget")
    return Verdict.holds(b, max_N=worst, syndetic=_syndetic_summary(sys, b))


def _syndetic_summary(sys, b) -> str:
    """How many sampled ``N(U, x)`` carry a syndetic certificate (discrete times only)."""
    if _category(sys) not in ("orbit", "shift2"):
        return "n/a"
    H = _horizon(sys, b)
    regions = sys.basis(b.epsilon)[:8]
    pts = sys.net(b.epsilon)[:8]
    total = good = 0
    for U in regions:
        for x in pts:
            total += 1
            if classify(hitting_Ux(sys, U, x, H)).at_least(SYNDETIC):
                good += 1
    return f"{good}/{total}"


def _parity_filter_witness(sys, eps) -> Optional[dict]:
    """Regions ``U1, U2`` and a point ``x`` with ``N(U1, x)`` and ``N(U2, x)`` in opposite parity classes."""
    if not _aligned_substitution(sys):
        return None
    by_parity: dict = {}
    for U in sys.basis(eps):
        r = _doubled_parity(U)
        if r is not None:
            by_parity.setdefault(r, U)
    if len(by_parity) < 2:
        return None
    x = next((p for p in sys.net(eps) if any(a == c for a, c in zip(p.window(-8, 8), p.window(-7, 9)))), None)
    if x is None:
        return None
    return dict(U1=str(by_parity[0]), U2=str(by_parity[1]), x=str(x))


def check_spt(sys, b: CheckBudget = CheckBudget()) -> Verdict:
    """Strong transitivity of every j-fold self-product (j <= k) and the filter property of N(U, x)."""
    if _independent(sys):
        return _conjunction([check_spt(c, b) for c in sys.components], b)
    results = []
    for j in range(1, b.order + 1):
        st = check_strongly_transitive(product([sys] * j), b)
        if st.is_fails:
            return Verdict.fails(b, order=j, st_witness=st.evidence_str())
        results.append(st)
    witness = _parity_filter_witness(sys, b.epsilon)
    if witness is not None:
        return Verdict.fails(b, filter="disjoint parity classes", **witness)
    H = _horizon(sys, b)
    sets = [hitting_Ux(sys, U, x, H) for U in sys.basis(b.epsilon) for x in sys.net(b.epsilon)]
    fc = filter_check(sets)
    if fc.is_fails:
        return Verdict.fails(b, filter=fc.evidence_str())
    if all(r.is_holds for r in results) and fc.is_holds:
        return Verdict.holds(b, orders=b.order, filter_sets=len(sets))
    return Verdict.undetermined(b, st=[str(r.status) for r in results], filter=str(fc.status))


# --------------------------------------------------------------------------
# minimality

def _closed_orbit(sys: SemigroupAction, x, L: int) -> Optional[list]:
    """The full orbit of ``x`` when it closes up exactly within word length ``L``."""
    pts = orbit_set(sys, x, L)
    if any(getattr(p, "error", 0) for p in pts):
        return None
    vals = {sys._point(p.value if hasattr(p, "value") else p.index) for p in pts}
    for p in list(vals):
        for g in sys.generators:
            if sys._apply_gen(g, p) not in vals:
                return None
    return sorted(vals, key=str)


def check_minimal(sys, b: CheckBudget = CheckBudget()) -> Verdict:
    """Every orbit is dense: exact obstructions first, then density at scale."""
    if _independent(sys):
        return _conjunction([check_minimal(c, b) for c in sys.components], b)
    cat = _category(sys)
    regions = sys.basis(b.epsilon)
    if cat == "word":
        L = _horizon(sys, b)
        for x in sys.net(b.epsilon):
            closed = _closed_orbit(sys, x, L)
            if closed is not None:
                miss = next((U for U in regions if not any(sys.contains(U, p) for p in closed)), None)
                if miss is not None:
                    return Verdict.fails(b, x=str(x), orbit=[str(p) for p in closed], misses=str(miss))
            try:
                v = eps_dense(orbit_set(sys, x, L, b.epsilon), b.epsilon, sys.space)
            except ErrorBudgetExceeded as exc:
                return Verdict.undetermined(b, x=str(x), reason=str(exc))
            if not v.is_holds:
                return Verdict.undetermined(b, x=str(x), density=v.evidence_str())
        return Verdict.holds(b, notes=("at budget",), points=len(sys.net(b.epsilon)))
    # exact obstruction: a periodic orbit missing a basis region
    try:
        periodic = sys.periodic_points()
    except TypeError:
        periodic = []
    H = _horizon(sys, b)
    for x, _ in periodic:
        for V in regions:
            N = hitting_xV(sys, x, V, H)
            if N.provably_empty and sys.contains(V, x) is False:
                return Verdict.fails(b, x=str(x), V=str(V), reason="periodic orbit misses V")
    if isinstance(sys, Subshift) and sys.kind == "substitution":
        k = cylinder_length(b.epsilon)
        L = 2 * k - 1 if sys.two_sided else k
        worst = 0
        for w in sorted(sys.language(L)):
            cert = occurrence_gap(sys, w, H)
            if cert.cls != SYNDETIC:
                return Verdict.undetermined(b, word="".join(map(str, w)), certificate=str(cert))
            worst = max(worst, cert.gap)
        return Verdict.holds(b, notes=("at scale",), words=len(sys.language(L)), max_gap=worst)
    undecided = None
    for x in sys.net(b.epsilon):
        for V in regions:
            N = hitting_xV(sys, x, V, H)
            if N.hits or sys.contains(V, x):
                continue
            if N.provably_empty:
                return Verdict.fails(b, x=str(x), V=str(V), hitting="{}", exact=True)
            undecided = undecided or (x, V)
    if undecided is not None:
        return Verdict.undetermined(b, x=str(undecided[0]), V=str(undecided[1]))
    return Verdict.holds(b, notes=("at scale",), points=len(sys.net(b.epsilon)))


# --------------------------------------------------------------------------
# pointwise recurrence

@dataclass
class PointReport:
    nonwandering: Verdict
    recurrent: Verdict
    almost_periodic: Verdict
    omega_window: tuple = field(default_factory=tuple)

    def __str__(self):
        return (f"nonwandering={self.nonwandering.status};recurrent={self.recurrent.status};"
                f"almost_periodic={self.almost_periodic.status};omega={len(self.omega_window)}")


def check_point_properties(sys, x, b: CheckBudget = CheckBudget()) -> PointReport:
    """Non-wandering, recurrence and almost periodicity of ``x`` at the budget's resolution."""
    H = _horizon(sys, b)
    around = [U for U in sys.basis(b.epsilon) if sys.contains(U, x) is True]
    if not around:
        und = Verdict.undetermined(b, reason="no basis region surely contains x")
        return PointReport(und, und, und, ())

    def combine(results):
        if any(r is False for r, _ in results):
            U = next(u for r, u in results if r is False)
            return Verdict.fails(b, U=str(U), exact=True)
        if all(r is True for r, _ in results):
            return Verdict.holds(b, regions=len(results))
        U = next(u for r, u in results if r is None)
        return Verdict.undetermined(b, U=str(U))

    def tri(N):
        if N.hits:
            return True
        return False if N.provably_empty else None

    nw = combine([(tri(hitting_UV(sys, U, U, H)), U) for U in around])
    rec_sets = [(hitting_xV(sys, x, U, H), U) for U in around]
    rec = combine([(tri(N), U) for N, U in rec_sets])
    ap_results = []
    for N, U in rec_sets:
        cert = classify(N)
        if cert.at_least(SYNDETIC):
            ap_results.append((True, U))
        elif N.beyond_known and cert.cls in (EMPTY, FINITE):
            ap_results.append((False, U))
        else:
            ap_results.append((None, U))
    ap = combine(ap_results)
    if ap.is_holds:
        ap = Verdict.holds(b, regions=len(ap_results),
                           certificates=[str(classify(N)) for N, _ in rec_sets][:4])
    omega: tuple = ()
    if sys.time_kind == "cascade":
        pts, repeat = point_orbit(sys, x, H)
        omega = tuple(_orbit_image(pts, repeat, n) for n in range(H // 2, H + 1)
                      if n < len(pts) or repeat is not None)
    elif sys.time_kind == "continuous":
        omega = tuple(sys.step(x, t) for t in range(H // 2, H + 1))
    return PointReport(nw, rec, ap, omega)


# --------------------------------------------------------------------------

CHECKERS = {
    "transitive": check_transitive,
    "weak_mixing": check_weak_mixing,
    "mixing": check_mixing,
    "leo": check_leo,
    "strongly_transitive": check_strongly_transitive,
    "vst": check_vst,
    "spt": check_spt,
    "minimal": check_minimal,
}


def check(prop: str, sys, b: CheckBudget = CheckBudget()) -> Verdict:
    if prop not in CHECKERS:
        from .errors import UnknownName
        raise UnknownName(f"unknown property {prop!r}")
    return CHECKERS[prop](sys, b)

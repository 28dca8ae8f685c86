"""Hitting-time sets N(U,V), N(U,x), N(x,V) for every system kind, and family certificates.

Discrete systems iterate exact images and stop as soon as the image sequence
repeats; the repeat turns the finite window into an exact description of the
whole hitting set (a :class:`PeriodicTail`).
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from . import kernels
from .actions import SemigroupAction
from .core import Box, Verdict
from .errors import InvalidParameter, MixedKind, NotAbelianDeclared
from .symbolic import Subshift, reference_iterate
from .systems_interval import (
    TranslationSemiflow,
    translation_hitting,
    translation_point_hitting,
    translation_region_point_hitting,
)
from .timesets import (
    DISCRETE,
    WORD,
    FamilyCertificate,
    PeriodicTail,
    TimeWindowSet,
    classify,
)

__all__ = [
    "hitting_UV", "hitting_Ux", "hitting_xV", "classify", "filter_check",
    "product_identity_audit", "product_identity_sweep", "furstenberg_probe", "image_orbit",
    "TimeWindowSet", "FamilyCertificate", "PeriodicTail",
]


def _is_product(sys) -> bool:
    from .hierarchy import ProductSystem
    return isinstance(sys, ProductSystem)


def _category(sys) -> str:
    if isinstance(sys, TranslationSemiflow):
        return "continuous"
    if isinstance(sys, SemigroupAction):
        return "word"
    if _is_product(sys):
        return "product"
    if isinstance(sys, Subshift) and sys.two_sided:
        return "shift2"
    return "orbit"


# --------------------------------------------------------------------------
# exact image orbits

@lru_cache(maxsize=4096)
def image_orbit(sys, U, H: int) -> tuple:
    """``(images, repeat)``: ``images[n] = sys.image(U, n)`` for ``n <= min(H, found)``.

    ``repeat = (m, p)`` when ``images[m + p] == images[m]``, which pins every
    later image down exactly.
    """
    images = [U]
    seen = {U: 0}
    for n in range(1, H + 1):
        nxt = sys.image(images[-1], 1)
        if nxt in seen:
            m = seen[nxt]
            return tuple(images), (m, n - m)
        seen[nxt] = n
        images.append(nxt)
    return tuple(images), None


def _orbit_image(images, repeat, n):
    if n < len(images):
        return images[n]
    m, p = repeat
    return images[m + (n - m) % p]


def _discrete_from_predicate(images, repeat, H, pred) -> TimeWindowSet:
    hits, ambiguous = [], 0
    for n in range(1, H + 1):
        if n >= len(images) and repeat is None:
            break
        r = pred(_orbit_image(images, repeat, n))
        if r is None:
            ambiguous += 1
        elif r:
            hits.append(n)
    tail = None
    if repeat is not None:
        m, p = repeat
        start = max(m, 1)
        res = set()
        for n in range(start, start + p):
            r = pred(_orbit_image(images, repeat, n))
            if r is None:
                ambiguous += 1
            elif r:
                res.add(n % p)
        if start <= H + 1:
            tail = PeriodicTail(start, p, frozenset(res))
    return TimeWindowSet(DISCRETE, tuple(hits), H, ambiguous == 0, tail if ambiguous == 0 else None, ambiguous)


@lru_cache(maxsize=4096)
def point_orbit(sys, x, H: int) -> tuple:
    pts = [x]
    seen = {x: 0}
    for n in range(1, H + 1):
        nxt = sys.step(pts[-1], 1)
        if nxt in seen:
            m = seen[nxt]
            return tuple(pts), (m, n - m)
        seen[nxt] = n
        pts.append(nxt)
    return tuple(pts), None


# --------------------------------------------------------------------------
# two-sided shifts

def _two_sided_UV(sys: Subshift, U, V, H: int) -> TimeWindowSet:
    if not (sys.nonempty(U) and sys.nonempty(V)):
        return TimeWindowSet(DISCRETE, (), H, True, PeriodicTail(1, 1, frozenset()))
    if sys.kind == "substitution":
        hits = _substitution_hits(sys, U, V, H)
        return TimeWindowSet(DISCRETE, hits, H, True)
    tail, n0 = None, H + 1
    N = sys.primitivity_exponent()
    if N is not None:
        # once the windows are N-1 apart a connecting path exists between any allowed words
        n0 = min(N - 1 - ov + ou + len(wu)
                 for ou, wu in U.cylinders for ov, wv in V.cylinders if wu and wv) \
            if not (U.syntactically_whole or V.syntactically_whole) else 1
        n0 = max(n0, 1)
        if n0 <= H + 1:
            tail = PeriodicTail(n0, 1, frozenset({0}))
    hits = tuple(n for n in range(1, min(n0, H + 1)) if sys.nonempty(sys.intersect(sys.image(U, n), V)))
    hits += tuple(range(max(n0, 1), H + 1))
    return TimeWindowSet(DISCRETE, hits, H, True, tail)


def _substitution_hits(sys: Subshift, U, V, H: int) -> tuple:
    # every factor spanning both windows occurs in the reference iterate
    lo = min(o for o, w in U.cylinders + V.cylinders)
    hi = max(o + len(w) for o, w in U.cylinders + V.cylinders)
    span = hi - lo + H
    ref = reference_iterate(sys.rule, sys.seed, span)
    hit = bytearray(H + 1)
    for ou, wu in U.cylinders:
        pos_u = kernels.pattern_occurrences(ref, [-1 if s is None else s for s in wu])
        for ov, wv in V.cylinders:
            occ_v = kernels.pattern_occurrences(ref, [-1 if s is None else s for s in wv])
            flags = bytearray(len(ref))
            for q in occ_v:
                flags[q] = 1
            got = kernels.difference_hits(pos_u, bytes(flags), ov - ou, H)
            for n in range(1, H + 1):
                if got[n]:
                    hit[n] = 1
    return tuple(n for n in range(1, H + 1) if hit[n])


# --------------------------------------------------------------------------
# word actions

def _word_set(sys: SemigroupAction, L: int, test) -> TimeWindowSet:
    els, complete = sys.elements(L)
    hits, ambiguous = [], 0
    for el in els:
        r = test(el)
        if r is None:
            ambiguous += 1
        elif r:
            hits.append(el.word)
    return TimeWindowSet(WORD, tuple(hits), L, ambiguous == 0, None, ambiguous, complete)


@lru_cache(maxsize=1 << 18)
def _bounds(sys: SemigroupAction, el, U) -> tuple:
    return sys.image_bounds(el, U)


def _word_UV(sys: SemigroupAction, U, V, L: int) -> TimeWindowSet:
    def test(el):
        inner, outer = _bounds(sys, el, U)
        if sys.nonempty(sys.intersect(inner, V)):
            return True
        if not sys.nonempty(sys.intersect(outer, V)):
            return False
        return None
    return _word_set(sys, L, test)


def _word_Ux(sys: SemigroupAction, U, x, L: int) -> TimeWindowSet:
    # x in s(U) iff x lies in the image; the inner/outer bounds absorb rotation error
    def test(el):
        inner, outer = _bounds(sys, el, U)
        if sys.contains(inner, x) is True:
            return True
        if sys.contains(outer, x) is False:
            return False
        return None
    return _word_set(sys, L, test)


def _word_xV(sys: SemigroupAction, x, V, L: int) -> TimeWindowSet:
    return _word_set(sys, L, lambda el: sys.contains(V, sys.apply(el, x)))


def word_index(sys, L: int) -> dict:
    """Bit position of each element's word, for mask arithmetic on word-indexed sets."""
    els, _ = sys.elements(L)
    return {el.word: i for i, el in enumerate(els)}


def hit_mask(N: TimeWindowSet, index: Optional[dict] = None) -> int:
    if N.kind == WORD:
        m = 0
        for w in N.hits:
            m |= 1 << index[w]
        return m
    return N.mask


# --------------------------------------------------------------------------
# public operations

@lru_cache(maxsize=1 << 16)
def hitting_UV(sys, U, V, H: int = 32) -> TimeWindowSet:
    """``N(U, V)`` within horizon ``H`` (word length ``H`` for semigroup actions)."""
    if H < 1:
        raise InvalidParameter("horizon must be at least 1")
    cat = _category(sys)
    if cat == "continuous":
        return translation_hitting(U, V)
    if cat == "word":
        return _word_UV(sys, U, V, H)
    if cat == "product":
        return sys.hitting_UV(U, V, H)
    if cat == "shift2":
        return _two_sided_UV(sys, U, V, H)
    images, repeat = image_orbit(sys, U, H)
    return _discrete_from_predicate(images, repeat, H, lambda im: sys.intersects(im, V))


@lru_cache(maxsize=1 << 16)
def hitting_Ux(sys, U, x, H: int = 32) -> TimeWindowSet:
    """``N(U, x) = {t : x in t(U)}``; boundary straddles count as ambiguous, not hits."""
    if H < 1:
        raise InvalidParameter("horizon must be at least 1")
    cat = _category(sys)
    if cat == "continuous":
        return translation_region_point_hitting(U, x)
    if cat == "word":
        return _word_Ux(sys, U, x, H)
    if cat == "product":
        return sys.hitting_Ux(U, x, H)
    if cat == "shift2":
        hits = tuple(n for n in range(1, H + 1) if sys.contains(sys.image(U, n), x))
        tail = None
        if not sys.nonempty(U):
            tail = PeriodicTail(1, 1, frozenset())
        elif x.kind == "periodic":
            # x in sigma^n(U) reads x far to the left once n is large, where x is periodic
            lpre, lper = x.data[2], x.data[3]
            q = len(lper)
            n0 = max(1, max(o + len(w) + len(lpre) + x.shift for o, w in U.cylinders))
            if n0 <= H + 1:
                res = frozenset(n % q for n in range(n0, n0 + q) if sys.contains(sys.image(U, n), x))
                tail = PeriodicTail(n0, q, res)
        return TimeWindowSet(DISCRETE, hits, H, True, tail)
    images, repeat = image_orbit(sys, U, H)
    return _discrete_from_predicate(images, repeat, H, lambda im: sys.contains(im, x))


@lru_cache(maxsize=1 << 16)
def hitting_xV(sys, x, V, H: int = 32) -> TimeWindowSet:
    """``N(x, V) = {t : t(x) in V}``."""
    if H < 1:
        raise InvalidParameter("horizon must be at least 1")
    cat = _category(sys)
    if cat == "continuous":
        return translation_point_hitting(x, V)
    if cat == "word":
        return _word_xV(sys, x, V, H)
    if cat == "product":
        return sys.hitting_xV(x, V, H)
    pts, repeat = point_orbit(sys, x, H)
    return _discrete_from_predicate(pts, repeat, H, lambda p: sys.contains(V, p))


# --------------------------------------------------------------------------

def filter_check(collection, k_max: int = 4, sample: int = 12) -> Verdict:
    """Finite intersection property of a family of hitting sets.

    Every pair is tested; k-wise intersections (k <= ``k_max``) are tested on
    the first ``sample`` sets.  Fails needs a provably empty intersection.
    """
    sets = list(collection)
    if not sets:
        return Verdict.holds(sets=0)
    kinds = {s.kind for s in sets}
    if len(kinds) > 1:
        raise MixedKind(f"mixed time kinds {sorted(kinds)}")
    kind = kinds.pop()
    if kind == DISCRETE and len({s.horizon for s in sets}) > 1:
        raise MixedKind("mixed horizons")
    undecided = None

    def meet(group):
        acc = group[0]
        for s in group[1:]:
            acc = acc.intersect(s)
        return acc

    masks = None
    if kind in (DISCRETE, WORD):
        index = None
        if kind == WORD:
            index = {w: i for i, w in enumerate(sorted(set().union(*(s.hits for s in sets)),
                                                       key=lambda w: (len(w), w)))}
        masks = [hit_mask(s, index) for s in sets]
        for i, j in itertools.combinations(range(len(sets)), 2):
            if masks[i] & masks[j]:
                continue
            inter = sets[i].intersect(sets[j])
            if inter.provably_empty:
                return Verdict.fails(pair=(i, j), sets=(str(sets[i]), str(sets[j])))
            undecided = undecided or (i, j)
    else:
        for i, j in itertools.combinations(range(len(sets)), 2):
            inter = sets[i].intersect(sets[j])
            if inter.hits:
                continue
            if inter.provably_empty:
                return Verdict.fails(pair=(i, j), sets=(str(sets[i]), str(sets[j])))
            undecided = undecided or (i, j)
    head = sets[:sample]
    for k in range(3, k_max + 1):
        for group in itertools.combinations(range(len(head)), k):
            if masks is not None:
                m = -1
                for g in group:
                    m &= masks[g]
                if m:
                    continue
            inter = meet([head[g] for g in group])
            if inter.hits:
                continue
            if inter.provably_empty:
                return Verdict.fails(group=group)
            undecided = undecided or group
    if undecided is not None:
        return Verdict.undetermined(empty_within_horizon=undecided)
    return Verdict.holds(sets=len(sets), k_max=k_max)


def product_identity_audit(sys, U1, V1, U2, V2, H: int) -> Verdict:
    """Compare ``N(U1 x V1, U2 x V2)`` computed on boxes against ``N(U1,U2) n N(V1,V2)``."""
    from .hierarchy import product
    prod = product([sys, sys])
    A, B = Box((U1, V1)), Box((U2, V2))
    direct = _box_hits_direct(prod, A, B, H)
    inter = hitting_UV(sys, U1, U2, H).intersect(hitting_UV(sys, V1, V2, H))
    if inter.kind == DISCRETE:
        inter = inter.extended(H)
        ok = set(direct) == set(inter.hits)
    elif inter.kind == WORD:
        ok = set(direct) == set(inter.hits)
    else:
        ok = direct == inter.hits
    if ok:
        return Verdict.holds(hits=len(inter.hits), intersection=str(inter))
    return Verdict.fails(direct=[str(d) for d in direct], intersection=str(inter))


def _box_hits_direct(prod, A: Box, B: Box, H: int):
    """Hitting set of the box pair by iterating box images, not component hitting sets."""
    comps = prod.components
    cat = _category(comps[0])
    if cat == "continuous":
        pass
        # t works iff it works in every coordinate: intersect the exact component sets
        sets = [translation_hitting(a, b) for a, b in zip(A.factors, B.factors)]
        acc = sets[0]
        for s in sets[1:]:
            acc = acc.intersect(s)
        return acc.hits
    if cat == "word":
        els, _ = comps[0].elements(H)
        out = []
        for el in els:
            if all(c.nonempty(c.intersect(c.image_bounds(el, a)[0], b))
                   for c, a, b in zip(comps, A.factors, B.factors)):
                out.append(el.word)
        return tuple(out)
    if cat == "shift2":
        orbits = [(tuple(c.image(a, n) for n in range(H + 1)), None) for c, a in zip(comps, A.factors)]
    else:
        orbits = [image_orbit(c, a, H) for c, a in zip(comps, A.factors)]
    out = []
    for n in range(1, H + 1):
        if any(n >= len(im) and rep is None for im, rep in orbits):
            break
        cur = [_orbit_image(im, rep, n) for im, rep in orbits]
        if all(c.intersects(r, b) for c, r, b in zip(comps, cur, B.factors)):
            out.append(n)
    return tuple(out)


def product_identity_sweep(sys, eps, H: int) -> Verdict:
    """:func:`product_identity_audit` on every basis quadruple at resolution ``eps``."""
    regions = sys.basis(eps)
    count = 0
    for U1, V1, U2, V2 in itertools.product(regions, repeat=4):
        v = product_identity_audit(sys, U1, V1, U2, V2, H)
        count += 1
        if not v.is_holds:
            return Verdict.fails(quadruple=[str(U1), str(V1), str(U2), str(V2)], detail=v.evidence_str())
    return Verdict.holds(quadruples=count)


def furstenberg_probe(sys, U1, V1, U2, V2, depth: int = 3, H: int = 32,
                      eps=Fraction(1, 8)) -> Verdict:
    """Search basis pairs ``(U3, V3)`` with ``{} != N(U3,V3) <= N(U1,V1) n N(U2,V2)`` within ``H``."""
    if not sys.abelian:
        raise NotAbelianDeclared(f"{sys.label} is not declared abelian")
    target = hitting_UV(sys, U1, V1, H).intersect(hitting_UV(sys, U2, V2, H))
    if target.kind == DISCRETE:
        target = target.extended(H)
    tset = set(target.hits)
    candidates = [(U1, V1), (U2, V2)]
    for d in range(depth):
        regs = sys.basis(Fraction(eps) / 2 ** d)
        candidates.extend((a, b) for a in regs for b in regs)
    tried = 0
    for a, b in candidates:
        tried += 1
        s = hitting_UV(sys, a, b, H)
        hits = set(s.extended(H).hits) if s.kind == DISCRETE else set(s.hits)
        if hits and hits <= tset:
            return Verdict.holds(U3=str(a), V3=str(b), hits=len(hits))
    return Verdict.undetermined(tried=tried, depth=depth)

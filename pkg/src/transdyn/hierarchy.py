"""Product systems, factor maps, preservation checks and the implication-diagram audit."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .core import (
    Box,
    CheckBudget,
    CylinderUnion,
    Interval,
    IntervalUnion,
    ProductPoint,
    ProductSpace,
    SystemHandle,
    Verdict,
    interval_union,
)
from .errors import IncompatibleKinds, InvalidParameter, UnknownName, UnsupportedSpace, VerificationFailed
from .symbolic import full_shift, periodic_point
from .systems_interval import PLMap, doubling, pl_image, pl_preimage, tent
from .timesets import DISCRETE, TimeWindowSet

DIAGONAL, INDEPENDENT = "diagonal", "independent"


@dataclass(frozen=True)
class ProductSystem(SystemHandle):
    """``components`` acting together: the same time on every factor (diagonal) or a tuple of times."""
    components: tuple
    mode: str = DIAGONAL

    def __post_init__(self):
        if self.mode not in (DIAGONAL, INDEPENDENT):
            raise InvalidParameter(f"unknown product mode {self.mode!r}")
        kinds = {c.time_kind for c in self.components}
        if len(kinds) != 1:
            raise IncompatibleKinds(f"mixed acting-time kinds {sorted(kinds)}")
        if self.mode == DIAGONAL and self.time_kind == "words" and len(set(self.components)) != 1:
            # a word names a semigroup element only within one action
            raise IncompatibleKinds("diagonal word products need one common action")

    @property
    def time_kind(self):  # type: ignore[override]
        return self.components[0].time_kind

    @property
    def invertible(self):  # type: ignore[override]
        return all(c.invertible for c in self.components)

    @property
    def abelian(self):  # type: ignore[override]
        return all(c.abelian for c in self.components)

    @property
    def central(self):  # type: ignore[override]
        return all(c.central for c in self.components)

    @property
    def space(self):
        return ProductSpace(tuple(c.space for c in self.components))

    @property
    def label(self):
        sep = "x" if self.mode == DIAGONAL else "*"
        return sep.join(c.label for c in self.components)

    def __str__(self):
        return self.label

    # -- regions
    def basis(self, eps) -> list:
        return [Box(tuple(c)) for c in itertools.product(*(s.basis(eps) for s in self.components))]

    def net(self, eps) -> list:
        return [ProductPoint(tuple(c)) for c in itertools.product(*(s.net(eps) for s in self.components))]

    def whole(self):
        return Box(tuple(c.whole() for c in self.components))

    def empty(self):
        return Box(tuple(c.empty() for c in self.components))

    def is_whole(self, region) -> bool:
        return all(c.is_whole(f) for c, f in zip(self.components, region.factors))

    def nonempty(self, region) -> bool:
        return all(c.nonempty(f) for c, f in zip(self.components, region.factors))

    def intersect(self, a, b):
        return Box(tuple(c.intersect(x, y) for c, x, y in zip(self.components, a.factors, b.factors)))

    def union(self, a, b):
        raise UnsupportedSpace("a union of boxes is not a box")

    def contains(self, region, point) -> Optional[bool]:
        rs = [c.contains(f, p) for c, f, p in zip(self.components, region.factors, point.coords)]
        if any(r is False for r in rs):
            return False
        if any(r is None for r in rs):
            return None
        return True

    # -- dynamics
    def _times(self, t):
        if self.mode == INDEPENDENT:
            if len(t) != len(self.components):
                raise InvalidParameter("independent products take one time per factor")
            return t
        return (t,) * len(self.components)

    def image(self, region, t):
        return Box(tuple(c.image(f, s) for c, f, s in zip(self.components, region.factors, self._times(t))))

    def step(self, point, t):
        return ProductPoint(tuple(c.step(p, s) for c, p, s in zip(self.components, point.coords, self._times(t))))

    def elements(self, L: int):
        return self.components[0].elements(L)

    def image_bounds(self, el, region) -> tuple:
        pairs = [c.image_bounds(el, f) for c, f in zip(self.components, region.factors)]
        return Box(tuple(p[0] for p in pairs)), Box(tuple(p[1] for p in pairs))

    # -- hitting sets: the box identity N(A1 x A2, B1 x B2) = N(A1,B1) n N(A2,B2)
    def _meet(self, sets) -> TimeWindowSet:
        if self.mode == INDEPENDENT:
            raise UnsupportedSpace("independent products have tuple-valued times; use component_hitting")
        acc = sets[0]
        for s in sets[1:]:
            acc = acc.intersect(s)
        if acc.kind == DISCRETE:
            acc = acc.extended(min(s.horizon for s in sets))
        return acc

    def component_hitting(self, U, V, H: int) -> tuple:
        from .hitting import hitting_UV
        return tuple(hitting_UV(c, a, b, H) for c, a, b in zip(self.components, U.factors, V.factors))

    def hitting_UV(self, U, V, H: int) -> TimeWindowSet:
        from .hitting import hitting_UV
        return self._meet([hitting_UV(c, a, b, H) for c, a, b in zip(self.components, U.factors, V.factors)])

    def hitting_Ux(self, U, x, H: int) -> TimeWindowSet:
        from .hitting import hitting_Ux
        return self._meet([hitting_Ux(c, a, p, H) for c, a, p in zip(self.components, U.factors, x.coords)])

    def hitting_xV(self, x, V, H: int) -> TimeWindowSet:
        from .hitting import hitting_xV
        return self._meet([hitting_xV(c, p, b, H) for c, p, b in zip(self.components, x.coords, V.factors)])


def product(systems, mode: str = DIAGONAL) -> SystemHandle:
    """Self- or mixed product; a single system comes back unchanged."""
    systems = tuple(systems)
    if not systems:
        raise InvalidParameter("product of no systems")
    if len(systems) == 1:
        return systems[0]
    return ProductSystem(systems, mode)


# --------------------------------------------------------------------------
# factor maps

@dataclass(frozen=True)
class FactorMap:
    """Semiconjugacy ``phi`` from ``source`` onto ``target`` with ``phi(t x) = t phi(x)``."""
    name: str
    source: SystemHandle
    target: SystemHandle
    description: str
    apply_region: Callable = field(compare=False, repr=False)
    verified: bool = False

    def __str__(self):
        return f"{self.name}:{self.source.label}->{self.target.label}"


def _pl_breaks(f: PLMap, g: PLMap) -> set:
    """Breakpoints of ``g o f``: those of ``f`` and the ``f``-preimages of those of ``g``."""
    pts = set(f.breakpoints)
    for b in g.breakpoints:
        pre = pl_preimage(f, interval_union(f.space.kind, [Interval(b, b, True, True)]))
        for part in pre.parts:
            pts.update({part.lo, part.hi})
    if f.mod_one:
        # the reduction mod 1 adds a break wherever the lift crosses an integer
        pre = pl_preimage(f, interval_union("circle", [Interval(Fraction(0), Fraction(0), True, True)]))
        for part in pre.parts:
            pts.update({part.lo, part.hi})
    return {p for p in pts if 0 <= p <= 1}


def _pl_identity(f: PLMap, phi: PLMap, g: PLMap) -> Optional[Fraction]:
    """First point where ``g(phi(x)) != phi(f(x))``; both sides are piecewise linear, so
    agreement on the joint breakpoints and one interior point of each gap is agreement everywhere."""
    pts = sorted(_pl_breaks(phi, g) | _pl_breaks(f, phi))
    probes = pts + [(a + b) / 2 for a, b in zip(pts, pts[1:])]
    for x in probes:
        if g(phi(x)) != phi(f(x)):
            return x
    return None


def _doubling_to_tent() -> FactorMap:
    src, tgt = doubling(), tent()
    phi = PLMap((0, Fraction(1, 2), 1), (0, 1, 0), name="fold")
    bad = _pl_identity(src, phi, tgt)
    if bad is not None:
        raise VerificationFailed(f"tent(phi(x)) != phi(doubling(x)) at x={bad}")
    if pl_image(phi, interval_union("interval", [Interval(Fraction(0), Fraction(1), True, True)]), 1) \
            != tgt.whole():
        raise VerificationFailed("fold is not onto")

    def apply_region(r: IntervalUnion) -> IntervalUnion:
        return pl_image(phi, interval_union("interval", r.parts), 1)
    return FactorMap("doubling_to_tent", src, tgt, "phi(x)=2x on [0,1/2], 2(1-x) on [1/2,1]",
                     apply_region, True)


def _restrict(r: CylinderUnion) -> CylinderUnion:
    """Coordinate restriction of a two-sided cylinder union to coordinates >= 0."""
    from .core import cylinder_union, ShiftSpace
    out = []
    for off, w in r.cylinders:
        if not w:
            out.append((0, ()))
            continue
        cut = max(0, -off)
        rest = w[cut:]
        if not rest or all(s is None for s in rest):
            out.append((0, ()))
        else:
            out.append((max(off, 0), rest))
    return cylinder_union(ShiftSpace(r.alphabet, False), out)


def _twosided_to_onesided(max_len: int = 4) -> FactorMap:
    src, tgt = full_shift(2, two_sided=True, name="full2_two"), full_shift(2, name="full2_one")
    from .core import cylinder_union
    for length in range(1, max_len + 1):
        for off in range(-length, length + 1):
            for w in itertools.product(range(2), repeat=length):
                c = cylinder_union(src.space, [(off, w)])
                if _restrict(src.image(c, 1)) != tgt.image(_restrict(c), 1):
                    raise VerificationFailed(f"restriction does not commute on {c}")
    for w in itertools.product(range(2), repeat=3):
        x = periodic_point(w, True)
        y = periodic_point(w, False)
        if x.shifted(1).window(0, 8) != y.shifted(1).window(0, 8):
            raise VerificationFailed(f"restriction does not commute at {w}")
    return FactorMap("twosided_to_onesided_shift", src, tgt, "x -> (x_n)_{n>=0}", _restrict, True)


def identity_factor(sys: SystemHandle) -> FactorMap:
    return FactorMap(f"identity({sys.label})", sys, sys, "x -> x", lambda r: r, True)


FACTORS = ("doubling_to_tent", "twosided_to_onesided_shift", "identity")


def builtin_factor(name: str) -> FactorMap:
    if name == "doubling_to_tent":
        return _doubling_to_tent()
    if name == "twosided_to_onesided_shift":
        return _twosided_to_onesided()
    if name == "identity":
        return identity_factor(tent())
    raise UnknownName(name)


def verify_preservation(fm: FactorMap, prop: str, b: CheckBudget = CheckBudget()) -> Verdict:
    """Holds unless the property Holds on the source and Fails on the factor."""
    from .properties import check
    if not fm.verified:
        raise VerificationFailed(f"{fm.name} is not verified")
    src = check(prop, fm.source, b)
    tgt = check(prop, fm.target, b)
    ev = dict(source=src.status, target=tgt.status)
    if src.is_holds and tgt.is_fails:
        return Verdict.fails(b, **ev, witness=tgt.evidence_str())
    if not src.is_holds:
        return Verdict.holds(b, notes=("vacuous",), **ev)
    return Verdict.holds(b, **ev)


# --------------------------------------------------------------------------
# the implication diagram

EDGES = (
    ("leo", "mixing"), ("leo", "vst"), ("leo", "spt"),
    ("mixing", "weak_mixing"), ("spt", "weak_mixing"), ("weak_mixing", "transitive"),
    ("vst", "strongly_transitive"), ("strongly_transitive", "transitive"),
    ("minimal", "transitive"),
)
CONDITIONAL_EDGES = (("minimal", "vst"),)  # only for abelian, central systems


def implied_pairs(edges) -> tuple:
    """Transitive closure of an edge list, sorted."""
    succ = {}
    for a, c in edges:
        succ.setdefault(a, set()).add(c)
    out = set()
    for start in succ:
        stack, seen = list(succ[start]), set()
        while stack:
            c = stack.pop()
            if c not in seen:
                seen.add(c)
                stack.extend(succ.get(c, ()))
        out.update((start, c) for c in seen if c != start)
    return tuple(sorted(out))


@dataclass
class VerdictTable:
    """Rows are systems, columns properties; each cell keeps its budget."""
    rows: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)

    def add(self, system: str, prop: str, verdict: Verdict, abelian: bool = False, central: bool = False):
        self.rows.setdefault(system, {})[prop] = verdict
        self.flags.setdefault(system, (abelian, central))

    def cell(self, system: str, prop: str) -> Optional[Verdict]:
        return self.rows.get(system, {}).get(prop)


@dataclass(frozen=True)
class Violation:
    system: str
    antecedent: str
    consequent: str

    def __str__(self):
        return f"{self.system}: {self.antecedent} Holds but {self.consequent} Fails"


def implication_audit(vt: VerdictTable) -> list:
    """Violations (antecedent Holds, consequent Fails); Undetermined cells are never evidence."""
    out = []
    for system in sorted(vt.rows):
        abelian, central = vt.flags.get(system, (False, False))
        edges = EDGES + (CONDITIONAL_EDGES if abelian and central else ())
        for a, c in implied_pairs(edges):
            va, vc = vt.cell(system, a), vt.cell(system, c)
            if va is not None and vc is not None and va.is_holds and vc.is_fails:
                out.append(Violation(system, a, c))
    return out

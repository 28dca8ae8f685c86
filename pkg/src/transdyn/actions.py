"""Finitely generated semigroup actions: orbits, backward orbits and eps-density."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import (
    Circle,
    CirclePoint,
    FinitePoint,
    FiniteSet,
    Interval,
    IntervalPoint,
    IntervalUnion,
    SequenceSpace,
    SystemHandle,
    Verdict,
    basis,
    empty_region,
    fmt_value,
    interval_union,
    point_error,
    region_contains,
    whole_region,
)
from .errors import (
    ErrorBudgetExceeded,
    InvalidParameter,
    SpaceMismatch,
    UnknownName,
    UnsupportedGenerator,
)
from .systems_interval import PLMap, pl_image, pl_preimage

ELEMENT_CAP = 200_000


@dataclass(frozen=True)
class GeneratorMap:
    """One generator.

    ``kind``: ``pl`` (``pl`` map), ``constant`` (``target`` point),
    ``multiply`` (``x -> factor * x`` mod 1), ``rotation`` / ``inverse_rotation``
    (``x -> x +- angle`` mod 1, ``angle`` a rational approximation within ``delta``).
    """
    kind: str
    name: str
    pl: Optional[PLMap] = None
    target: object = None
    factor: int = 1
    angle: Fraction = Fraction(0)
    delta: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind not in ("pl", "constant", "multiply", "rotation", "inverse_rotation"):
            raise InvalidParameter(f"unknown generator kind {self.kind!r}")
        if self.delta < 0:
            raise InvalidParameter("delta must be nonnegative")
        if self.kind == "pl" and self.pl is None:
            raise InvalidParameter("pl generator needs a map")
        if self.kind == "multiply" and self.factor < 1:
            raise InvalidParameter("multiplier must be a positive integer")

    @property
    def affine(self) -> bool:
        return self.kind in ("multiply", "rotation", "inverse_rotation")

    @property
    def lipschitz(self) -> Fraction:
        if self.kind == "multiply":
            return Fraction(self.factor)
        if self.kind == "pl":
            return self.pl.lipschitz()
        if self.kind == "constant":
            return Fraction(0)
        return Fraction(1)

    def __str__(self):
        return self.name


def constant(target, name: str = "") -> GeneratorMap:
    return GeneratorMap("constant", name or f"f{target}", target=target)


def multiply(m: int, name: str = "") -> GeneratorMap:
    return GeneratorMap("multiply", name or f"x{m}", factor=m)


def rotation_gen(angle, delta=Fraction(0), inverse: bool = False, name: str = "") -> GeneratorMap:
    return GeneratorMap("inverse_rotation" if inverse else "rotation",
                        name or ("mu-" if inverse else "mu"), angle=Fraction(angle), delta=Fraction(delta))


def pl_gen(f: PLMap, name: str = "") -> GeneratorMap:
    return GeneratorMap("pl", name or f.name, pl=f)


# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Element:
    """A semigroup element: its normal form plus the shortlex-least word reaching it."""
    nf: tuple
    word: tuple

    def __str__(self):
        return "".join(str(i) for i in self.word) if len(self.word) < 40 else f"<{len(self.word)} letters>"


@dataclass(frozen=True)
class SemigroupAction(SystemHandle):
    """Action of the semigroup generated by ``generators`` on ``space``.

    Words apply left to right: ``act((a, b), x) = b(a(x))``.  ``abelian`` is
    declared and spot-checked on a grid at construction.
    """
    space_: object
    generators: tuple
    abelian_declared: bool = False
    name: str = "action"
    time_kind = "words"

    def __post_init__(self):
        if not self.generators:
            raise InvalidParameter("need at least one generator")
        kind = self.space_.kind
        for g in self.generators:
            if g.kind == "constant":
                if kind == "finite":
                    if not isinstance(g.target, int) or not 0 <= g.target < self.space_.size:
                        raise InvalidParameter(f"constant target {g.target} outside the space")
                elif kind not in ("interval", "circle"):
                    raise SpaceMismatch("constants on finite, interval or circle spaces")
            elif g.affine and kind != "circle":
                raise SpaceMismatch(f"{g.kind} generator needs the circle")
            elif g.kind == "pl" and g.pl.space.kind != kind:
                raise SpaceMismatch("pl generator on the wrong space")
        rots = {g.angle for g in self.generators if g.kind in ("rotation", "inverse_rotation")}
        if len(rots) > 1:
            raise InvalidParameter("rotation generators must share one angle")
        if self.abelian_declared and not self._spot_abelian():
            raise InvalidParameter(f"{self.name}: declared abelian but generators do not commute")

    # -- handle interface
    @property
    def space(self):
        return self.space_

    @property
    def label(self):
        return self.name

    @property
    def kind_tag(self) -> str:
        return "action"

    @property
    def abelian(self):  # type: ignore[override]
        return self.abelian_declared

    @property
    def central(self):  # type: ignore[override]
        return all(self.generator_surjective(g) for g in self.generators)

    @property
    def invertible(self):  # type: ignore[override]
        return False

    @property
    def angle(self) -> Fraction:
        for g in self.generators:
            if g.kind in ("rotation", "inverse_rotation"):
                return g.angle
        return Fraction(0)

    @property
    def delta(self) -> Fraction:
        return max((g.delta for g in self.generators), default=Fraction(0))

    @property
    def all_constant(self) -> bool:
        return all(g.kind == "constant" for g in self.generators)

    @property
    def all_affine(self) -> bool:
        return all(g.affine for g in self.generators)

    def generator_surjective(self, g: GeneratorMap) -> bool:
        if g.kind == "constant":
            return self.space_.kind == "finite" and self.space_.size == 1
        if g.affine:
            return True
        return pl_image(g.pl, whole_region(self.space_), 1) == whole_region(self.space_)

    def _spot_abelian(self) -> bool:
        pts = _spot_points(self.space_)
        for i, g in enumerate(self.generators):
            for h in self.generators[i + 1:]:
                for x in pts:
                    a = self._apply_gen(h, self._apply_gen(g, x))
                    b = self._apply_gen(g, self._apply_gen(h, x))
                    if _value(a) != _value(b):
                        return False
        return True

    # -- normal forms
    def normal_form(self, word: tuple) -> tuple:
        if not word:
            raise InvalidParameter("words are nonempty")
        gens = self.generators
        last_const = max((i for i, w in enumerate(word) if gens[w].kind == "constant"), default=None)
        if last_const is not None:
            # constant from that letter on: the element is the constant map to its image
            x = self._point(gens[word[last_const]].target)
            for w in word[last_const + 1:]:
                x = self._apply_gen(gens[w], x)
            return ("const", _value(x))
        if self.all_affine:
            m, k = 1, 0
            for w in word:
                g = gens[w]
                if g.kind == "multiply":
                    m, k = m * g.factor, k * g.factor
                elif g.kind == "rotation":
                    k += 1
                else:
                    k -= 1
            return ("aff", m, k)
        return ("word",) + (tuple(sorted(word)) if self.abelian_declared else tuple(word))

    def elements(self, L: int) -> tuple:
        """``(elements, complete)``: distinct elements reachable by words of length <= L.

        Breadth-first over words in generator order, so each element keeps its
        shortlex-least word.  ``complete`` is True when one more layer adds
        nothing, i.e. the whole semigroup was enumerated.
        """
        return _elements(self, L)

    # -- pointwise action
    def _point(self, target):
        kind = self.space_.kind
        if kind == "finite":
            return FinitePoint(target)
        if kind == "circle":
            return CirclePoint(Fraction(target))
        return IntervalPoint(Fraction(target))

    def _apply_gen(self, g: GeneratorMap, x):
        if g.kind == "constant":
            return self._point(g.target)
        if g.kind == "pl":
            return g.pl.step(x, 1)
        v, e = x.value, x.error
        if g.kind == "multiply":
            return CirclePoint(g.factor * v, g.factor * e)
        sign = 1 if g.kind == "rotation" else -1
        return CirclePoint(v + sign * g.angle, e + g.delta)

    def act(self, word, x):
        """Apply ``word`` letter by letter; error grows as ``lipschitz * err + delta`` per letter."""
        word = tuple(word)
        if not word:
            raise InvalidParameter("words are nonempty")
        self._check_point(x)
        for w in word:
            x = self._apply_gen(self.generators[w], x)
        return x

    def apply(self, el: Element, x):
        """Value of element ``el`` at ``x`` with the error bound of its normal form."""
        nf = el.nf
        if nf[0] == "const":
            return self._point(nf[1])
        if nf[0] == "aff":
            _, m, k = nf
            return CirclePoint(m * x.value + k * self.angle, m * x.error + abs(k) * self.delta)
        return self.act(el.word, x)

    def step(self, point, t):
        if isinstance(t, Element):
            return self.apply(t, point)
        return self.act(t, point)

    def _check_point(self, x):
        kind = self.space_.kind
        ok = (kind == "finite" and isinstance(x, FinitePoint)) or \
             (kind == "circle" and isinstance(x, CirclePoint)) or \
             (kind == "interval" and isinstance(x, IntervalPoint))
        if not ok:
            raise SpaceMismatch(f"{type(x).__name__} on {self.space_}")

    # -- regions
    def image_bounds(self, el: Element, region) -> tuple:
        """``(inner, outer)`` regions with ``inner <= el(region) <= outer``."""
        nf = el.nf
        if nf[0] == "const":
            if self.nonempty(region):
                r = self._point_region(nf[1])
                return r, r
            e = empty_region(self.space_)
            return e, e
        if nf[0] == "aff":
            _, m, k = nf
            c = k * self.angle
            err = abs(k) * self.delta
            exact = _affine_arc_image(region, m, c)
            if err == 0:
                return exact, exact
            return _grow(exact, -err), _grow(exact, err)
        r = region
        for w in el.word:
            g = self.generators[w]
            if g.kind != "pl":
                raise UnsupportedGenerator(f"{g.kind} in a non-affine word action")
            r = pl_image(g.pl, r, 1)
        return r, r

    def image(self, region, t):
        inner, outer = self.image_bounds(t if isinstance(t, Element) else
                                         Element(self.normal_form(tuple(t)), tuple(t)), region)
        if inner != outer:
            raise UnsupportedGenerator("image is only known up to an error bound")
        return inner

    def _point_region(self, value):
        if self.space_.kind == "finite":
            return FiniteSet(self.space_.size, (value,))
        return interval_union(self.space_.kind, [Interval(value, value, True, True)])

    def intersect(self, a, b):
        if isinstance(a, FiniteSet):
            return FiniteSet(a.size, tuple(sorted(set(a.elements) & set(b.elements))))
        return a.intersect(b)

    def fiber(self, el: Element, x) -> object:
        """Exact preimage of point ``x`` under ``el``: a list of points, or ``"all"``."""
        nf = el.nf
        if nf[0] == "const":
            return "all" if _value(x) == nf[1] else []
        if nf[0] == "aff":
            _, m, k = nf
            c = k * self.angle
            err = (x.error + abs(k) * self.delta) / m
            return [CirclePoint((x.value - c + j) / m, err) for j in range(m)]
        pts = [x]
        for w in reversed(el.word):
            g = self.generators[w]
            if g.kind != "pl":
                raise UnsupportedGenerator(f"no exact fibers for {g.kind}")
            nxt = []
            for p in pts:
                r = pl_preimage(g.pl, interval_union(self.space_.kind,
                                                     [Interval(_value(p), _value(p), True, True)]))
                for part in r.parts:
                    if part.lo != part.hi:
                        raise UnsupportedGenerator("fiber contains an interval")
                    nxt.append(self._point(part.lo))
            pts = nxt
        return pts

    def basis(self, eps):
        return basis(self.space_, eps)

    def __str__(self):
        return f"{self.name}<{','.join(map(str, self.generators))}>"


def _value(x):
    if isinstance(x, FinitePoint):
        return x.index
    return x.value


def _spot_points(space) -> list:
    if space.kind == "finite":
        return [FinitePoint(i) for i in range(min(space.size, 8))]
    if space.kind == "circle":
        return [CirclePoint(Fraction(i, 7)) for i in range(7)]
    return [IntervalPoint(Fraction(i, 7)) for i in range(8)]


def _affine_arc_image(region: IntervalUnion, m: int, c: Fraction) -> IntervalUnion:
    out = []
    for p in region.parts:
        if m * (p.hi - p.lo) >= 1:
            return whole_region("circle")
        out.append(Interval(m * p.lo + c, m * p.hi + c, p.lo_closed, p.hi_closed))
    return interval_union("circle", out)


def _grow(region: IntervalUnion, r: Fraction) -> IntervalUnion:
    """Expand (r > 0) or shrink (r < 0) every arc by ``|r|`` on both sides."""
    if region.is_whole():
        return region
    out = []
    for p in _merged_arcs(region):
        out.append(Interval(p.lo - r, p.hi + r, p.lo_closed, p.hi_closed))
    return interval_union("circle", [p for p in out if not p.empty])


def _merged_arcs(region: IntervalUnion) -> list:
    # glue an arc ending at 1 to one starting at 0 so shrinking does not cut at the seam
    parts = list(region.parts)
    if len(parts) >= 2 and parts[0].lo == 0 and parts[0].lo_closed and parts[-1].hi == 1:
        last = parts.pop()
        first = parts.pop(0)
        parts.append(Interval(last.lo, first.hi + 1, last.lo_closed, first.hi_closed))
    return parts


_ELEMENT_CACHE: dict = {}


def _elements(a: SemigroupAction, L: int) -> tuple:
    key = (a, L)
    if key in _ELEMENT_CACHE:
        return _ELEMENT_CACHE[key]
    seen: dict = {}
    order: list = []
    frontier: list = []
    for i in range(len(a.generators)):
        nf = a.normal_form((i,))
        if nf not in seen:
            seen[nf] = (i,)
            order.append(Element(nf, (i,)))
            frontier.append((i,))
    complete = False
    for length in range(2, L + 1):
        nxt = []
        for w in frontier:
            for i in range(len(a.generators)):
                u = w + (i,)
                nf = a.normal_form(u)
                if nf not in seen:
                    seen[nf] = u
                    order.append(Element(nf, u))
                    nxt.append(u)
        frontier = nxt
        if not frontier:
            complete = True
            break
        if len(order) > ELEMENT_CAP:
            raise ErrorBudgetExceeded(f"more than {ELEMENT_CAP} elements by length {length}")
    else:
        # probe one more layer: nothing new means the semigroup is exhausted
        complete = all(a.normal_form(w + (i,)) in seen
                       for w in frontier for i in range(len(a.generators)))
    out = (tuple(order), complete)
    _ELEMENT_CACHE[key] = out
    return out


# --------------------------------------------------------------------------
# interface operations

def act(a: SemigroupAction, word, x):
    return a.act(word, x)


def _dedupe(points) -> list:
    best: dict = {}
    for p in points:
        v = _value(p)
        e = point_error(p)
        if v not in best or e > best[v]:
            best[v] = e
    out = []
    for v in sorted(best):
        if isinstance(points[0], FinitePoint):
            out.append(FinitePoint(v))
        elif isinstance(points[0], CirclePoint):
            out.append(CirclePoint(v, best[v]))
        else:
            out.append(IntervalPoint(v))
    return out


def _check_error(points, eps):
    if eps is None:
        return
    worst = max((point_error(p) for p in points), default=Fraction(0))
    if worst >= Fraction(eps) / 10:
        raise ErrorBudgetExceeded(f"accumulated error {fmt_value(worst)} >= eps/10")


def orbit_set(a: SemigroupAction, x, L: int, eps=None) -> list:
    """``{s(x) : s reached by a word of length <= L}``, deduplicated and sorted."""
    if L < 1:
        raise InvalidParameter("word length must be positive")
    a._check_point(x)
    els, _ = a.elements(L)
    pts = _dedupe([a.apply(el, x) for el in els])
    _check_error(pts, eps)
    return pts


def backward_set(a: SemigroupAction, x, L: int, eps=None) -> list:
    """``{y : s(y) = x for some s of word length <= L}``."""
    if L < 1:
        raise InvalidParameter("word length must be positive")
    a._check_point(x)
    els, _ = a.elements(L)
    pts: list = []
    for el in els:
        f = a.fiber(el, x)
        if f == "all":
            if a.space.kind != "finite":
                raise UnsupportedGenerator("whole-space fiber on a continuum")
            return [FinitePoint(i) for i in range(a.space.size)]
        if f:
            pts.extend(f)
    if not pts:
        return []
    pts = _dedupe(pts)
    _check_error(pts, eps)
    return pts


def eps_dense(points, eps, space=None) -> Verdict:
    """Holds iff every basis region at ``eps`` surely contains one of ``points``."""
    points = list(points)
    if space is None:
        if not points:
            raise InvalidParameter("space needed for an empty point set")
        p = points[0]
        space = Circle() if isinstance(p, CirclePoint) else (
            SequenceSpace(max(q.index for q in points)) if isinstance(p, FinitePoint) else None)
        if space is None:
            from .core import UnitInterval
            space = UnitInterval()
    if any(point_error(p) > Fraction(eps) / 10 for p in points):
        raise ErrorBudgetExceeded("point errors exceed eps/10")
    ambiguous = None
    for region in basis(space, eps):
        hits = [region_contains(region, p) for p in points]
        if any(h is True for h in hits):
            continue
        if any(h is None for h in hits):
            ambiguous = ambiguous or region
            continue
        return Verdict.fails(empty_region=str(region), points=len(points))
    if ambiguous is not None:
        return Verdict.undetermined(ambiguous_region=str(ambiguous))
    return Verdict.holds(points=len(points), regions=len(basis(space, eps)))


def _has_interior(space, region) -> bool:
    if isinstance(region, FiniteSet):
        return any(e >= 1 for e in region.elements)
    return any(p.hi > p.lo for p in region.parts)


def _complement(space, region):
    if isinstance(region, FiniteSet):
        return FiniteSet(region.size, tuple(i for i in range(region.size) if i not in region.elements))
    whole = whole_region(space)
    out = []
    cur_lo, cur_closed = whole.parts[0].lo, whole.parts[0].lo_closed
    for p in region.parts:
        out.append(Interval(cur_lo, p.lo, cur_closed, not p.lo_closed))
        cur_lo, cur_closed = p.hi, not p.hi_closed
    out.append(Interval(cur_lo, whole.parts[-1].hi, cur_closed, whole.parts[-1].hi_closed))
    return interval_union(space.kind, [p for p in out if not p.empty])


def structure_report(a: SemigroupAction, eps=Fraction(1, 8)) -> dict:
    """Central, almost-open and irreducible verdicts for each generator."""
    space = a.space
    whole = whole_region(space)
    report = {}
    bad = [g.name for g in a.generators if not a.generator_surjective(g)]
    report["central"] = (Verdict.fails(not_surjective=bad[0]) if bad
                         else Verdict.holds(generators=len(a.generators)))

    regions = basis(space, eps)
    verdict = Verdict.holds(regions=len(regions), generators=len(a.generators))
    for i, g in enumerate(a.generators):
        el = Element(a.normal_form((i,)), (i,))
        for r in regions:
            inner, _ = a.image_bounds(el, r)
            if not _has_interior(space, inner):
                verdict = Verdict.fails(generator=g.name, region=str(r), image=str(inner))
                break
        if verdict.is_fails:
            break
    report["almost_open"] = verdict

    if bad:
        report["irreducible"] = Verdict.fails(not_surjective=bad[0])
    else:
        verdict = Verdict.holds(tested=len(regions), notes=("at resolution",))
        for i, g in enumerate(a.generators):
            el = Element(a.normal_form((i,)), (i,))
            for r in regions:
                A = _complement(space, r)
                inner, _ = a.image_bounds(el, A)
                if inner == whole:
                    verdict = Verdict.fails(generator=g.name, closed_set=str(A), image=str(inner))
                    break
            if verdict.is_fails:
                break
        report["irreducible"] = verdict
    return report


# --------------------------------------------------------------------------
# built-in actions

GOLDEN = (math.sqrt(5) - 1) / 2


def golden_convergent(min_den: int) -> tuple:
    """``(p/q, delta)``: Fibonacci convergent of (sqrt5 - 1)/2 with ``q >= min_den``, ``delta = 1/q**2``."""
    a, b = 1, 1  # F(n-1), F(n)
    while b < min_den:
        a, b = b, a + b
    # |alpha - F(n-1)/F(n)| < 1/F(n)^2 for Fibonacci convergents of the golden ratio conjugate
    return Fraction(a, b), Fraction(1, b * b)


def pnst(n_max: int = 64) -> SemigroupAction:
    space = SequenceSpace(n_max)
    gens = tuple(constant(i, f"f{i}") for i in range(space.size))
    return SemigroupAction(space, gens, False, "pnst")


def nao_standin(n_max: int = 64) -> SemigroupAction:
    """Constants onto every ``1/n`` but not onto 0, so 0 plays the unreachable point."""
    space = SequenceSpace(n_max)
    gens = tuple(constant(i, f"f{i}") for i in range(1, space.size))
    return SemigroupAction(space, gens, False, "nao_standin")


def dai(wordlen_cap: int = 16, eps_floor=Fraction(1, 64)) -> SemigroupAction:
    """Doubling together with rotation by an approximated irrational angle and its inverse.

    The angle denominator ``q`` satisfies ``q >= 10 L / eps`` and also keeps the
    worst accumulated rotation error (rotations doubled up to ``L`` times) below
    ``eps / 10``.
    """
    L, eps = wordlen_cap, Fraction(eps_floor)
    need = max(math.ceil(10 * L / eps), math.isqrt(math.ceil(10 * L * 2 ** L / eps)) + 1)
    alpha, delta = golden_convergent(need)
    gens = (multiply(2, "tau"), rotation_gen(alpha, delta, name="mu"),
            rotation_gen(alpha, delta, inverse=True, name="mu-"))
    return SemigroupAction(Circle(), gens, False, "dai")


def leo_sampled(factors=(2, 3)) -> SemigroupAction:
    """Multiplication by sampled positive integers on the circle."""
    gens = tuple(multiply(m, f"x{m}") for m in factors)
    return SemigroupAction(Circle(), gens, True, "leo_sampled")


def from_map(f: PLMap) -> SemigroupAction:
    """A single map viewed as a one-generator action (for structure reports)."""
    return SemigroupAction(f.space, (pl_gen(f),), True, f.name)


def builtin(name: str, **kw) -> SemigroupAction:
    table = {"pnst": pnst, "nao_standin": nao_standin, "dai": dai, "leo_sampled": leo_sampled}
    if name not in table:
        raise UnknownName(name)
    return table[name](**kw)

"""Piecewise-linear maps of [0,1] and the circle, and the translation semiflow on [0, inf]."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .core import (
    INF,
    Circle,
    CirclePoint,
    HalfLine,
    Interval,
    IntervalPoint,
    IntervalUnion,
    SystemHandle,
    UnitInterval,
    fmt_value,
    interval_union,
    rational,
)
from .errors import BudgetExceeded, InvalidParameter, SpaceMismatch, UnknownName
from .timesets import TimeWindowSet, continuous_set

PIECE_CAP = 2 ** 16


@dataclass(frozen=True)
class PLMap(SystemHandle):
    """Continuous piecewise-linear self-map interpolating ``values`` at ``breakpoints``.

    With ``mod_one`` the map acts on the circle and ``values`` are a lift:
    the image of ``x`` is the interpolated value reduced mod 1, so doubling is
    breakpoints ``0, 1`` with values ``0, 2``.
    """
    breakpoints: tuple
    values: tuple
    mod_one: bool = False
    name: str = "pl"
    piece_cap: int = field(default=PIECE_CAP, compare=False)

    def __post_init__(self):
        bs = tuple(rational(b) for b in self.breakpoints)
        vs = tuple(rational(v) for v in self.values)
        object.__setattr__(self, "breakpoints", bs)
        object.__setattr__(self, "values", vs)
        if len(bs) < 2 or len(bs) != len(vs):
            raise InvalidParameter("need matching breakpoints and values, at least two of each")
        if bs[0] != 0 or bs[-1] != 1 or any(a >= b for a, b in zip(bs, bs[1:])):
            raise InvalidParameter("breakpoints must increase strictly from 0 to 1")
        if self.mod_one:
            if (vs[-1] - vs[0]).denominator != 1:
                raise InvalidParameter("circle map needs v_0 = v_k mod 1")
        elif any(v < 0 or v > 1 for v in vs):
            raise InvalidParameter("interval map values must lie in [0,1]")

    # -- handle interface
    @property
    def space(self):
        return Circle() if self.mod_one else UnitInterval()

    @property
    def label(self) -> str:
        return self.name

    @property
    def kind_tag(self) -> str:
        return "circle_pl" if self.mod_one else "interval_pl"

    @property
    def degree(self) -> int:
        return int(self.values[-1] - self.values[0]) if self.mod_one else 0

    def pieces(self):
        """``(a, b, va, vb)`` for each linear piece."""
        bs, vs = self.breakpoints, self.values
        return [(bs[i], bs[i + 1], vs[i], vs[i + 1]) for i in range(len(bs) - 1)]

    def lift(self, x: Fraction) -> Fraction:
        """Interpolated value at ``x`` in [0,1], before any reduction mod 1."""
        bs, vs = self.breakpoints, self.values
        for i in range(len(bs) - 1):
            if bs[i] <= x <= bs[i + 1]:
                return vs[i] + (vs[i + 1] - vs[i]) * (x - bs[i]) / (bs[i + 1] - bs[i])
        raise InvalidParameter(f"{x} outside [0,1]")

    def _lift_line(self, y: Fraction) -> Fraction:
        # lift F on R: F(y + 1) = F(y) + degree
        if not self.mod_one:
            return self.lift(y)
        k = math.floor(y)
        return self.lift(y - k) + k * self.degree

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        if self.mod_one:
            x -= math.floor(x)
            v = self.lift(x)
            return v - math.floor(v)
        return self.lift(x)

    def lipschitz(self) -> Fraction:
        return max(abs(vb - va) / (b - a) for a, b, va, vb in self.pieces())

    def step(self, point, t: int = 1):
        if self.mod_one:
            if not isinstance(point, CirclePoint):
                raise SpaceMismatch("circle map needs a circle point")
            v, err = point.value, point.error
            lip = self.lipschitz()
            for _ in range(t):
                v, err = self(v), err * lip
            return CirclePoint(v, err)
        if not isinstance(point, IntervalPoint):
            raise SpaceMismatch("interval map needs an interval point")
        v = point.value
        for _ in range(t):
            v = self(v)
        return IntervalPoint(v)

    def image(self, region: IntervalUnion, t: int = 1) -> IntervalUnion:
        return pl_image(self, region, t)

    def preimage(self, region: IntervalUnion, t: int = 1) -> IntervalUnion:
        for _ in range(t):
            region = pl_preimage(self, region)
        return region

    def periodic_points(self, max_period: int = 4) -> list:
        """``(point, period)`` for exact periodic points of least period up to ``max_period``."""
        seen: dict = {}
        for p in range(1, max_period + 1):
            for x in periodic_solutions(self, p):
                if all(x not in pts for pts in seen.values()):
                    seen.setdefault(p, []).append(x)
        out = []
        for p in sorted(seen):
            for x in sorted(set(seen[p])):
                out.append((CirclePoint(x) if self.mod_one else IntervalPoint(x), p))
        return out

    def __str__(self):
        bs = ",".join(fmt_value(b) for b in self.breakpoints)
        vs = ",".join(fmt_value(v) for v in self.values)
        return f"{self.name}[{bs}->{vs}{' mod1' if self.mod_one else ''}]"


def _affine_image(iv: Interval, a, b, va, vb) -> Optional[Interval]:
    sub = iv.intersect(Interval(a, b, True, True))
    if sub.empty:
        return None
    s = (vb - va) / (b - a)
    if s == 0:
        return Interval(va, va, True, True)
    lo = va + s * (sub.lo - a)
    hi = va + s * (sub.hi - a)
    if s > 0:
        return Interval(lo, hi, sub.lo_closed, sub.hi_closed)
    return Interval(hi, lo, sub.hi_closed, sub.lo_closed)


def _one_step(f: PLMap, r: IntervalUnion) -> IntervalUnion:
    out = []
    for part in r.parts:
        for a, b, va, vb in f.pieces():
            img = _affine_image(part, a, b, va, vb)
            if img is not None:
                out.append(img)
    if f.mod_one:
        # the image of a circle region lives on the circle regardless of lifts
        return interval_union("circle", out)
    return interval_union("interval", out)


def _check_space(f: PLMap, r: IntervalUnion):
    want = "circle" if f.mod_one else "interval"
    if not isinstance(r, IntervalUnion) or r.space != want:
        raise SpaceMismatch(f"{f.name} acts on {want}, got {getattr(r, 'space', type(r).__name__)}")


def pl_image(f: PLMap, r: IntervalUnion, n: int = 1) -> IntervalUnion:
    """Exact ``f^n(r)``; raises :class:`BudgetExceeded` past ``f.piece_cap`` pieces."""
    _check_space(f, r)
    if n < 0:
        raise InvalidParameter("iterate count must be nonnegative")
    for _ in range(n):
        if not r.parts:
            return r
        r = _one_step(f, r)
        if len(r.parts) > f.piece_cap:
            raise BudgetExceeded(f"image has {len(r.parts)} pieces (cap {f.piece_cap})")
    return r


def pl_preimage(f: PLMap, r: IntervalUnion) -> IntervalUnion:
    """Exact ``f^{-1}(r)``."""
    _check_space(f, r)
    out = []
    for a, b, va, vb in f.pieces():
        piece = Interval(a, b, True, True)
        s = (vb - va) / (b - a)
        if s == 0:
            hit = r.contains_value(va - math.floor(va)) if f.mod_one else r.contains_value(va)
            if hit:
                out.append(piece)
            continue
        lo_v, hi_v = min(va, vb), max(va, vb)
        shifts = range(math.floor(lo_v) - 1, math.floor(hi_v) + 1) if f.mod_one else (0,)
        for m in shifts:
            for J in r.parts:
                x1 = a + (J.lo + m - va) / s
                x2 = a + (J.hi + m - va) / s
                cand = (Interval(x1, x2, J.lo_closed, J.hi_closed) if s > 0
                        else Interval(x2, x1, J.hi_closed, J.lo_closed))
                got = cand.intersect(piece)
                if not got.empty:
                    out.append(got)
    return interval_union("circle" if f.mod_one else "interval", out)


def affine_pieces(f: PLMap, p: int) -> list:
    """Pieces ``(a, b, A, B)`` covering [0,1] on which the lift of ``f^p`` is ``A x + B``."""
    cur = []
    for a, b, va, vb in f.pieces():
        A = (vb - va) / (b - a)
        cur.append((a, b, A, va - A * a))
    crit = list(f.breakpoints)
    for _ in range(p - 1):
        nxt = []
        for a, b, A, B in cur:
            cuts = {a, b}
            if A != 0:
                ya, yb = A * a + B, A * b + B
                ylo, yhi = min(ya, yb), max(ya, yb)
                ms = range(math.floor(ylo) - 1, math.floor(yhi) + 1) if f.mod_one else (0,)
                for m in ms:
                    for c in crit:
                        y = c + m
                        if ylo < y < yhi:
                            cuts.add((y - B) / A)
            xs = sorted(cuts)
            for x1, x2 in zip(xs, xs[1:]):
                y1, y2 = f._lift_line(A * x1 + B), f._lift_line(A * x2 + B)
                A2 = (y2 - y1) / (x2 - x1)
                nxt.append((x1, x2, A2, y1 - A2 * x1))
        cur = nxt
        if len(cur) > f.piece_cap:
            raise BudgetExceeded("too many pieces composing iterates")
    return cur


def periodic_solutions(f: PLMap, p: int) -> list:
    """Exact solutions of ``f^p(x) = x`` (mod 1 on the circle); one representative per flat run."""
    out = set()
    for a, b, A, B in affine_pieces(f, p):
        if A == 1:
            if f.mod_one and B.denominator == 1 or not f.mod_one and B == 0:
                out.add(a)
            continue
        ya, yb = A * a + B - a, A * b + B - b
        ms = range(math.ceil(min(ya, yb)), math.floor(max(ya, yb)) + 1) if f.mod_one else (0,)
        for m in ms:
            x = (m - B) / (A - 1)
            if a <= x <= b:
                out.add(x - math.floor(x) if f.mod_one else x)
    return sorted(out)


# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TranslationSemiflow(SystemHandle):
    """``(t, x) -> t + x`` on ``[0, inf]`` with ``inf`` fixed."""
    time_kind = "continuous"
    name: str = "translation_semiflow"

    @property
    def space(self):
        return HalfLine()

    @property
    def label(self):
        return self.name

    @property
    def kind_tag(self) -> str:
        return "translation"

    def image(self, region: IntervalUnion, t) -> IntervalUnion:
        t = rational(t)
        return interval_union("halfline", [Interval(p.lo + t, p.hi + t, p.lo_closed, p.hi_closed)
                                           for p in region.parts])

    def step(self, point: IntervalPoint, t) -> IntervalPoint:
        return IntervalPoint(point.value + rational(t))

    def periodic_points(self, max_period: int = 1) -> list:
        return [(IntervalPoint(INF), 1)]


def _finite(parts):
    return [p for p in parts if p.lo != INF]


def translation_hitting(U: IntervalUnion, V: IntervalUnion) -> TimeWindowSet:
    """Exact ``{t > 0 : (U + t) n V != {}}``."""
    if U.space != "halfline" or V.space != "halfline":
        raise SpaceMismatch("translation semiflow regions live on [0, inf]")
    out = []
    if U.contains_value(INF) and V.contains_value(INF):
        return continuous_set([Interval(Fraction(0), INF, False, False)])
    for a in U.parts:
        for c in V.parts:
            # t in (c - a): lower end c.lo - a.hi, upper end c.hi - a.lo
            if a.lo == INF or c.lo == INF:
                continue  # the point at infinity only meets itself, handled above
            lo = c.lo - a.hi if a.hi != INF else -INF
            hi = c.hi - a.lo
            if lo == -INF:
                lo, lc = Fraction(0), True
            else:
                lc = a.hi_closed and c.lo_closed
            hc = a.lo_closed and c.hi_closed
            if c.hi == INF:
                # the finite part of V is unbounded above: every large shift lands in it
                hi, hc = INF, False
            out.append(Interval(lo, hi, lc, hc))
    return continuous_set(out)


def translation_point_hitting(x, V: IntervalUnion) -> TimeWindowSet:
    """Exact ``N(x, V) = {t > 0 : x + t in V}``."""
    v = x.value if isinstance(x, IntervalPoint) else rational(x)
    if v == INF:
        return continuous_set([Interval(Fraction(0), INF)] if V.contains_value(INF) else [])
    return continuous_set([Interval(p.lo - v, p.hi - v, p.lo_closed, p.hi_closed if p.hi != INF else False)
                           for p in V.parts])


def translation_region_point_hitting(U: IntervalUnion, x) -> TimeWindowSet:
    """Exact ``N(U, x) = {t > 0 : x in U + t}``."""
    v = x.value if isinstance(x, IntervalPoint) else rational(x)
    if v == INF:
        return continuous_set([Interval(Fraction(0), INF)] if U.contains_value(INF) else [])
    return continuous_set([Interval(v - p.hi, v - p.lo, p.hi_closed, p.lo_closed)
                           for p in _finite(U.parts) if p.hi != INF] +
                          [Interval(Fraction(0), v - p.lo, False, p.lo_closed)
                           for p in _finite(U.parts) if p.hi == INF])


# --------------------------------------------------------------------------

F = Fraction


def tent() -> PLMap:
    return PLMap((0, F(1, 2), 1), (0, 1, 0), name="tent")


def doubling() -> PLMap:
    return PLMap((0, 1), (0, 2), mod_one=True, name="doubling")


def rotation(alpha) -> PLMap:
    a = rational(alpha)
    return PLMap((0, 1), (a, a + 1), mod_one=True, name=f"rotation({fmt_value(a)})")


def swap_f() -> PLMap:
    # third piece is 1 - x rather than x - 1/2 so the map is continuous at 1/2
    return PLMap((0, F(1, 4), F(1, 2), 1), (F(1, 2), 1, F(1, 2), 0), name="swap_F")


BUILTINS = ("tent", "doubling", "rotation(p/q)", "swap_F", "translation_semiflow")


def builtin(name: str) -> SystemHandle:
    name = name.strip()
    if name == "tent":
        return tent()
    if name == "doubling":
        return doubling()
    if name == "swap_F":
        return swap_f()
    if name == "translation_semiflow":
        return TranslationSemiflow()
    if name.startswith("rotation(") and name.endswith(")"):
        try:
            return rotation(name[len("rotation("):-1])
        except Exception as exc:
            raise InvalidParameter(f"bad rotation angle in {name!r}") from exc
    raise UnknownName(name)


def pl_power(f: PLMap, p: int) -> PLMap:
    """``f^p`` as a PL map in its own right."""
    if p < 1:
        raise InvalidParameter("power must be positive")
    pieces = affine_pieces(f, p)
    bs = [pieces[0][0]] + [b for _, b, _, _ in pieces]
    vs = [A * pieces[0][0] + B for _, _, A, B in pieces[:1]] + [A * b + B for _, b, A, B in pieces]
    if not f.mod_one:
        return PLMap(tuple(bs), tuple(vs), False, f"{f.name}^{p}")
    # keep a continuous lift: shift each value by whole turns to follow the previous one
    lift = [vs[0]]
    for (a, b, A, B) in pieces:
        lift.append(lift[-1] + A * (b - a))
    return PLMap(tuple(bs), tuple(lift), True, f"{f.name}^{p}")

"""Exact phase-space geometry, verdicts and the system interface.

Every value here is immutable.  Rationals are :class:`fractions.Fraction`;
the point at infinity of the half-line ``[0, inf]`` is ``math.inf``, which
compares correctly against fractions and is fixed under addition.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Optional, Sequence, Union

from .errors import (
    BadRational,
    CapExceeded,
    InvalidParameter,
    MixedVariant,
    SpaceMismatch,
    UnsupportedSpace,
)

Rational = Fraction
INF = math.inf
Value = Union[Fraction, float]  # float only ever means INF

__all__ = [
    "Rational", "INF", "rational", "fmt_value",
    "UnitInterval", "Circle", "HalfLine", "ShiftSpace", "SequenceSpace", "ProductSpace",
    "Interval", "IntervalUnion", "CylinderUnion", "FiniteSet", "Box", "Region",
    "IntervalPoint", "CirclePoint", "FinitePoint", "ProductPoint",
    "normalize_region", "region_contains", "basis", "net", "is_empty",
    "Status", "Verdict", "CheckBudget", "SystemHandle",
]


def rational(text: Any) -> Value:
    """Parse ``"3/4"``, ``"0.25"``, ``"inf"``, ints or Fractions into an exact value."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise BadRational(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        if math.isinf(text) and text > 0:
            return INF
        return Fraction(text)
    s = str(text).strip()
    if s in ("inf", "oo", "∞"):
        return INF
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            if int(den) == 0:
                raise BadRational(f"zero denominator in {s!r}")
            return Fraction(int(num), int(den))
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise BadRational(f"not a rational: {s!r}") from exc


def fmt_value(v: Value) -> str:
    if v == INF:
        return "inf"
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


# --------------------------------------------------------------------------
# spaces

@dataclass(frozen=True)
class UnitInterval:
    kind = "interval"

    def __str__(self):
        return "[0,1]"


@dataclass(frozen=True)
class Circle:
    kind = "circle"

    def __str__(self):
        return "T"


@dataclass(frozen=True)
class HalfLine:
    """``[0, inf]``, metrised through ``x -> x / (1 + x)`` onto ``[0, 1]``."""
    kind = "halfline"

    def __str__(self):
        return "[0,inf]"


@dataclass(frozen=True)
class ShiftSpace:
    alphabet: int
    two_sided: bool = False
    kind = "shift"

    def __post_init__(self):
        if self.alphabet < 2:
            raise InvalidParameter("alphabet needs at least two symbols")

    def __str__(self):
        return f"{self.alphabet}^{'Z' if self.two_sided else 'N'}"


@dataclass(frozen=True)
class SequenceSpace:
    """``{1/n : 1 <= n <= n_max} u {0}`` with element ``n`` meaning ``1/n`` and 0 meaning 0.

    Stand-in for the compact countable space ``{1/n} u {0}``.
    """
    n_max: int = 64
    kind = "finite"

    def __post_init__(self):
        if self.n_max < 1:
            raise InvalidParameter("n_max must be positive")

    @property
    def size(self) -> int:
        return self.n_max + 1

    @staticmethod
    def value(index: int) -> Fraction:
        return Fraction(0) if index == 0 else Fraction(1, index)

    def __str__(self):
        return f"{{1/n}}u{{0}}[n<={self.n_max}]"


@dataclass(frozen=True)
class ProductSpace:
    factors: tuple
    kind = "product"

    def __str__(self):
        return "x".join(str(f) for f in self.factors)


# --------------------------------------------------------------------------
# regions

@dataclass(frozen=True)
class Interval:
    lo: Value
    hi: Value
    lo_closed: bool = False
    hi_closed: bool = False

    @property
    def empty(self) -> bool:
        return self.lo > self.hi or (self.lo == self.hi and not (self.lo_closed and self.hi_closed))

    def contains(self, v: Value) -> bool:
        if v < self.lo or v > self.hi:
            return False
        if v == self.lo and not self.lo_closed:
            return False
        if v == self.hi and not self.hi_closed:
            return False
        return True

    def intersect(self, other: "Interval") -> "Interval":
        if self.lo > other.lo:
            lo, lc = self.lo, self.lo_closed
        elif self.lo < other.lo:
            lo, lc = other.lo, other.lo_closed
        else:
            lo, lc = self.lo, self.lo_closed and other.lo_closed
        if self.hi < other.hi:
            hi, hc = self.hi, self.hi_closed
        elif self.hi > other.hi:
            hi, hc = other.hi, other.hi_closed
        else:
            hi, hc = self.hi, self.hi_closed and other.hi_closed
        return Interval(lo, hi, lc, hc)

    @property
    def length(self) -> Value:
        return self.hi - self.lo

    def __str__(self):
        return (("[" if self.lo_closed else "(") + fmt_value(self.lo) + "," + fmt_value(self.hi)
                + ("]" if self.hi_closed else ")"))


class Region:
    """Marker base class for the region variants."""


@dataclass(frozen=True)
class IntervalUnion(Region):
    space: str  # "interval" | "circle" | "halfline"
    parts: tuple = ()

    def __str__(self):
        return "|".join(str(p) for p in self.parts) if self.parts else "{}"

    @property
    def measure(self) -> Value:
        return sum((p.length for p in self.parts), Fraction(0))

    def contains_value(self, v: Value) -> bool:
        return any(p.contains(v) for p in self.parts)

    def intersect(self, other: "IntervalUnion") -> "IntervalUnion":
        if self.space != other.space:
            raise SpaceMismatch(f"{self.space} vs {other.space}")
        out = []
        for a in self.parts:
            for b in other.parts:
                c = a.intersect(b)
                if not c.empty:
                    out.append(c)
        return _canonical_intervals(self.space, out)

    def union(self, other: "IntervalUnion") -> "IntervalUnion":
        if self.space != other.space:
            raise SpaceMismatch(f"{self.space} vs {other.space}")
        return _canonical_intervals(self.space, list(self.parts) + list(other.parts))

    def is_whole(self) -> bool:
        return self == whole_region(self.space)


@dataclass(frozen=True)
class CylinderUnion(Region):
    """Union of cylinder patterns ``(offset, word)``; ``None`` in a word is a wildcard.

    The empty word at offset 0 is the whole space.
    """
    alphabet: int
    two_sided: bool
    cylinders: tuple = ()

    def __str__(self):
        if not self.cylinders:
            return "{}"
        return "|".join(_fmt_cylinder(o, w) for o, w in self.cylinders)

    @property
    def syntactically_whole(self) -> bool:
        return any(len(w) == 0 for _, w in self.cylinders)

    def window(self) -> tuple[int, int]:
        lo = min(o for o, w in self.cylinders)
        hi = max(o + len(w) for o, w in self.cylinders)
        return lo, hi


@dataclass(frozen=True)
class FiniteSet(Region):
    size: int
    elements: tuple = ()

    def __str__(self):
        # runs of consecutive indices print as a-b
        out, els = [], list(self.elements)
        i = 0
        while i < len(els):
            j = i
            while j + 1 < len(els) and els[j + 1] == els[j] + 1:
                j += 1
            out.append(str(els[i]) if j - i < 2 else f"{els[i]}-{els[j]}")
            if j - i == 1:
                out.append(str(els[j]))
            i = j + 1
        return "{" + ",".join(out) + "}"


@dataclass(frozen=True)
class Box(Region):
    factors: tuple

    def __str__(self):
        return "x".join("(" + str(f) + ")" for f in self.factors)


def _fmt_cylinder(off: int, word: tuple) -> str:
    if not word:
        return "X"
    return "[" + "".join("*" if s is None else str(s) for s in word) + f"]@{off}"


def whole_region(space) -> Region:
    kind = space if isinstance(space, str) else space.kind
    if kind == "interval":
        return IntervalUnion("interval", (Interval(Fraction(0), Fraction(1), True, True),))
    if kind == "circle":
        return IntervalUnion("circle", (Interval(Fraction(0), Fraction(1), True, False),))
    if kind == "halfline":
        return IntervalUnion("halfline", (Interval(Fraction(0), INF, True, True),))
    if kind == "shift":
        return CylinderUnion(space.alphabet, space.two_sided, ((0, ()),))
    if kind == "finite":
        return FiniteSet(space.size, tuple(range(space.size)))
    if kind == "product":
        return Box(tuple(whole_region(f) for f in space.factors))
    raise UnsupportedSpace(str(space))


def empty_region(space) -> Region:
    kind = space if isinstance(space, str) else space.kind
    if kind in ("interval", "circle", "halfline"):
        return IntervalUnion(kind, ())
    if kind == "shift":
        return CylinderUnion(space.alphabet, space.two_sided, ())
    if kind == "finite":
        return FiniteSet(space.size, ())
    if kind == "product":
        return Box(tuple(empty_region(f) for f in space.factors))
    raise UnsupportedSpace(str(space))


def is_empty(r: Region) -> bool:
    """Syntactic emptiness; subshift-level emptiness lives on the subshift."""
    if isinstance(r, IntervalUnion):
        return not r.parts
    if isinstance(r, CylinderUnion):
        return not r.cylinders
    if isinstance(r, FiniteSet):
        return not r.elements
    if isinstance(r, Box):
        return any(is_empty(f) for f in r.factors)
    raise TypeError(type(r))


def _clip(space: str, iv: Interval) -> Optional[Interval]:
    if space == "interval":
        iv = iv.intersect(Interval(Fraction(0), Fraction(1), True, True))
    elif space == "halfline":
        iv = iv.intersect(Interval(Fraction(0), INF, True, True))
    return None if iv.empty else iv


def _circle_pieces(iv: Interval) -> list[Interval]:
    lo, hi = iv.lo, iv.hi
    if hi - lo > 1 or (hi - lo == 1 and (iv.lo_closed or iv.hi_closed)):
        return [Interval(Fraction(0), Fraction(1), True, False)]
    if iv.empty:
        return []
    k = math.floor(lo)
    lo, hi = lo - k, hi - k
    if hi < 1:
        return [Interval(lo, hi, iv.lo_closed, iv.hi_closed)]
    out = [Interval(lo, Fraction(1), iv.lo_closed, False)]
    rest = Interval(Fraction(0), hi - 1, True, iv.hi_closed)
    if not rest.empty:
        out.append(rest)
    return [p for p in out if not p.empty]


def _merge_sorted(parts: list[Interval]) -> list[Interval]:
    parts = sorted(parts, key=lambda p: (p.lo, 0 if p.lo_closed else 1))
    out: list[Interval] = []
    for p in parts:
        if out:
            q = out[-1]
            if p.lo < q.hi or (p.lo == q.hi and (q.hi_closed or p.lo_closed)):
                if p.hi > q.hi:
                    out[-1] = Interval(q.lo, p.hi, q.lo_closed, p.hi_closed)
                elif p.hi == q.hi:
                    out[-1] = Interval(q.lo, q.hi, q.lo_closed, q.hi_closed or p.hi_closed)
                continue
        out.append(p)
    return out


def _canonical_intervals(space: str, parts: Iterable[Interval]) -> IntervalUnion:
    pieces: list[Interval] = []
    for iv in parts:
        if space == "circle":
            pieces.extend(_circle_pieces(iv))
        else:
            c = _clip(space, iv)
            if c is not None:
                pieces.append(c)
    return IntervalUnion(space, tuple(_merge_sorted(pieces)))


def _strip(off: int, word: Sequence) -> tuple[int, tuple]:
    i, j = 0, len(word)
    while i < j and word[i] is None:
        i += 1
    while j > i and word[j - 1] is None:
        j -= 1
    if i == j:
        return 0, ()
    return off + i, tuple(word[i:j])


def _pattern_at(off: int, word: tuple, pos: int):
    i = pos - off
    if 0 <= i < len(word):
        return word[i]
    return None


def pattern_subset(a: tuple[int, tuple], b: tuple[int, tuple]) -> bool:
    """True when cylinder pattern ``a`` is contained (as a set) in ``b``."""
    ob, wb = b
    oa, wa = a
    for i, s in enumerate(wb):
        if s is not None and _pattern_at(oa, wa, ob + i) != s:
            return False
    return True


def merge_patterns(a: tuple[int, tuple], b: tuple[int, tuple]) -> Optional[tuple[int, tuple]]:
    """Intersection of two cylinder patterns, or ``None`` when they conflict."""
    (oa, wa), (ob, wb) = a, b
    if not wa:
        return b
    if not wb:
        return a
    lo = min(oa, ob)
    hi = max(oa + len(wa), ob + len(wb))
    out = []
    for pos in range(lo, hi):
        x, y = _pattern_at(oa, wa, pos), _pattern_at(ob, wb, pos)
        if x is not None and y is not None and x != y:
            return None
        out.append(x if x is not None else y)
    return _strip(lo, out)


def _pattern_key(c):
    off, w = c
    return (off, len(w) == 0, tuple(-1 if s is None else s for s in w))


def _canonical_cylinders(alphabet: int, two_sided: bool, cyls: Iterable) -> CylinderUnion:
    pats = set()
    for off, word in cyls:
        word = tuple(None if s is None else int(s) for s in word)
        if any(s is not None and not (0 <= s < alphabet) for s in word):
            raise InvalidParameter(f"symbol outside alphabet in {word}")
        off, word = _strip(int(off), word)
        if not two_sided and off < 0:
            raise InvalidParameter("one-sided cylinders need offsets >= 0")
        pats.add((off, word))
    changed = True
    while changed:
        changed = False
        # absorption
        ordered = sorted(pats, key=lambda c: (sum(s is not None for s in c[1]), _pattern_key(c)))
        keep: list = []
        for c in ordered:
            if not any(pattern_subset(c, k) for k in keep):
                keep.append(c)
        if len(keep) != len(pats):
            changed = True
        pats = set(keep)
        # sibling merge: all symbols at one position collapse to a wildcard
        groups: dict = {}
        for off, w in pats:
            for i, s in enumerate(w):
                if s is not None:
                    groups.setdefault((off, w[:i] + (None,) + w[i + 1:], i), set()).add(s)
        for (off, holed, i), syms in sorted(groups.items(),
                                            key=lambda kv: (_pattern_key(kv[0][:2]), kv[0][2])):
            if len(syms) == alphabet:
                pats -= {(off, holed[:i] + (s,) + holed[i + 1:]) for s in syms}
                pats.add(_strip(off, holed))
                changed = True
                break
    return CylinderUnion(alphabet, two_sided, tuple(sorted(pats, key=_pattern_key)))


def normalize_region(parts: Iterable, space=None) -> Region:
    """Canonicalise a raw region description.

    ``parts`` is a list of one variant only: ``(lo, hi)`` pairs or
    :class:`Interval` objects (open pairs), ``(offset, word)`` cylinder pairs,
    or integer element indices.  ``space`` defaults to ``[0, 1]``; pass
    :class:`Circle`/:class:`HalfLine`/:class:`ShiftSpace`/:class:`SequenceSpace`
    for the other kinds.
    """
    parts = list(parts)
    variants = set()
    for p in parts:
        if isinstance(p, Interval):
            variants.add("interval")
        elif isinstance(p, (int,)) and not isinstance(p, bool):
            variants.add("finite")
        elif isinstance(p, tuple) and len(p) == 2 and isinstance(p[1], (tuple, list, str)):
            variants.add("cylinder")
        elif isinstance(p, tuple) and len(p) in (2, 4):
            variants.add("interval")
        else:
            raise MixedVariant(f"unrecognised region part {p!r}")
    if len(variants) > 1:
        raise MixedVariant(f"parts mix variants {sorted(variants)}")
    variant = variants.pop() if variants else None

    if space is None:
        space = {"cylinder": None, "finite": None}.get(variant, UnitInterval())
    if variant == "interval" or (variant is None and space.kind in ("interval", "circle", "halfline")):
        if space.kind not in ("interval", "circle", "halfline"):
            raise SpaceMismatch(f"interval parts over {space}")
        ivs = []
        for p in parts:
            if isinstance(p, Interval):
                ivs.append(Interval(rational(p.lo), rational(p.hi), p.lo_closed, p.hi_closed))
            elif len(p) == 2:
                ivs.append(Interval(rational(p[0]), rational(p[1])))
            else:
                ivs.append(Interval(rational(p[0]), rational(p[1]), bool(p[2]), bool(p[3])))
        return _canonical_intervals(space.kind, ivs)
    if variant == "cylinder" or (variant is None and space is not None and space.kind == "shift"):
        cyls = [(int(o), tuple(int(c) if c not in ("*", None) else None for c in w)) for o, w in parts]
        if space is None:
            top = max((s for _, w in cyls for s in w if s is not None), default=1)
            space = ShiftSpace(max(2, top + 1), False)
        if space.kind != "shift":
            raise SpaceMismatch(f"cylinder parts over {space}")
        return _canonical_cylinders(space.alphabet, space.two_sided, cyls)
    if variant == "finite" or (variant is None and space is not None and space.kind == "finite"):
        if space is None:
            space = SequenceSpace(max(parts))
        if space.kind != "finite":
            raise SpaceMismatch(f"finite parts over {space}")
        if any(not (0 <= e < space.size) for e in parts):
            raise InvalidParameter("element index outside space")
        return FiniteSet(space.size, tuple(sorted(set(parts))))
    raise UnsupportedSpace(str(space))


def cylinder_union(space: ShiftSpace, cyls: Iterable) -> CylinderUnion:
    return _canonical_cylinders(space.alphabet, space.two_sided, cyls)


def interval_union(space_kind: str, parts: Iterable[Interval]) -> IntervalUnion:
    return _canonical_intervals(space_kind, parts)


# --------------------------------------------------------------------------
# points

@dataclass(frozen=True)
class IntervalPoint:
    value: Value

    def __str__(self):
        return fmt_value(self.value)


@dataclass(frozen=True)
class CirclePoint:
    """Point of ``R/Z`` given as a rational in ``[0, 1)`` plus a certified error radius."""
    value: Fraction
    error: Fraction = Fraction(0)

    def __post_init__(self):
        v = Fraction(self.value)
        object.__setattr__(self, "value", v - math.floor(v))
        if self.error < 0:
            raise InvalidParameter("error bound must be nonnegative")
        object.__setattr__(self, "error", Fraction(self.error))

    def __str__(self):
        s = fmt_value(self.value)
        return s if self.error == 0 else f"{s}+-{fmt_value(self.error)}"


@dataclass(frozen=True)
class FinitePoint:
    index: int

    def __str__(self):
        return f"#{self.index}"


@dataclass(frozen=True)
class ProductPoint:
    coords: tuple

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def point_error(p) -> Fraction:
    if isinstance(p, CirclePoint):
        return p.error
    if isinstance(p, ProductPoint):
        return max((point_error(c) for c in p.coords), default=Fraction(0))
    return Fraction(0)


def region_contains(r: Region, p) -> Optional[bool]:
    """Membership test; ``None`` when ``p``'s error ball straddles the boundary of ``r``."""
    if isinstance(r, IntervalUnion):
        if isinstance(p, CirclePoint):
            if r.space != "circle":
                raise SpaceMismatch("circle point in non-circle region")
            if p.error == 0:
                return r.contains_value(p.value)
            ball = _canonical_intervals("circle", [Interval(p.value - p.error, p.value + p.error, True, True)])
            inside = ball.intersect(r)
            if inside == ball:
                return True
            if not inside.parts:
                return False
            return None
        if isinstance(p, IntervalPoint):
            if r.space == "circle":
                return r.contains_value(p.value - math.floor(p.value))
            return r.contains_value(p.value)
        raise SpaceMismatch(f"{type(p).__name__} in interval region")
    if isinstance(r, CylinderUnion):
        if not hasattr(p, "window"):
            raise SpaceMismatch(f"{type(p).__name__} in cylinder region")
        if getattr(p, "two_sided", r.two_sided) != r.two_sided:
            raise SpaceMismatch("sidedness mismatch")
        for off, w in r.cylinders:
            if not w:
                return True
            seg = p.window(off, off + len(w))
            if all(s is None or s == t for s, t in zip(w, seg)):
                return True
        return False
    if isinstance(r, FiniteSet):
        if not isinstance(p, FinitePoint):
            raise SpaceMismatch(f"{type(p).__name__} in finite region")
        return p.index in r.elements
    if isinstance(r, Box):
        if not isinstance(p, ProductPoint) or len(p.coords) != len(r.factors):
            raise SpaceMismatch("product point arity")
        results = [region_contains(f, c) for f, c in zip(r.factors, p.coords)]
        if any(x is False for x in results):
            return False
        if any(x is None for x in results):
            return None
        return True
    raise TypeError(type(r))


# --------------------------------------------------------------------------
# bases and nets

def grid_step(eps: Fraction) -> Fraction:
    """Largest ``1/n`` with ``2/n <= eps``; basis intervals have length ``2 * step``."""
    eps = Fraction(eps)
    if eps <= 0:
        raise InvalidParameter("resolution must be positive")
    return Fraction(1, max(2, math.ceil(2 / eps)))


def cylinder_length(eps: Fraction, alphabet: int = 2) -> int:
    eps = Fraction(eps)
    if eps <= 0:
        raise InvalidParameter("resolution must be positive")
    n, size = 0, Fraction(1)
    while size > eps:
        size /= alphabet
        n += 1
    return max(n, 1)


def _to_halfline(y: Fraction) -> Value:
    return INF if y == 1 else y / (1 - y)


BASIS_CAP = 1 << 16


def basis(space, eps) -> list:
    """Finite open cover of ``space`` by nonempty open regions of diameter <= ``eps``.

    Symbolic spaces get every cylinder over the full shift; a subshift filters
    out the empty ones itself.
    """
    eps = Fraction(eps)
    h = grid_step(eps)
    n = int(1 / h)
    kind = space.kind
    if kind != "shift" and n > BASIS_CAP:
        raise CapExceeded(f"basis at resolution {eps} has {n} regions, cap {BASIS_CAP}")
    if kind == "interval":
        out = [Interval(Fraction(0), 2 * h, True, False)]
        out += [Interval(k * h, (k + 2) * h) for k in range(1, n - 2)]
        out.append(Interval(1 - 2 * h, Fraction(1), False, True))
        return [IntervalUnion("interval", (iv,)) for iv in out]
    if kind == "circle":
        return [_canonical_intervals("circle", [Interval(k * h, (k + 2) * h)]) for k in range(n)]
    if kind == "halfline":
        out = [Interval(Fraction(0), _to_halfline(2 * h), True, False)]
        out += [Interval(_to_halfline(k * h), _to_halfline((k + 2) * h)) for k in range(1, n - 2)]
        out.append(Interval(_to_halfline(1 - 2 * h), INF, False, True))
        return [IntervalUnion("halfline", (iv,)) for iv in out]
    if kind == "shift":
        import itertools
        k = cylinder_length(eps, 2)
        if space.two_sided:
            length, off = 2 * k - 1, -(k - 1)
        else:
            length, off = k, 0
        if space.alphabet ** length > BASIS_CAP:
            raise CapExceeded(f"basis at resolution {eps} has {space.alphabet}^{length} cylinders, cap {BASIS_CAP}")
        return [CylinderUnion(space.alphabet, space.two_sided, ((off, w),))
                for w in itertools.product(range(space.alphabet), repeat=length)]
    if kind == "finite":
        m = math.ceil(1 / eps) - 1
        if m >= space.n_max:
            raise UnsupportedSpace(f"resolution {eps} needs n_max > {m}")
        tail = FiniteSet(space.size, tuple([0] + list(range(m + 1, space.size))))
        singles = [FiniteSet(space.size, (i,)) for i in range(m, 0, -1)]
        return [tail] + singles
    if kind == "product":
        import itertools
        return [Box(tuple(c)) for c in itertools.product(*(basis(f, eps) for f in space.factors))]
    raise UnsupportedSpace(str(space))


def net(space, eps) -> list:
    """Deterministic eps-net of exact points for the geometric spaces."""
    h = grid_step(Fraction(eps))
    n = int(1 / h)
    kind = space.kind
    if kind == "interval":
        return [IntervalPoint(k * h) for k in range(n + 1)]
    if kind == "circle":
        return [CirclePoint(k * h) for k in range(n)]
    if kind == "halfline":
        return [IntervalPoint(_to_halfline(k * h)) for k in range(n + 1)]
    if kind == "finite":
        m = math.ceil(1 / Fraction(eps)) - 1
        return [FinitePoint(0)] + [FinitePoint(i) for i in range(min(m + 1, space.n_max), 0, -1)]
    if kind == "product":
        import itertools
        return [ProductPoint(tuple(c)) for c in itertools.product(*(net(f, eps) for f in space.factors))]
    raise UnsupportedSpace(f"no generic net for {space}")


# --------------------------------------------------------------------------
# verdicts and budgets

class Status(str, enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    UNDETERMINED = "Undetermined"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CheckBudget:
    epsilon: Fraction = Fraction(1, 8)
    horizon: int = 32
    order: int = 2
    wordlen: int = 8

    def __post_init__(self):
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        if self.epsilon <= 0 or self.horizon < 1 or self.order < 1 or self.wordlen < 1:
            raise InvalidParameter(f"budget components must be positive: {self}")

    def __str__(self):
        return f"eps={fmt_value(self.epsilon)},H={self.horizon},k={self.order},L={self.wordlen}"

    def scaled(self, factor: int) -> "CheckBudget":
        return CheckBudget(self.epsilon, self.horizon * factor, self.order, self.wordlen)


def _fmt_evidence(v: Any) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_fmt_evidence(x) for x in v) + "]"
    if isinstance(v, Fraction):
        return fmt_value(v)
    if isinstance(v, float) and v == INF:
        return "inf"
    if isinstance(v, Mapping):
        return "{" + ",".join(f"{k}:{_fmt_evidence(x)}" for k, x in v.items()) + "}"
    return str(v)


@dataclass(frozen=True)
class Verdict:
    status: Status
    evidence: Mapping = field(default_factory=dict, compare=False, hash=False)
    budget: Optional[CheckBudget] = None
    notes: tuple = ()

    @classmethod
    def holds(cls, budget=None, notes=(), **evidence) -> "Verdict":
        return cls(Status.HOLDS, evidence, budget, tuple(notes))

    @classmethod
    def fails(cls, budget=None, notes=(), **evidence) -> "Verdict":
        return cls(Status.FAILS, evidence, budget, tuple(notes))

    @classmethod
    def undetermined(cls, budget=None, notes=(), **evidence) -> "Verdict":
        return cls(Status.UNDETERMINED, evidence, budget, tuple(notes))

    @property
    def is_holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def is_fails(self) -> bool:
        return self.status is Status.FAILS

    @property
    def is_undetermined(self) -> bool:
        return self.status is Status.UNDETERMINED

    def evidence_str(self) -> str:
        items = [f"{k}={_fmt_evidence(v)}" for k, v in self.evidence.items()]
        items += [f"note={n}" for n in self.notes]
        return ";".join(items)

    def __str__(self):
        return f"{self.status}({self.evidence_str()})"


# --------------------------------------------------------------------------
# system interface

class SystemHandle:
    """Interface shared by every concrete system kind.

    ``time_kind`` is ``"cascade"`` (times 1, 2, ...), ``"words"`` (semigroup
    elements reached by generator words) or ``"continuous"`` (rational t > 0).
    """
    time_kind = "cascade"
    invertible = False
    abelian = True
    central = True

    @property
    def space(self):
        raise NotImplementedError

    @property
    def label(self) -> str:
        return type(self).__name__

    def basis(self, eps) -> list:
        return basis(self.space, eps)

    def net(self, eps) -> list:
        return net(self.space, eps)

    def whole(self) -> Region:
        return whole_region(self.space)

    def empty(self) -> Region:
        return empty_region(self.space)

    def image(self, region: Region, t) -> Region:
        raise NotImplementedError

    def step(self, point, t):
        raise NotImplementedError

    def is_whole(self, region: Region) -> bool:
        return region == self.whole()

    def nonempty(self, region: Region) -> bool:
        return not is_empty(region)

    def intersect(self, a: Region, b: Region) -> Region:
        if isinstance(a, IntervalUnion):
            return a.intersect(b)
        if isinstance(a, FiniteSet):
            return FiniteSet(a.size, tuple(sorted(set(a.elements) & set(b.elements))))
        raise UnsupportedSpace(type(a).__name__)

    def union(self, a: Region, b: Region) -> Region:
        if isinstance(a, IntervalUnion):
            return a.union(b)
        if isinstance(a, FiniteSet):
            return FiniteSet(a.size, tuple(sorted(set(a.elements) | set(b.elements))))
        raise UnsupportedSpace(type(a).__name__)

    def intersects(self, a: Region, b: Region) -> bool:
        return self.nonempty(self.intersect(a, b))

    def contains(self, region: Region, point) -> Optional[bool]:
        return region_contains(region, point)

    def periodic_points(self) -> list:
        """Exactly known periodic points, used for cheap exact obstructions."""
        return []

"""Observed hitting-time sets and their Furstenberg-family classification."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import kernels
from .core import INF, Interval, fmt_value, interval_union
from .errors import MixedKind

DISCRETE, CONTINUOUS, WORD = "discrete", "continuous", "word"


@dataclass(frozen=True)
class PeriodicTail:
    """For every ``n >= start``: ``n`` is a hit iff ``n % period`` is in ``residues``."""
    start: int
    period: int
    residues: frozenset

    def hit(self, n: int) -> bool:
        return n % self.period in self.residues

    @property
    def full(self) -> bool:
        return len(self.residues) == self.period

    def intersect(self, other: "PeriodicTail") -> "PeriodicTail":
        p = self.period * other.period // math.gcd(self.period, other.period)
        res = frozenset(r for r in range(p) if self.hit(r) and other.hit(r))
        return PeriodicTail(max(self.start, other.start), p, res)

    def __str__(self):
        return f"n>={self.start}:n%{self.period}in{{{','.join(map(str, sorted(self.residues)))}}}"


@dataclass(frozen=True)
class TimeWindowSet:
    """Hitting times seen within ``horizon``.

    ``hits`` holds integers (discrete), :class:`Interval` objects in t
    (continuous) or shortest generator words, one per semigroup element (word).
    ``exact`` means the hits inside the horizon are complete and unambiguous.
    ``tail`` (discrete) extends the set exactly past the horizon; ``complete``
    (word) means every semigroup element was enumerated.
    """
    kind: str
    hits: tuple
    horizon: object
    exact: bool = True
    tail: Optional[PeriodicTail] = None
    ambiguous: int = 0
    complete: bool = False

    def __post_init__(self):
        if self.kind == DISCRETE:
            assert all(1 <= h <= self.horizon for h in self.hits), self.hits

    def __bool__(self):
        return bool(self.hits)

    def __str__(self):
        if self.kind == DISCRETE:
            body = _compress(self.hits)
            if self.tail is not None:
                body += f";tail={self.tail}"
            return body
        if self.kind == CONTINUOUS:
            return "|".join(str(i) for i in self.hits) or "{}"
        return "{" + ",".join("".join(map(str, w)) for w in self.hits) + "}"

    @property
    def mask(self) -> int:
        m = 0
        for h in self.hits:
            m |= 1 << h
        return m

    @property
    def beyond_known(self) -> bool:
        """True when membership of every time, not only those in the window, is settled."""
        if not self.exact:
            return False
        if self.kind == DISCRETE:
            return self.tail is not None
        if self.kind == CONTINUOUS:
            return self.horizon == INF
        return self.complete

    @property
    def provably_empty(self) -> bool:
        if self.hits or not self.beyond_known:
            return False
        return self.kind != DISCRETE or not self.tail.residues

    def contains(self, n: int) -> Optional[bool]:
        if n <= self.horizon:
            return n in set(self.hits)
        if self.tail is not None and n >= self.tail.start:
            return self.tail.hit(n)
        return None

    def extended(self, horizon: int) -> "TimeWindowSet":
        """Discrete set re-windowed to ``horizon`` using the tail where needed."""
        if self.kind != DISCRETE:
            raise MixedKind("only discrete sets extend")
        if horizon <= self.horizon:
            return TimeWindowSet(DISCRETE, tuple(h for h in self.hits if h <= horizon), horizon,
                                 self.exact, self.tail if self.tail and self.tail.start <= horizon + 1 else None,
                                 self.ambiguous)
        if self.tail is None:
            return self
        extra = tuple(n for n in range(self.horizon + 1, horizon + 1) if self.tail.hit(n))
        return TimeWindowSet(DISCRETE, self.hits + extra, horizon, self.exact, self.tail, self.ambiguous)

    def intersect(self, other: "TimeWindowSet") -> "TimeWindowSet":
        if self.kind != other.kind:
            raise MixedKind(f"{self.kind} vs {other.kind}")
        if self.kind == DISCRETE:
            h = max(self.horizon, other.horizon)
            a, b = self.extended(h), other.extended(h)
            if a.horizon != b.horizon:
                h = min(a.horizon, b.horizon)
                a, b = a.extended(h), b.extended(h)
            hits = tuple(sorted(set(a.hits) & set(b.hits)))
            tail = a.tail.intersect(b.tail) if a.tail and b.tail else None
            return TimeWindowSet(DISCRETE, hits, h, a.exact and b.exact, tail, a.ambiguous + b.ambiguous)
        if self.kind == CONTINUOUS:
            u = interval_union("halfline", self.hits).intersect(interval_union("halfline", other.hits))
            return TimeWindowSet(CONTINUOUS, u.parts, min(self.horizon, other.horizon),
                                 self.exact and other.exact)
        common = set(self.hits) & set(other.hits)
        return TimeWindowSet(WORD, tuple(sorted(common, key=lambda w: (len(w), w))),
                             min(self.horizon, other.horizon), self.exact and other.exact,
                             None, self.ambiguous + other.ambiguous, self.complete and other.complete)


def _compress(hits) -> str:
    if not hits:
        return "{}"
    out, start, prev = [], hits[0], hits[0]
    for h in list(hits[1:]) + [None]:
        if h is not None and h == prev + 1:
            prev = h
            continue
        out.append(str(start) if start == prev else f"{start}-{prev}")
        if h is not None:
            start = prev = h
    return "{" + ",".join(out) + "}"


def continuous_set(parts, exact: bool = True) -> TimeWindowSet:
    positive = Interval(Fraction(0), INF, False, False)
    u = interval_union("halfline", [p.intersect(positive) for p in parts])
    return TimeWindowSet(CONTINUOUS, u.parts, INF, exact)


# --------------------------------------------------------------------------

EMPTY, FINITE, SYNDETIC, THICK, COFINITE, UNCLASSIFIED = (
    "empty", "finite", "syndetic", "thick", "cofinite", "unclassified")
_RANK = {UNCLASSIFIED: -1, EMPTY: 0, FINITE: 1, SYNDETIC: 2, THICK: 3, COFINITE: 4}


@dataclass(frozen=True)
class FamilyCertificate:
    cls: str
    gap: Optional[int] = None
    run: Optional[int] = None
    threshold: object = None
    at_horizon: bool = True
    horizon: object = None

    def __str__(self):
        bits = []
        if self.gap is not None:
            bits.append(f"gap={self.gap}")
        if self.run is not None:
            bits.append(f"run={self.run}")
        if self.threshold is not None:
            bits.append(f"threshold={fmt_value(self.threshold) if not isinstance(self.threshold, int) else self.threshold}")
        if self.at_horizon:
            bits.append(f"at_horizon={self.horizon if self.horizon != INF else 'inf'}")
        return f"{self.cls}({','.join(bits)})"

    def at_least(self, cls: str) -> bool:
        return _RANK[self.cls] >= _RANK[cls]


def classify(tws: TimeWindowSet) -> FamilyCertificate:
    """Strongest family class supported by the evidence (cofinite > thick > syndetic)."""
    if tws.kind == CONTINUOUS:
        if not tws.hits:
            return FamilyCertificate(EMPTY, at_horizon=not tws.beyond_known, horizon=tws.horizon)
        last = tws.hits[-1]
        if last.hi == INF:
            return FamilyCertificate(COFINITE, threshold=last.lo, at_horizon=not tws.beyond_known,
                                     horizon=tws.horizon)
        # bounded: the continuous analogue of a finite set
        return FamilyCertificate(FINITE, at_horizon=not tws.beyond_known, horizon=tws.horizon)
    if tws.kind != DISCRETE:
        return FamilyCertificate(UNCLASSIFIED, horizon=tws.horizon)

    H = tws.horizon
    if tws.exact and tws.tail is not None:
        t = tws.tail
        span = max(H, t.start + 2 * t.period)
        ext = tws.extended(span)
        hits = list(ext.hits)
        if t.full:
            misses = [n for n in range(1, span + 1) if n not in set(hits)]
            return FamilyCertificate(COFINITE, threshold=(misses[-1] + 1 if misses else 1),
                                     at_horizon=False, horizon=H)
        if t.residues:
            max_gap, _, _, _ = kernels.gap_stats(hits, span)
            # residue gaps repeat forever; the window already holds two periods past the start
            return FamilyCertificate(SYNDETIC, gap=max_gap, at_horizon=False, horizon=H)
        if hits:
            return FamilyCertificate(FINITE, at_horizon=False, horizon=H)
        return FamilyCertificate(EMPTY, at_horizon=False, horizon=H)

    hits = list(tws.hits)
    if not hits:
        return FamilyCertificate(EMPTY, horizon=H)
    max_gap, trailing, run, threshold = kernels.gap_stats(hits, H)
    if threshold <= H / 2:
        return FamilyCertificate(COFINITE, threshold=threshold, run=run, horizon=H)
    if run >= H / 4:
        return FamilyCertificate(THICK, run=run, horizon=H)
    gap = max(max_gap, trailing)
    if gap <= H / 4:
        return FamilyCertificate(SYNDETIC, gap=gap, horizon=H)
    return FamilyCertificate(FINITE, horizon=H)

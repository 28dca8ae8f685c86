"""Shift spaces: full shifts, SFTs and substitution subshifts with exact cylinder calculus."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from . import kernels
from .core import (
    CylinderUnion,
    ShiftSpace,
    SystemHandle,
    Verdict,
    cylinder_length,
    cylinder_union,
    merge_patterns,
)
from .errors import (
    CapExceeded,
    InvalidParameter,
    MalformedMatrix,
    NotIrreducible,
    SpaceMismatch,
    UnsupportedSpace,
    WordAbsent,
)
from .timesets import (
    EMPTY,
    SYNDETIC,
    UNCLASSIFIED,
    FamilyCertificate,
)

LANGUAGE_CAP = 24
MORSE_RULE = ((0, 1), (1, 0))


# --------------------------------------------------------------------------
# substitution words

def substitute(rule: tuple, word: tuple) -> tuple:
    return tuple(s for a in word for s in rule[a])


@lru_cache(maxsize=64)
def _iterate(rule: tuple, seed: int, k: int) -> bytes:
    w = (seed,)
    for _ in range(k):
        w = substitute(rule, w)
    return bytes(w)


def fixed_point_prefix(rule: tuple, seed: int, length: int) -> bytes:
    """Prefix of the one-sided fixed point ``rule^inf(seed)``."""
    if rule[seed][0] != seed or len(rule[seed]) < 2:
        raise InvalidParameter(f"symbol {seed} does not seed a growing fixed point")
    k = 0
    while len(_iterate(rule, seed, k)) < length:
        k += 1
    return _iterate(rule, seed, k)[:length]


def morse_symbol(n: int) -> int:
    """``x(n)`` of the Morse-Thue fixed point: parity of the binary digit sum."""
    return bin(n).count("1") % 2


def _factors(seq: bytes, length: int) -> frozenset:
    return frozenset(seq[i:i + length] for i in range(len(seq) - length + 1))


@lru_cache(maxsize=256)
def reference_iterate(rule: tuple, seed: int, length: int) -> bytes:
    """Iterate whose length-``length`` factor set equals that of the next iterate.

    Consecutive iterates with identical factor sets is the stabilization rule
    for the language of a primitive substitution.
    """
    k = 0
    while len(_iterate(rule, seed, k)) < max(2 * length, 2):
        k += 1
    while True:
        a, b = _iterate(rule, seed, k), _iterate(rule, seed, k + 1)
        if _factors(a, length) == _factors(b, length):
            return b
        k += 1
        if len(b) > 1 << 24:
            raise CapExceeded(f"factor set of length {length} did not stabilise")


# --------------------------------------------------------------------------
# points

@dataclass(frozen=True)
class SymbolicPoint:
    """Finitely presented sequence.

    ``kind`` is ``periodic`` (``data = (pre, period, left_pre, left_period)``,
    with ``x(-1-j)`` read from the left parts), ``substitution``
    (``data = (rule, seed, mirror)``, mirror giving ``x(-n-1) = x(n)``) or
    ``champernowne`` (``data = ()``: all words in shortlex order).
    ``shift`` applies ``sigma^shift``.
    """
    kind: str
    data: tuple
    two_sided: bool = False
    shift: int = 0
    alphabet: int = 2

    def _base(self, i: int) -> int:
        if self.kind == "periodic":
            pre, per, lpre, lper = self.data
            if i >= 0:
                return pre[i] if i < len(pre) else per[(i - len(pre)) % len(per)]
            j = -i - 1
            return lpre[j] if j < len(lpre) else lper[(j - len(lpre)) % len(lper)]
        if self.kind == "substitution":
            rule, seed, mirror = self.data
            if i < 0:
                i = -i - 1
            if rule == MORSE_RULE and seed == 0:
                return morse_symbol(i)
            return fixed_point_prefix(rule, seed, i + 1)[i]
        if self.kind == "champernowne":
            return _champernowne(self.alphabet, (i + 1).bit_length())[i]
        raise InvalidParameter(self.kind)

    def symbol(self, i: int) -> int:
        j = i + self.shift
        if j < 0 and not self.two_sided:
            raise InvalidParameter("one-sided point has no negative coordinates")
        return self._base(j)

    def window(self, a: int, b: int) -> tuple:
        return tuple(self.symbol(i) for i in range(a, b))

    def shifted(self, n: int) -> "SymbolicPoint":
        return canonical_point(SymbolicPoint(self.kind, self.data, self.two_sided, self.shift + n,
                                             self.alphabet))

    def eventual_period(self) -> Optional[tuple]:
        """``(start, p)``: ``sigma^n`` of this point repeats with period ``p`` from ``n = start``."""
        if self.kind != "periodic":
            return None
        pre, per, lpre, lper = self.data
        p = len(per)
        if not self.two_sided:
            return max(0, len(pre) - self.shift), p
        # two-sided: periodic as a whole bi-infinite word only
        span = len(pre) + len(lpre) + p * len(lper) + p
        lo = -len(lpre) - len(lper) * p - p - self.shift
        ok = all(self.symbol(i) == self.symbol(i + p) for i in range(lo, lo + span + p))
        return (0, p) if ok else None

    def __str__(self):
        w = "".join(map(str, self.window(0, 12) if not self.two_sided else self.window(-6, 6)))
        return f"{self.kind}<{w}...>" if not self.two_sided else f"{self.kind}<...{w[:6]}.{w[6:]}...>"


@lru_cache(maxsize=64)
def _champernowne(alphabet: int, bits: int) -> tuple:
    # prefix of length at least 2**bits
    out: list = []
    n = 1
    while len(out) < 1 << bits:
        for w in itertools.product(range(alphabet), repeat=n):
            out.extend(w)
        n += 1
    return tuple(out)


def canonical_point(p: SymbolicPoint) -> SymbolicPoint:
    ev = p.eventual_period()
    if ev is None:
        return p
    start, per = ev
    if p.two_sided:
        return SymbolicPoint(p.kind, p.data, True, p.shift % per, p.alphabet)
    pre_len = len(p.data[0])
    if p.shift > pre_len:
        s = pre_len + (p.shift - pre_len) % per
        return SymbolicPoint(p.kind, p.data, False, s, p.alphabet)
    return p


def periodic_point(word, two_sided: bool = False, pre=(), alphabet: int = 2) -> SymbolicPoint:
    word = tuple(word)
    if two_sided:
        left = tuple(reversed(word))
        return canonical_point(SymbolicPoint("periodic", (tuple(pre), word, (), left), True, 0, alphabet))
    return SymbolicPoint("periodic", (tuple(pre), word, (), (0,)), False, 0, alphabet)


def morse_point(n: Optional[int] = None, two_sided: bool = True) -> SymbolicPoint:
    """The Morse point ``p``: ``p(n) = x(n)`` for ``n >= 0`` and ``p(-n-1) = x(n)``.

    ``n`` is accepted for symmetry with window-based callers; the returned point
    is the full sequence and ``window(-n, n)`` restricts it.
    """
    if n is not None and n < 1:
        raise InvalidParameter("window radius must be positive")
    return SymbolicPoint("substitution", (MORSE_RULE, 0, True), two_sided, 0, 2)


def champernowne_point(alphabet: int = 2) -> SymbolicPoint:
    return SymbolicPoint("champernowne", (), False, 0, alphabet)


# --------------------------------------------------------------------------
# subshifts

def _check_matrix(m) -> tuple:
    try:
        m = tuple(tuple(int(v) for v in row) for row in m)
    except (TypeError, ValueError) as exc:
        raise MalformedMatrix(str(exc)) from exc
    k = len(m)
    if k == 0 or any(len(row) != k for row in m):
        raise MalformedMatrix("transition matrix must be square and nonempty")
    if any(v not in (0, 1) for row in m for v in row):
        raise MalformedMatrix("entries must be 0 or 1")
    if any(not any(row) for row in m):
        raise MalformedMatrix("zero row")
    if any(not any(m[i][j] for i in range(k)) for j in range(k)):
        raise MalformedMatrix("zero column")
    return m


@dataclass(frozen=True)
class Subshift(SystemHandle):
    """``kind``: ``full`` (alphabet k), ``sft`` (0/1 ``matrix``) or ``substitution`` (``rule``)."""
    kind: str
    alphabet: int
    two_sided: bool = False
    matrix: Optional[tuple] = None
    rule: Optional[tuple] = None
    seed: int = 0
    name: str = ""

    def __post_init__(self):
        if self.kind == "sft":
            m = _check_matrix(self.matrix)
            object.__setattr__(self, "matrix", m)
            object.__setattr__(self, "alphabet", len(m))
        elif self.kind == "substitution":
            rule = tuple(tuple(int(s) for s in w) for w in self.rule)
            if len(rule) != self.alphabet or any(not w for w in rule):
                raise InvalidParameter("substitution needs a nonempty word per symbol")
            if any(not 0 <= s < self.alphabet for w in rule for s in w):
                raise InvalidParameter("substitution word uses an unknown symbol")
            object.__setattr__(self, "rule", rule)
            fixed_point_prefix(rule, self.seed, 2)
        elif self.kind != "full":
            raise InvalidParameter(f"unknown subshift kind {self.kind!r}")
        if self.alphabet < 2:
            raise InvalidParameter("alphabet needs at least two symbols")
        if not self.name:
            object.__setattr__(self, "name", f"{self.kind}{self.alphabet}")

    @property
    def space(self):
        return ShiftSpace(self.alphabet, self.two_sided)

    @property
    def label(self):
        return self.name

    @property
    def kind_tag(self) -> str:
        return f"{self.kind}_{'two' if self.two_sided else 'one'}_sided"

    @property
    def invertible(self):  # type: ignore[override]
        return self.two_sided

    @property
    def sidedness(self) -> str:
        return "two-sided" if self.two_sided else "one-sided"

    @property
    def transitions(self) -> tuple:
        if self.kind == "sft":
            return self.matrix
        if self.kind == "full":
            return tuple(tuple(1 for _ in range(self.alphabet)) for _ in range(self.alphabet))
        # substitution: the two-letter factors
        k = self.alphabet
        f2 = self.factors(2)
        return tuple(tuple(1 if bytes((a, b)) in f2 else 0 for b in range(k)) for a in range(k))

    def primitive(self) -> bool:
        if self.kind == "substitution":
            k = self.alphabet
            ab = [[1 if b in self.rule[a] else 0 for b in range(k)] for a in range(k)]
            return kernels.first_positive_power(ab, (k - 1) ** 2 + 1) > 0
        return kernels.first_positive_power([list(r) for r in self.transitions],
                                            (self.alphabet - 1) ** 2 + 1) > 0

    def primitivity_exponent(self) -> Optional[int]:
        if self.kind == "substitution":
            return None
        n = kernels.first_positive_power([list(r) for r in self.transitions], (self.alphabet - 1) ** 2 + 1)
        return n if n > 0 else None

    # -- language
    def factors(self, length: int) -> frozenset:
        """Length-``length`` words of the substitution language as ``bytes``."""
        return _factors(reference_iterate(self.rule, self.seed, length), length)

    def language(self, L: int) -> set:
        """All words of length ``L`` occurring in the subshift, as tuples."""
        if L < 1:
            raise InvalidParameter("word length must be positive")
        if L > LANGUAGE_CAP:
            raise CapExceeded(f"language length {L} above cap {LANGUAGE_CAP}")
        if self.kind == "substitution":
            return {tuple(w) for w in self.factors(L)}
        if self.kind == "full":
            return set(itertools.product(range(self.alphabet), repeat=L))
        m = self.matrix
        words = [(a,) for a in range(self.alphabet)]
        for _ in range(L - 1):
            words = [w + (b,) for w in words for b in range(self.alphabet) if m[w[-1]][b]]
        return set(words)

    def allowed(self, pattern) -> bool:
        """True when the cylinder pattern ``(offset, word-with-wildcards)`` meets the subshift."""
        off, word = pattern
        if not word:
            return True
        if self.kind == "full":
            return True
        if self.kind == "sft":
            m, k = self.matrix, self.alphabet
            cur = {word[0]} if word[0] is not None else set(range(k))
            for s in word[1:]:
                nxt = {b for a in cur for b in range(k) if m[a][b]}
                cur = nxt if s is None else nxt & {s}
                if not cur:
                    return False
            return True
        ref = reference_iterate(self.rule, self.seed, len(word))
        return bool(kernels.pattern_occurrences(ref, [-1 if s is None else s for s in word]))

    # -- regions
    def region(self, cylinders) -> CylinderUnion:
        r = cylinder_union(self.space, cylinders)
        return self._prune(r)

    def _prune(self, r: CylinderUnion) -> CylinderUnion:
        keep = [c for c in r.cylinders if self.allowed(c)]
        if len(keep) == len(r.cylinders):
            return r
        return cylinder_union(self.space, keep)

    def _check(self, r):
        if not isinstance(r, CylinderUnion) or r.alphabet != self.alphabet or r.two_sided != self.two_sided:
            raise SpaceMismatch(f"region {r} is not over {self.space}")

    def basis(self, eps) -> list:
        from .core import basis as core_basis
        return [b for b in core_basis(self.space, eps) if self.allowed(b.cylinders[0])]

    def nonempty(self, region) -> bool:
        self._check(region)
        return any(self.allowed(c) for c in region.cylinders)

    def intersect(self, a, b) -> CylinderUnion:
        self._check(a)
        self._check(b)
        out = []
        for p in a.cylinders:
            for q in b.cylinders:
                m = merge_patterns(p, q)
                if m is not None and self.allowed(m):
                    out.append(m)
        return cylinder_union(self.space, out)

    def union(self, a, b) -> CylinderUnion:
        return cylinder_union(self.space, list(a.cylinders) + list(b.cylinders))

    def is_whole(self, region) -> bool:
        self._check(region)
        if region.syntactically_whole:
            return True
        if not region.cylinders:
            return False
        lo, hi = region.window()
        if not self.two_sided:
            lo = 0
        for w in self.language(hi - lo):
            if not any(all(s is None or s == w[o - lo + i] for i, s in enumerate(cw))
                       for o, cw in region.cylinders):
                return False
        return True

    def contains(self, region, point) -> Optional[bool]:
        from .core import region_contains
        return region_contains(region, point)

    # -- dynamics
    def _successors(self, s: Optional[int]) -> set:
        t = self.transitions
        if s is None:
            return set(range(self.alphabet))
        return {b for b in range(self.alphabet) if t[s][b]}

    def _step_pattern(self, pattern) -> list:
        off, word = pattern
        if not word:
            return [pattern]
        if self.two_sided or off > 0:
            return [(off - 1, word)]
        if self.kind == "substitution":
            raise UnsupportedSpace("one-sided substitution images are not of finite type")
        reach = self._successors(word[0])
        rest = word[1:]
        if reach == set(range(self.alphabet)):
            return [(0, rest)]
        out = []
        for a in sorted(reach):
            m = merge_patterns((0, (a,)), (0, rest))
            if m is not None:
                out.append(m)
        return out

    def image(self, region, t: int = 1) -> CylinderUnion:
        """Exact ``sigma^t`` of a cylinder union (intersected with the subshift)."""
        self._check(region)
        if t < 0:
            raise InvalidParameter("negative time")
        if self.two_sided:
            return self._prune(cylinder_union(self.space, [(o - t, w) if w else (o, w)
                                                           for o, w in region.cylinders]))
        for _ in range(t):
            if not region.cylinders or region.syntactically_whole:
                return region
            region = self._prune(cylinder_union(
                self.space, [q for c in region.cylinders for q in self._step_pattern(c)]))
        return region

    def preimage(self, region, t: int = 1) -> CylinderUnion:
        self._check(region)
        return self._prune(cylinder_union(self.space, [(o + t, w) if w else (o, w)
                                                       for o, w in region.cylinders]))

    def step(self, point: SymbolicPoint, t: int = 1) -> SymbolicPoint:
        if point.two_sided != self.two_sided:
            raise SpaceMismatch("sidedness mismatch")
        return point.shifted(t)

    def net(self, eps) -> list:
        """One point in every basis cylinder, in basis order."""
        out = []
        for b in self.basis(eps):
            off, word = b.cylinders[0]
            out.append(self.point_in(off, word))
        return out

    def point_in(self, off: int, word: tuple) -> SymbolicPoint:
        """A finitely presented point of the subshift lying in cylinder ``[word]@off``."""
        if not self.allowed((off, word)):
            raise WordAbsent(f"{word} does not occur")
        if self.kind == "substitution":
            ref = reference_iterate(self.rule, self.seed, len(word))
            q = kernels.pattern_occurrences(ref, [-1 if c is None else c for c in word])[0]
            base = SymbolicPoint("substitution", (self.rule, self.seed, self.two_sided),
                                 self.two_sided, 0, self.alphabet)
            return SymbolicPoint(base.kind, base.data, self.two_sided, q - off, self.alphabet)
        t = self.transitions
        k = self.alphabet

        def chain(start, nxt):
            # follow the smallest neighbour until a symbol repeats: (tail, cycle)
            seq, pos = [start], {start: 0}
            while True:
                s = nxt(seq[-1])
                if s in pos:
                    return tuple(seq[1:pos[s]]), tuple(seq[pos[s]:])
                pos[s] = len(seq)
                seq.append(s)

        fill = self._fill(word)
        succ = lambda a: min(b for b in range(k) if t[a][b])
        pred = lambda b: min(a for a in range(k) if t[a][b])
        tail, cycle = chain(fill[-1], succ)
        right = tuple(fill) + tail
        if self.two_sided:
            ltail, lcycle = chain(fill[0], pred)
            return canonical_point(SymbolicPoint("periodic", (right, cycle, ltail, lcycle), True, -off, k))
        lead = []
        for _ in range(off):
            lead.append(pred(lead[-1] if lead else fill[0]))
        return SymbolicPoint("periodic", (tuple(reversed(lead)) + right, cycle, (), (0,)), False, 0, k)

    def periodic_points(self, max_period: int = 2) -> list:
        """``(point, least period)`` for every cycle of length <= ``max_period`` (full shifts and SFTs)."""
        if self.kind == "substitution":
            return []
        t, k = self.transitions, self.alphabet
        out = []
        for p in range(1, max_period + 1):
            for w in itertools.product(range(k), repeat=p):
                rots = [w[i:] + w[:i] for i in range(p)]
                if w != min(rots) or len(set(rots)) < p:
                    continue
                if all(t[w[i]][w[(i + 1) % p]] for i in range(p)):
                    out.append((periodic_point(w, self.two_sided, alphabet=k), p))
        return out

    def _fill(self, word) -> list:
        """Smallest allowed word matching a wildcard pattern (forward sets, then backtrack)."""
        t, k = self.transitions, self.alphabet
        sets = [set(range(k)) if word[0] is None else {word[0]}]
        for c in word[1:]:
            nxt = {b for a in sets[-1] for b in range(k) if t[a][b]}
            sets.append(nxt if c is None else nxt & {c})
        out = [min(sets[-1])]
        for i in range(len(word) - 2, -1, -1):
            out.append(min(a for a in sets[i] if t[a][out[-1]]))
        return out[::-1]

    def __str__(self):
        return f"{self.name}({self.sidedness})"


def full_shift(k: int = 2, two_sided: bool = False, name: str = "") -> Subshift:
    return Subshift("full", k, two_sided,
                    name=name or f"full{k}_{'two' if two_sided else 'one'}_sided")


def sft(matrix, two_sided: bool = False, name: str = "") -> Subshift:
    return Subshift("sft", len(matrix), two_sided, matrix=matrix, name=name or "sft")


def golden_mean(two_sided: bool = False) -> Subshift:
    return sft(((1, 1), (1, 0)), two_sided, name="golden_mean")


def substitution_shift(rule, two_sided: bool = True, seed: int = 0, name: str = "") -> Subshift:
    rule = tuple(tuple(w) for w in rule)
    return Subshift("substitution", len(rule), two_sided, rule=rule, seed=seed, name=name or "substitution")


def morse_thue(two_sided: bool = True) -> Subshift:
    return substitution_shift(MORSE_RULE, two_sided, name="morse_thue")


# --------------------------------------------------------------------------
# operations named in the interface

def shift_image_cylinder(s: Subshift, c: CylinderUnion, n: int) -> CylinderUnion:
    return s.image(c, n)


def language(s: Subshift, L: int) -> set:
    return s.language(L)


def occurrence_gap(s: Subshift, w, horizon: int, point: Optional[SymbolicPoint] = None) -> FamilyCertificate:
    """Recurrence gap of word ``w``: the largest distance between consecutive occurrences.

    Without ``point`` the scan runs over the subshift's reference sequence
    (the fixed point for substitutions, a transitive point otherwise).  The
    gap is certified when scanning ``horizon`` and ``2*horizon`` symbols gives
    the same bound.
    """
    w = tuple(int(c) for c in w)
    if not w:
        raise InvalidParameter("empty word")
    if point is None and not s.allowed((0, w)):
        raise WordAbsent(f"{''.join(map(str, w))} is not in the language")
    if point is not None:
        seq_h = bytes(point.window(0, horizon))
        seq_2h = bytes(point.window(0, 2 * horizon))
    elif s.kind == "substitution":
        seq_2h = fixed_point_prefix(s.rule, s.seed, 2 * horizon)
        seq_h = seq_2h[:horizon]
    else:
        raise UnsupportedSpace("occurrence gaps need a reference point for this subshift")

    def gap(seq):
        occ = kernels.occurrences(seq, bytes(w))
        if not occ:
            return None
        g = max([occ[0] + 1] + [b - a for a, b in zip(occ, occ[1:])])
        trailing = len(seq) - len(w) - occ[-1] + 1
        return g, trailing

    a, b = gap(seq_h), gap(seq_2h)
    if a is None and b is None:
        return FamilyCertificate(EMPTY, horizon=horizon)
    if a is None or b is None or a[0] != b[0] or b[1] > b[0]:
        return FamilyCertificate(UNCLASSIFIED, horizon=horizon)
    return FamilyCertificate(SYNDETIC, gap=a[0], horizon=horizon)


def _reach(m: tuple, src: int) -> set:
    seen, todo = {src}, [src]
    while todo:
        a = todo.pop()
        for b, e in enumerate(m[a]):
            if e and b not in seen:
                seen.add(b)
                todo.append(b)
    return seen


def sft_transitive(matrix) -> Verdict:
    """Strong connectivity of the transition graph."""
    m = _check_matrix(matrix)
    k = len(m)
    for i in range(k):
        r = _reach(m, i)
        if len(r) < k:
            j = min(set(range(k)) - r)
            return Verdict.fails(witness=f"{i}->{j} unreachable")
    return Verdict.holds(strongly_connected=f"all {k}x{k} pairs reachable")


def sft_period(matrix) -> int:
    """Gcd of cycle lengths of a strongly connected transition graph."""
    m = _check_matrix(matrix)
    k = len(m)
    level = {0: 0}
    order = [0]
    for a in order:
        for b in range(k):
            if m[a][b] and b not in level:
                level[b] = level[a] + 1
                order.append(b)
    d = 0
    for a in range(k):
        for b in range(k):
            if m[a][b]:
                d = math.gcd(d, level[a] + 1 - level[b])
    return abs(d)


def sft_mixing(matrix) -> Verdict:
    """Primitivity: some power of the matrix is positive, found within the Wielandt cap."""
    m = _check_matrix(matrix)
    if not sft_transitive(m).is_holds:
        raise NotIrreducible("transition graph is not strongly connected")
    d = sft_period(m)
    if d > 1:
        return Verdict.fails(period=d)
    cap = (len(m) - 1) ** 2 + 1
    n = kernels.first_positive_power([list(r) for r in m], cap)
    if n < 0:  # cannot happen for aperiodic irreducible matrices
        return Verdict.undetermined(cap=cap)
    return Verdict.holds(positive_power=n, cap=cap)


def matrix_power_positive(matrix, n: int) -> bool:
    m = [list(r) for r in matrix]
    p = [row[:] for row in m]
    for _ in range(n - 1):
        p = kernels.bool_matmul(p, m)
    return all(all(r) for r in p)


def symbolic_basis_length(eps) -> int:
    return cylinder_length(eps, 2)

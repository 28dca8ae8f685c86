"""Pure-Python reference kernels; same signatures as the compiled ``_ckernels``."""
from __future__ import annotations


def occurrences(seq: bytes, word: bytes) -> list:
    """Start positions of every (possibly overlapping) occurrence of ``word`` in ``seq``."""
    out = []
    if not word:
        return list(range(len(seq) + 1))
    i = seq.find(word)
    while i >= 0:
        out.append(i)
        i = seq.find(word, i + 1)
    return out


def pattern_occurrences(seq: bytes, pattern: list) -> list:
    """Like :func:`occurrences` but ``pattern`` entries < 0 match any symbol."""
    m = len(pattern)
    fixed = [(i, s) for i, s in enumerate(pattern) if s >= 0]
    if not fixed:
        return list(range(len(seq) - m + 1))
    i0, s0 = fixed[0]
    rest = fixed[1:]
    out = []
    n = len(seq)
    for p in range(0, n - m + 1):
        if seq[p + i0] != s0:
            continue
        ok = True
        for i, s in rest:
            if seq[p + i] != s:
                ok = False
                break
        if ok:
            out.append(p)
    return out


def gap_stats(hits: list, horizon: int) -> tuple:
    """``(max_gap, trailing_gap, longest_run, threshold)`` of sorted hits within ``[1, horizon]``.

    ``max_gap`` counts the leading gap from 0; ``threshold`` is the least N with
    every integer of ``[N, horizon]`` a hit (``horizon + 1`` if none).
    """
    if not hits:
        return horizon + 1, horizon + 1, 0, horizon + 1
    prev = 0
    max_gap = 0
    run = best = 0
    last = None
    for h in hits:
        d = h - prev
        if d > max_gap:
            max_gap = d
        run = run + 1 if last is not None and h == last + 1 else 1
        if run > best:
            best = run
        last = h
        prev = h
    trailing = horizon - hits[-1] + 1
    threshold = horizon + 1
    if hits[-1] == horizon:
        threshold = horizon - run + 1
    return max_gap, trailing, best, threshold


def difference_hits(pos_u: list, flags_v: bytes, shift: int, horizon: int) -> bytearray:
    """``out[n] = 1`` (1 <= n <= horizon) iff ``flags_v[p + shift + n]`` for some ``p`` in ``pos_u``."""
    out = bytearray(horizon + 1)
    limit = len(flags_v)
    for p in pos_u:
        base = p + shift
        lo = max(1, -base)
        hi = min(horizon, limit - 1 - base)
        for n in range(lo, hi + 1):
            if flags_v[base + n]:
                out[n] = 1
    return out


def bool_matmul(a: list, b: list) -> list:
    k = len(a)
    return [[1 if any(a[i][j] and b[j][c] for j in range(k)) else 0 for c in range(k)]
            for i in range(k)]


def first_positive_power(m: list, cap: int) -> int:
    """Least ``N <= cap`` with ``m**N`` entrywise positive, else -1."""
    p = [row[:] for row in m]
    for n in range(1, cap + 1):
        if all(all(row) for row in p):
            return n
        p = bool_matmul(p, m)
    return -1

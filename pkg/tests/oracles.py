"""Independent reference computations used to derive and cross-check frozen test values.

Nothing here imports transdyn: each oracle recomputes from first principles
with plain integers, Fractions and brute-force enumeration.
"""
from __future__ import annotations

import itertools
from fractions import Fraction


# -- tent map on closed intervals (closures of the exact images)

def tent_interval_image(a: Fraction, b: Fraction) -> tuple:
    half = Fraction(1, 2)
    if b <= half:
        return 2 * a, 2 * b
    if a >= half:
        return 2 - 2 * b, 2 - 2 * a
    return min(2 * a, 2 - 2 * b), Fraction(1)


def tent_onto_time(a: Fraction, b: Fraction, cap: int = 64) -> int:
    lo, hi = a, b
    for n in range(1, cap + 1):
        lo, hi = tent_interval_image(lo, hi)
        if (lo, hi) == (0, 1):
            return n
    raise AssertionError("no onto time within cap")


# -- one-sided full 2-shift by word enumeration

def shift_hits_table(max_word: int = 4, total: int = 12) -> dict:
    """``(u, v) -> {n : some word of length total starts with u and has v at n}``."""
    table: dict = {}
    for w in itertools.product((0, 1), repeat=total):
        for lu in range(1, max_word + 1):
            u = w[:lu]
            for lv in range(1, max_word + 1):
                for n in range(1, total - lv + 1):
                    table.setdefault((u, w[n:n + lv]), set()).add(n)
    return table


# -- Morse sequence from binary digit sums

def morse(n: int) -> int:
    return bin(n).count("1") & 1


def morse_prefix(length: int) -> tuple:
    return tuple(morse(i) for i in range(length))


def morse_factors(length: int, prefix: int = 1 << 12) -> set:
    seq = morse_prefix(prefix)
    return {seq[i:i + length] for i in range(prefix - length + 1)}


def max_occurrence_gap(seq: tuple, w: tuple) -> int:
    occ = [i for i in range(len(seq) - len(w) + 1) if seq[i:i + len(w)] == w]
    return max([occ[0] + 1] + [b - a for a, b in zip(occ, occ[1:])])


# -- integer matrix powers

def matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def first_positive_power(m, cap: int = 16) -> int:
    p = [row[:] for row in m]
    for n in range(1, cap + 1):
        if all(x > 0 for row in p for x in row):
            return n
        p = matmul(p, m)
    return -1

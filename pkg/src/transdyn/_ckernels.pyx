# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels mirroring ``_pykernels`` one-for-one."""


def occurrences(bytes seq, bytes word):
    cdef Py_ssize_t n = len(seq), m = len(word), p, i
    cdef const unsigned char[:] s = seq
    cdef const unsigned char[:] w = word
    out = []
    if m == 0:
        return list(range(n + 1))
    for p in range(0, n - m + 1):
        for i in range(m):
            if s[p + i] != w[i]:
                break
        else:
            out.append(p)
    return out


def pattern_occurrences(bytes seq, list pattern):
    cdef Py_ssize_t n = len(seq), m = len(pattern), p, i, nf = 0
    cdef const unsigned char[:] s = seq
    cdef int[64] idx
    cdef int[64] sym
    if m > 64:
        from ._pykernels import pattern_occurrences as slow
        return slow(seq, pattern)
    for i in range(m):
        if pattern[i] >= 0:
            idx[nf] = i
            sym[nf] = pattern[i]
            nf += 1
    out = []
    for p in range(0, n - m + 1):
        for i in range(nf):
            if s[p + idx[i]] != sym[i]:
                break
        else:
            out.append(p)
    return out


def gap_stats(list hits, long horizon):
    cdef long prev = 0, max_gap = 0, run = 0, best = 0, last = -1, h, d
    cdef bint started = False
    if not hits:
        return horizon + 1, horizon + 1, 0, horizon + 1
    for x in hits:
        h = x
        d = h - prev
        if d > max_gap:
            max_gap = d
        if started and h == last + 1:
            run += 1
        else:
            run = 1
        if run > best:
            best = run
        last = h
        prev = h
        started = True
    threshold = horizon + 1
    if last == horizon:
        threshold = horizon - run + 1
    return max_gap, horizon - last + 1, best, threshold


def difference_hits(list pos_u, bytes flags_v, long shift, long horizon):
    cdef const unsigned char[:] f = flags_v
    cdef long limit = len(flags_v), base, lo, hi, n, p
    out = bytearray(horizon + 1)
    cdef unsigned char[:] o = out
    for x in pos_u:
        p = x
        base = p + shift
        lo = 1 if -base < 1 else -base
        hi = horizon if horizon < limit - 1 - base else limit - 1 - base
        n = lo
        while n <= hi:
            if f[base + n]:
                o[n] = 1
            n += 1
    return out


def bool_matmul(list a, list b):
    cdef int k = len(a), i, j, c
    out = []
    for i in range(k):
        row = []
        for c in range(k):
            v = 0
            for j in range(k):
                if a[i][j] and b[j][c]:
                    v = 1
                    break
            row.append(v)
        out.append(row)
    return out


def first_positive_power(list m, int cap):
    cdef int n
    p = [list(row) for row in m]
    for n in range(1, cap + 1):
        if all(all(row) for row in p):
            return n
        p = bool_matmul(p, m)
    return -1

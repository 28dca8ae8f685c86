"""The compiled kernels and the pure-Python fallback must agree exactly."""
import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from transdyn import _pykernels, kernels

try:
    from transdyn import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")

seqs = st.binary(max_size=200).map(lambda b: bytes(x & 1 for x in b))
words = st.binary(min_size=1, max_size=5).map(lambda b: bytes(x & 1 for x in b))
matrices = st.integers(1, 4).flatmap(
    lambda k: st.lists(st.lists(st.integers(0, 1), min_size=k, max_size=k), min_size=k, max_size=k))


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")
    if _ckernels is not None:
        assert kernels.BACKEND == "cython"


def test_pure_fallback_forced():
    code = "import transdyn.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, TRANSDYN_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_c
@given(seqs, words)
def test_occurrences(seq, w):
    assert _ckernels.occurrences(seq, w) == _pykernels.occurrences(seq, w)
    brute = [i for i in range(len(seq) - len(w) + 1) if seq[i:i + len(w)] == w]
    assert _pykernels.occurrences(seq, w) == brute


@needs_c
@given(seqs, st.lists(st.integers(-1, 1), min_size=1, max_size=5))
def test_pattern_occurrences(seq, pattern):
    assert _ckernels.pattern_occurrences(seq, pattern) == _pykernels.pattern_occurrences(seq, pattern)


@needs_c
@given(st.sets(st.integers(1, 64)), st.integers(64, 80))
def test_gap_stats(hits, horizon):
    h = sorted(hits)
    assert tuple(_ckernels.gap_stats(h, horizon)) == tuple(_pykernels.gap_stats(h, horizon))


@needs_c
@given(st.lists(st.integers(0, 40), max_size=10), st.binary(max_size=60).map(lambda b: bytes(x & 1 for x in b)),
       st.integers(-5, 5), st.integers(1, 30))
def test_difference_hits(pos, flags, shift, horizon):
    assert bytes(_ckernels.difference_hits(pos, flags, shift, horizon)) == \
        bytes(_pykernels.difference_hits(pos, flags, shift, horizon))


@needs_c
@given(matrices)
def test_matrix_kernels(m):
    assert _ckernels.bool_matmul(m, m) == _pykernels.bool_matmul(m, m)
    assert _ckernels.first_positive_power(m, 10) == _pykernels.first_positive_power(m, 10)


def test_gap_stats_example():
    assert _pykernels.gap_stats([2, 4, 5, 6], 6) == (2, 1, 3, 4)
    assert _pykernels.gap_stats([], 8) == (9, 9, 0, 9)

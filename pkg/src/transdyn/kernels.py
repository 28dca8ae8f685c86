"""Hot integer kernels: compiled when the extension is built, pure Python otherwise.

Set ``TRANSDYN_PURE=1`` to force the fallback.
"""
import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if not os.environ.get("TRANSDYN_PURE"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

occurrences = _impl.occurrences
pattern_occurrences = _impl.pattern_occurrences
gap_stats = _impl.gap_stats
difference_hits = _impl.difference_hits
bool_matmul = _impl.bool_matmul
first_positive_power = _impl.first_positive_power

__all__ = [
    "BACKEND", "occurrences", "pattern_occurrences", "gap_stats",
    "difference_hits", "bool_matmul", "first_positive_power",
]

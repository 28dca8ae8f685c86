"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends get identical inputs; results are checked for equality before
anything is timed.
"""
import argparse
import random
import timeit

from transdyn import _pykernels as py
from transdyn.symbolic import fixed_point_prefix

try:
    from transdyn import _ckernels as cy
except ImportError:
    cy = None


def cases():
    rng = random.Random(7)
    morse = bytes(fixed_point_prefix(((0, 1), (1, 0)), 0, 1 << 16))
    word = bytes((0, 1, 1, 0, 1, 0, 0, 1))
    pattern = [0, -1, -1, 1, -1, 0]
    hits = py.occurrences(morse, word)
    flags = bytes(rng.randint(0, 1) for _ in range(1 << 14))
    pos_u = sorted(rng.sample(range(1 << 14), 512))
    mat = [[rng.random() < 0.15 for _ in range(48)] for _ in range(48)]
    mat = [[int(x) for x in row] for row in mat]
    for i in range(48):
        mat[i][(i + 1) % 48] = 1
    mat[0][0] = 1
    return {
        "occurrences": ("occurrences", (morse, word)),
        "pattern_occurrences": ("pattern_occurrences", (morse, pattern)),
        "gap_stats": ("gap_stats", (hits, len(morse))),
        "difference_hits": ("difference_hits", (pos_u, flags, 3, 1 << 13)),
        "bool_matmul": ("bool_matmul", (mat, mat)),
        "first_positive_power": ("first_positive_power", (mat, 256)),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if cy is None:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation` first")
    print(f"{'kernel':<22}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for label, (fn, argv) in cases().items():
        f_py = getattr(py, fn)
        t_py = min(timeit.repeat(lambda: f_py(*argv), number=1, repeat=args.repeat)) * 1e3
        if cy is None:
            print(f"{label:<22}{t_py:>12.2f}{'-':>12}{'-':>10}")
            continue
        f_cy = getattr(cy, fn)
        assert f_cy(*argv) == f_py(*argv), label
        t_cy = min(timeit.repeat(lambda: f_cy(*argv), number=1, repeat=args.repeat)) * 1e3
        print(f"{label:<22}{t_py:>12.2f}{t_cy:>12.2f}{t_py / t_cy:>9.1f}x")


if __name__ == "__main__":
    main()

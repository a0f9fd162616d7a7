"""Compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

from supercong import _kernels_py as pure

try:
    from supercong import _kernels as compiled
except ImportError:
    compiled = None

CASES = {
    "hyper_sum_mod F_3 n=5000 p=101 s=4": (
        "hyper_sum_mod", ([(2, 1)] * 3, [(1, 1)] * 3, 1, 1, 8, 5000, 101, 4)),
    "hyper_sum_mod P_n n=3000 p=47 s=6": (
        "hyper_sum_mod", ([(-1, 3000), (1, 3001)], [(1, 1), (1, 1)], 1, 5, 2, 3000, 47, 6)),
    "cubic_char_sum p=10007": ("cubic_char_sum", (1, -3, 2, 0, 10007)),
    "affine_char_sum r=3 p=61": ("affine_char_sum", (3, 2, 61)),
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'case':<40} {'python':>10} {'cython':>10} {'speedup':>8}")
    for label, (fn, fargs) in CASES.items():
        t_py = min(timeit.repeat(lambda: getattr(pure, fn)(*fargs), number=1, repeat=args.repeat))
        if compiled is None:
            print(f"{label:<40} {t_py:>9.4f}s {'n/a':>10}")
            continue
        assert getattr(pure, fn)(*fargs) == getattr(compiled, fn)(*fargs), label
        t_c = min(timeit.repeat(lambda: getattr(compiled, fn)(*fargs), number=1, repeat=args.repeat))
        print(f"{label:<40} {t_py:>9.4f}s {t_c:>9.4f}s {t_py / t_c:>7.1f}x")


if __name__ == "__main__":
    main()

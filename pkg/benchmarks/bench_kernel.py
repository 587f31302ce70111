"""Timing comparison of the compiled sweep kernel against the numpy
fallback.

Both backends implement the same two entry points with the same
(start, step) slice contract; this script runs each on identical
inputs, insists on identical outputs, and reports wall times plus the
ratio.  Run from a checkout with the package installed:

    python3 benchmarks/bench_kernel.py
    python3 benchmarks/bench_kernel.py --sweep-limits 100000 1000000 --repeats 5
"""

import argparse
import sys
import time

import numpy as np

from quadclass import _kernel_py

try:
    from quadclass import _kernel
except ImportError:
    _kernel = None


def best_of(fn, repeats):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def run_row(label, compiled_fn, fallback_fn, repeats, same):
    t_py, out_py = best_of(fallback_fn, repeats)
    if _kernel is None:
        print(f"{label:<28} compiled: n/a        fallback: {t_py:8.3f}s")
        return
    t_c, out_c = best_of(compiled_fn, repeats)
    if not same(out_c, out_py):
        print(f"{label:<28} BACKEND MISMATCH", file=sys.stderr)
        sys.exit(1)
    print(
        f"{label:<28} compiled: {t_c:8.3f}s  fallback: {t_py:8.3f}s  "
        f"ratio: {t_py / t_c:6.1f}x"
    )


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument(
        "--sweep-limits",
        type=int,
        nargs="+",
        default=[10**5, 10**6, 4 * 10**6],
        help="sweep bounds to time (default: 1e5 1e6 4e6)",
    )
    ap.add_argument(
        "--single-disc",
        type=int,
        default=4 * 140408055,
        help="|D| for the single-discriminant counter row",
    )
    ap.add_argument("--repeats", type=int, default=3, help="best-of-N timing")
    args = ap.parse_args(argv)

    if _kernel is None:
        print("compiled extension not built; timing the fallback alone\n")

    for limit in args.sweep_limits:
        run_row(
            f"sweep_counts({limit})",
            lambda limit=limit: _kernel.sweep_counts(limit, 1, 1),
            lambda limit=limit: _kernel_py.sweep_counts(limit, 1, 1),
            args.repeats,
            np.array_equal,
        )

    n = args.single_disc
    b0 = 0 if n % 4 == 0 else 1
    run_row(
        f"count_reduced_forms({n})",
        lambda: _kernel.count_reduced_forms(n, b0, 2),
        lambda: _kernel_py.count_reduced_forms(n, b0, 2),
        args.repeats,
        lambda a, b: a == b,
    )


if __name__ == "__main__":
    main()

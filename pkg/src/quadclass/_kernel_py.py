"""Pure-numpy stand-ins for the compiled kernels in _kernel.pyx.

Same functions, same (start, step) partitioning contract, same results;
only slower. sweep.py picks whichever of the two imports, so nothing
above this layer needs to care.
"""

from math import isqrt

import numpy as np


def sweep_counts(limit: int, a_start: int = 1, a_step: int = 1):
    """counts[n] = number of reduced forms with 4ac - b^2 = n, for the
    slice a in {a_start, a_start + a_step, ...}."""
    counts = np.zeros(max(limit, 0) + 1, dtype=np.int64)
    if limit < 3:
        return counts
    for a in range(a_start, isqrt(limit // 3) + 1, a_step):
        foura = 4 * a
        for b in range(0, a + 1):
            base = foura * a - b * b  # the c = a term
            if base > limit:
                continue
            counts[base] += 1
            start = base + foura
            if start <= limit:
                # one strided add covers every c > a at this (a, b)
                counts[start::foura] += 1 if (b == 0 or b == a) else 2
    return counts


def count_reduced_forms(abs_disc: int, b_start: int, b_step: int) -> int:
    """Number of reduced forms with 4ac - b^2 = abs_disc, summed over
    b in {b_start, b_start + b_step, ...}."""
    total = 0
    for b in range(b_start, isqrt(abs_disc // 3) + 1, b_step):
        n = (b * b + abs_disc) // 4
        lo = max(b, 1)
        hi = isqrt(n)
        if hi < lo:
            continue
        a = np.arange(lo, hi + 1, dtype=np.int64)
        a = a[n % a == 0]
        if not a.size:
            continue
        if b == 0:
            total += a.size
        else:
            c = n // a
            total += int(np.where((a == b) | (a == c), 1, 2).sum())
    return total

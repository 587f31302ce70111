# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""C loops behind sweep.py.

Two counting kernels. Both count reduced positive definite forms
(a, b, c), i.e. |b| <= a <= c with b >= 0 whenever |b| = a or a = c,
without any primitivity test: for fundamental discriminants every such
form is primitive, and that is the only regime the callers feed in.

Partitioning contract (see sweep.py): a caller may split the outer loop
by (start, step) and add the partial results together.
"""

import numpy as np

from libc.math cimport sqrt


cdef inline long long _isqrt(long long n) noexcept nogil:
    cdef long long r = <long long>sqrt(<double>n)
    while r > 0 and r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


def sweep_counts(long long limit, long long a_start=1, long long a_step=1):
    """counts[n] = number of reduced forms with 4ac - b^2 = n, for the
    slice a in {a_start, a_start + a_step, ...}.  int64 array, length
    limit + 1."""
    counts_arr = np.zeros(max(limit, 0) + 1, dtype=np.int64)
    if limit < 3:
        return counts_arr
    cdef long long[::1] counts = counts_arr
    cdef long long amax = _isqrt(limit // 3)
    cdef long long a, b, base, foura, n, w
    with nogil:
        a = a_start
        while a <= amax:
            foura = 4 * a
            for b in range(0, a + 1):
                base = foura * a - b * b  # the c = a term
                if base > limit:
                    continue
                counts[base] += 1
                w = 1 if (b == 0 or b == a) else 2
                n = base + foura
                while n <= limit:
                    counts[n] += w
                    n += foura
            a += a_step
    return counts_arr


def count_reduced_forms(long long abs_disc, long long b_start, long long b_step):
    """Number of reduced forms with 4ac - b^2 = abs_disc, summed over
    b in {b_start, b_start + b_step, ...}.  The caller fixes b_start to
    the parity forced by abs_disc mod 4 and b_step to a multiple of 2."""
    cdef long long bmax = _isqrt(abs_disc // 3)
    cdef long long total = 0
    cdef long long b, n, a, c, lo, hi
    with nogil:
        b = b_start
        while b <= bmax:
            n = (b * b + abs_disc) >> 2
            lo = b if b > 1 else 1
            hi = _isqrt(n)
            for a in range(lo, hi + 1):
                if n % a == 0:
                    c = n / a
                    total += 1 if (b == 0 or a == b or a == c) else 2
            b += b_step
    return total

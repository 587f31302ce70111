"""Bulk class-number computation by amortized sweeps.

A single pass over all triples a <= sqrt(X/3), 0 <= b <= a,
a <= c <= (b^2 + X) / 4a touches every reduced form of every
discriminant down to -X once, so tabulating h for a million fields
costs O(X^{3/2}) instead of a million separate enumerations.  The
inner loops live in a compiled extension when one was built;
otherwise a numpy fallback is used.  Set QUADCLASS_NO_EXT=1 to force
the fallback (the benchmark and the parity tests do).

Both kernels count all reduced forms, primitive or not.  Fundamental
discriminants admit no imprimitive forms (a common factor g of
a, b, c puts g^2 into the discriminant in a way the fundamentality
conditions rule out), so restricting output to fundamental D makes
the raw count equal h(D).  That restriction is built into
batch_class_numbers; the raw counter is exposed for tests.

Work is partitioned across processes by striding the outer loop
variable; partial counters merge by addition, so worker count never
changes results.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .forms import fundamental_mask

if os.environ.get("QUADCLASS_NO_EXT"):
    from . import _kernel_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernel as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernel_py as _impl

        BACKEND = "python"


class ResourceLimitError(Exception):
    """A requested bound exceeds the configured memory/time budget."""


#: Largest X accepted by batch_class_numbers without an explicit budget
#: override.  The counts array alone is 8(X+1) bytes.
DEFAULT_CLASS_DATA_BUDGET = 4_000_000


def _sweep_slice(args):
    limit, start, step = args
    return _impl.sweep_counts(limit, start, step)


def _count_slice(args):
    abs_disc, start, step = args
    return _impl.count_reduced_forms(abs_disc, start, step)


def sweep_counts(limit: int, workers: int = 1) -> np.ndarray:
    """counts[n] = number of reduced forms of discriminant -n, n <= limit.

    No fundamentality or primitivity filtering; see batch_class_numbers.
    """
    if workers <= 1:
        return _impl.sweep_counts(limit, 1, 1)
    tasks = [(limit, k + 1, workers) for k in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_sweep_slice, tasks))
    total = parts[0]
    for part in parts[1:]:
        total += part
    return total


def count_reduced_forms(abs_disc: int, workers: int = 1) -> int:
    """Number of reduced forms with |disc| = abs_disc, by trial division
    over b.  Equals h(-abs_disc) when -abs_disc is fundamental.  Built
    for single very large discriminants where a full sweep is absurd.
    """
    if abs_disc % 4 == 0:
        b0 = 0
    elif abs_disc % 4 == 3:
        b0 = 1
    else:
        raise ValueError(f"{-abs_disc} is not a discriminant")
    if workers <= 1:
        return _impl.count_reduced_forms(abs_disc, b0, 2)
    tasks = [(abs_disc, b0 + 2 * k, 2 * workers) for k in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(_count_slice, tasks))


@dataclass(frozen=True)
class ClassNumberTable:
    """h(D) for every fundamental D with |D| <= limit.

    Stored as parallel arrays ascending in |D|; behaves as a read-only
    mapping keyed by the (negative) discriminant.
    """

    limit: int
    abs_discs: np.ndarray
    class_numbers: np.ndarray

    def __len__(self) -> int:
        return int(self.abs_discs.size)

    def __contains__(self, disc: int) -> bool:
        i = int(np.searchsorted(self.abs_discs, -int(disc)))
        return i < len(self) and int(self.abs_discs[i]) == -int(disc)

    def __getitem__(self, disc: int) -> int:
        n = -int(disc)
        i = int(np.searchsorted(self.abs_discs, n))
        if i >= len(self) or int(self.abs_discs[i]) != n:
            raise KeyError(disc)
        return int(self.class_numbers[i])

    def items(self) -> Iterator[tuple[int, int]]:
        for n, h in zip(self.abs_discs, self.class_numbers):
            yield -int(n), int(h)


def batch_class_numbers(
    limit: int, workers: int = 1, budget: int | None = None
) -> ClassNumberTable:
    """Tabulate h(D) for all fundamental D with |D| <= limit."""
    if limit < 3:
        raise ValueError("limit must be at least 3")
    cap = DEFAULT_CLASS_DATA_BUDGET if budget is None else budget
    if limit > cap:
        raise ResourceLimitError(
            f"limit {limit} exceeds the class-data budget {cap}"
        )
    counts = sweep_counts(limit, workers=workers)
    ns = np.nonzero(fundamental_mask(limit))[0]
    return ClassNumberTable(limit, ns, counts[ns])

import subprocess
import sys

import numpy as np
import pytest

from quadclass import _kernel_py
from quadclass.forms import is_fundamental
from quadclass.sweep import (
    BACKEND,
    ResourceLimitError,
    batch_class_numbers,
    count_reduced_forms,
    sweep_counts,
)

from _oracles import class_number_by_box_scan


def _all_reduced_by_box_scan(n: int) -> int:
    # the sweep kernel counts every reduced form, primitive or not; on
    # fundamental discriminants the two notions coincide
    from math import isqrt

    D = -n
    count = 0
    for a in range(1, isqrt(n // 3) + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            count += 1
    return count


def test_sweep_matches_box_scan():
    counts = sweep_counts(300)
    assert len(counts) == 301
    for n in range(1, 301):
        want = _all_reduced_by_box_scan(n) if -n % 4 in (0, 1) else 0
        assert int(counts[n]) == want, n
        if want and is_fundamental(-n):
            assert want == class_number_by_box_scan(-n)


def test_single_disc_kernel_matches_sweep():
    counts = sweep_counts(2000)
    for n in (3, 4, 23, 47, 420, 1155, 1992, 1999):
        assert count_reduced_forms(n) == int(counts[n])


def test_prefix_stability():
    small = sweep_counts(1000)
    large = sweep_counts(5000)
    assert np.array_equal(small, large[:1001])


def test_worker_partition_invariance():
    one = sweep_counts(3000, workers=1)
    two = sweep_counts(3000, workers=2)
    assert np.array_equal(one, two)


def test_python_backend_agrees():
    limit = 20000
    sweep = sweep_counts(limit)
    fallback = _kernel_py.sweep_counts(limit)
    assert np.array_equal(sweep, np.asarray(fallback))


@pytest.mark.skipif(BACKEND != "compiled", reason="compiled kernel not built")
def test_env_flag_forces_python_backend():
    code = (
        "from quadclass.sweep import BACKEND, sweep_counts;"
        "print(BACKEND, int(sweep_counts(500).sum()))"
    )
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin", "QUADCLASS_NO_EXT": "1"},
        check=True,
    )
    backend, total = out.stdout.split()
    assert backend == "python"
    assert int(total) == int(sweep_counts(500).sum())


def test_batch_table_fundamental_only():
    table = batch_class_numbers(500)
    assert table.limit == 500
    discs = table.abs_discs
    assert np.all(discs[:-1] < discs[1:])
    counts = sweep_counts(500)
    for d, h in zip(discs, table.class_numbers):
        assert is_fundamental(-int(d))
        assert int(h) == int(counts[d])
    expected = [d for d in range(1, 501) if is_fundamental(-d)]
    assert list(discs) == expected


def test_budget_guard():
    with pytest.raises(ResourceLimitError):
        batch_class_numbers(10**7)
    # explicit budget overrides the default
    batch_class_numbers(5000, budget=5000)
    with pytest.raises(ResourceLimitError):
        batch_class_numbers(5001, budget=5000)

"""The numba kernels and the numpy fallback must agree bit for bit."""

import numpy as np
import pytest

from frobpow import _kernels_numpy

numba_kernels = pytest.importorskip("frobpow._kernels_numba")

rng = np.random.default_rng(991)


def _prepared(rows):
    n = rows.shape[1]
    norms = rows.sum(axis=1)
    order = np.lexsort(tuple(rows[:, k] for k in reversed(range(n))) + (norms,))
    rows, norms = rows[order], norms[order]
    fresh = np.ones(rows.shape[0], dtype=np.bool_)
    if rows.shape[0] > 1:
        fresh[1:] = np.any(rows[1:] != rows[:-1], axis=1)
    rows, norms = rows[fresh], norms[fresh]
    limits = np.searchsorted(norms, norms, side="left").astype(np.int64)
    return rows, norms, limits


@pytest.mark.parametrize("count,n,high", [(1, 1, 3), (50, 2, 6), (400, 3, 9), (900, 4, 5)])
def test_minimal_mask_parity(count, n, high):
    rows, norms, limits = _prepared(rng.integers(0, high, size=(count, n), dtype=np.int64))
    a = numba_kernels.minimal_mask(rows, norms, limits)
    b = _kernels_numpy.minimal_mask(rows, norms, limits)
    assert np.array_equal(a, b)


@pytest.mark.parametrize("v_count,g_count,n", [(0, 5, 2), (5, 0, 2), (300, 40, 3), (1000, 200, 4)])
def test_dominated_mask_parity(v_count, g_count, n):
    vs = rng.integers(0, 8, size=(v_count, n), dtype=np.int64)
    gens = rng.integers(0, 8, size=(g_count, n), dtype=np.int64)
    a = numba_kernels.dominated_mask(vs, gens)
    b = _kernels_numpy.dominated_mask(vs, gens)
    assert np.array_equal(a, b)


@pytest.mark.parametrize("ga,gb,n,bound", [(0, 3, 2, 10), (40, 30, 3, 9), (200, 50, 2, 6)])
def test_pairwise_sums_parity(ga, gb, n, bound):
    a_rows = rng.integers(0, 6, size=(ga, n), dtype=np.int64)
    b_rows = rng.integers(0, 6, size=(gb, n), dtype=np.int64)
    box = np.full(n, bound, dtype=np.int64)
    a = numba_kernels.pairwise_sums_boxed(a_rows, b_rows, box)
    b = _kernels_numpy.pairwise_sums_boxed(a_rows, b_rows, box)
    key = lambda arr: arr[np.lexsort(tuple(arr[:, k] for k in reversed(range(n))))]
    assert np.array_equal(key(a), key(b))


def test_any_witness_parity():
    for _ in range(30):
        n = int(rng.integers(1, 4))
        a_rows = rng.integers(0, 6, size=(int(rng.integers(0, 30)), n), dtype=np.int64)
        b_rows = rng.integers(0, 6, size=(int(rng.integers(0, 10)), n), dtype=np.int64)
        box = rng.integers(4, 12, size=n).astype(np.int64)
        dom = rng.integers(0, 9, size=(int(rng.integers(0, 5)), n), dtype=np.int64)
        got_a = numba_kernels.any_witness(a_rows, b_rows, box, dom)
        got_b = _kernels_numpy.any_witness(a_rows, b_rows, box, dom)
        assert got_a == got_b


def test_high_level_results_identical_under_fallback(monkeypatch):
    """Swap the live backend for the numpy fallback and recompute a family."""
    import frobpow.backend as live
    from frobpow.arith import ResidueClass
    from frobpow.closedform import _crit_candidates, _crit_diag, _R_gt_cached, family_diag

    reference = family_diag((6, 4), ResidueClass(7, 12))
    _crit_candidates.cache_clear()
    _crit_diag.cache_clear()
    _R_gt_cached.cache_clear()
    for name in ("minimal_mask", "dominated_mask", "pairwise_sums_boxed", "any_witness"):
        monkeypatch.setattr(live, name, getattr(_kernels_numpy, name))
    try:
        again = family_diag((6, 4), ResidueClass(7, 12))
    finally:
        _crit_candidates.cache_clear()
        _crit_diag.cache_clear()
        _R_gt_cached.cache_clear()
    assert again == reference

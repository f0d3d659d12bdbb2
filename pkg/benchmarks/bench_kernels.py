#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Runs the three kernel entry points on representative workloads (antichain
reduction of a large product set, dominance scans, boxed pairwise sums) and
two end-to-end tasks (a brute-force mu search and a family build), timing
each backend.  Invoke directly:

    python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import importlib
import os
import sys
import time

import numpy as np

# force a known backend before frobpow.backend is imported, then swap below
os.environ.setdefault("FROBPOW_BACKEND", "numba")

from frobpow import _kernels_numpy  # noqa: E402

try:
    from frobpow import _kernels_numba

    BACKENDS = [_kernels_numba, _kernels_numpy]
except ImportError:
    print("numba unavailable; benchmarking the numpy fallback only")
    BACKENDS = [_kernels_numpy]


def _product_rows(rng, count, n, high):
    return rng.integers(0, high, size=(count, n), dtype=np.int64)


def _prepared(rows):
    n = rows.shape[1]
    norms = rows.sum(axis=1)
    order = np.lexsort(tuple(rows[:, k] for k in reversed(range(n))) + (norms,))
    rows, norms = rows[order], norms[order]
    fresh = np.ones(rows.shape[0], dtype=np.bool_)
    fresh[1:] = np.any(rows[1:] != rows[:-1], axis=1)
    rows, norms = rows[fresh], norms[fresh]
    limits = np.searchsorted(norms, norms, side="left").astype(np.int64)
    return rows, norms, limits


def bench_kernels(repeat: int):
    rng = np.random.default_rng(20240817)
    rows, norms, limits = _prepared(_product_rows(rng, 60_000, 4, 40))
    vs = _product_rows(rng, 30_000, 4, 60)
    gens = _product_rows(rng, 4_000, 4, 30)
    a = _product_rows(rng, 3_000, 3, 80)
    b = _product_rows(rng, 400, 3, 80)
    box = np.array([130, 130, 130], dtype=np.int64)

    workloads = [
        ("minimal_mask 60k x 4", lambda impl: impl.minimal_mask(rows, norms, limits)),
        ("dominated_mask 30k vs 4k", lambda impl: impl.dominated_mask(vs, gens)),
        ("pairwise_sums 3k x 400 boxed", lambda impl: impl.pairwise_sums_boxed(a, b, box)),
    ]
    for name, fn in workloads:
        reference = None
        line = f"{name:32s}"
        for impl in BACKENDS:
            fn(impl)  # warm (jit compile / cache touch)
            t0 = time.perf_counter()
            for _ in range(repeat):
                out = fn(impl)
            dt = (time.perf_counter() - t0) / repeat
            line += f"  {impl.NAME}: {dt * 1e3:9.2f} ms"
            if reference is None:
                reference = out
            else:
                assert np.array_equal(np.sort(reference, axis=0), np.sort(out, axis=0)), name
        print(line)


def bench_end_to_end():
    import frobpow.backend as backend_mod

    for impl in BACKENDS:
        backend_mod.minimal_mask = impl.minimal_mask
        backend_mod.dominated_mask = impl.dominated_mask
        backend_mod.pairwise_sums_boxed = impl.pairwise_sums_boxed
        backend_mod.any_witness = impl.any_witness
        backend_mod.BACKEND = impl.NAME

        from frobpow.arith import ResidueClass
        from frobpow.closedform import _crit_candidates, _crit_diag, _R_gt_cached
        from frobpow.closedform import family_diag
        from frobpow.ideal import diag, power_of_m
        from frobpow.oracle import InvariantQuery, mu

        t0 = time.perf_counter()
        value = mu(InvariantQuery(power_of_m(7, 3), diag((2, 1, 1)), 169, 13))
        t_mu = time.perf_counter() - t0

        _crit_candidates.cache_clear()
        _crit_diag.cache_clear()
        _R_gt_cached.cache_clear()
        t0 = time.perf_counter()
        fam = family_diag((35, 35, 35, 35), ResidueClass(3, 35))
        t_fam = time.perf_counter() - t0
        print(
            f"{impl.NAME:6s} mu(m^7, (2,1,1), 169) = {value} in {t_mu * 1e3:8.1f} ms"
            f" | family diag(35^4): {len(fam.pieces)} pieces in {t_fam:6.2f} s"
        )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    print(f"backends: {', '.join(impl.NAME for impl in BACKENDS)}")
    bench_kernels(args.repeat)
    bench_end_to_end()


if __name__ == "__main__":
    sys.exit(main())

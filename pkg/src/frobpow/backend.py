"""Kernel backend selection.

The hot loops (antichain reduction, generator products, membership scans)
have two interchangeable implementations: numba-jitted and pure numpy.
FROBPOW_BACKEND=numpy forces the fallback; FROBPOW_BACKEND=numba insists on
the jitted path and fails loudly if numba cannot be imported.  Unset, numba
is used when available.
"""

from __future__ import annotations

import os

_requested = os.environ.get("FROBPOW_BACKEND", "").strip().lower()

if _requested not in ("", "numba", "numpy"):
    raise RuntimeError(
        f"FROBPOW_BACKEND must be 'numba' or 'numpy', got {_requested!r}"
    )

if _requested == "numpy":
    from . import _kernels_numpy as _impl
else:
    try:
        from . import _kernels_numba as _impl
    except ImportError:
        if _requested == "numba":
            raise
        from . import _kernels_numpy as _impl

BACKEND = _impl.NAME

minimal_mask = _impl.minimal_mask
dominated_mask = _impl.dominated_mask
pairwise_sums_boxed = _impl.pairwise_sums_boxed
any_witness = _impl.any_witness


def set_num_threads(count: int) -> None:
    """Pin the jit backend's thread pool; a no-op on the numpy path."""
    if count < 1:
        raise ValueError(f"thread count must be positive, got {count}")
    if BACKEND == "numba":
        import numba

        numba.set_num_threads(min(count, numba.config.NUMBA_NUM_THREADS))

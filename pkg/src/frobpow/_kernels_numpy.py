"""Pure-numpy implementations of the generator-set kernels.

Fallback backend used when FROBPOW_BACKEND=numpy or numba is unavailable.
All functions operate on int64 arrays of shape (G, n), one exponent vector
per row, and must produce results identical to the numba backend.
"""

from __future__ import annotations

import numpy as np

# chunk sizes keep the broadcasted boolean intermediates in the tens of MB
_ROW_CHUNK = 4096
_GEN_CHUNK = 2048

NAME = "numpy"


def minimal_mask(rows: np.ndarray, norms: np.ndarray, limits: np.ndarray) -> np.ndarray:
    """Keep-mask of the coordinatewise-minimal rows.

    rows must be unique and sorted by (norm, lex) ascending; limits[i] is the
    index of the first row in i's norm group.  Rows of equal norm never
    dominate each other, so only rows before limits[i] are candidates.
    """
    G = rows.shape[0]
    keep = np.ones(G, dtype=np.bool_)
    start = 0
    while start < G:
        end = start
        while end < G and limits[end] == limits[start]:
            end += 1
        if start > 0:
            kept_prior = rows[:start][keep[:start]]
            if kept_prior.shape[0]:
                for c0 in range(start, end, _ROW_CHUNK):
                    sub = rows[c0 : min(c0 + _ROW_CHUNK, end)]
                    dom = np.zeros(sub.shape[0], dtype=np.bool_)
                    for g0 in range(0, kept_prior.shape[0], _GEN_CHUNK):
                        gc = kept_prior[g0 : g0 + _GEN_CHUNK]
                        dom |= (gc[None, :, :] <= sub[:, None, :]).all(axis=2).any(axis=1)
                        if dom.all():
                            break
                    keep[c0 : c0 + sub.shape[0]] = ~dom
        start = end
    return keep


def dominated_mask(vs: np.ndarray, gens: np.ndarray) -> np.ndarray:
    """out[i] is True iff some generator row is <= vs[i] coordinatewise."""
    V = vs.shape[0]
    out = np.zeros(V, dtype=np.bool_)
    if V == 0 or gens.shape[0] == 0:
        return out
    pending = np.arange(V)
    for g0 in range(0, gens.shape[0], _GEN_CHUNK):
        gc = gens[g0 : g0 + _GEN_CHUNK]
        hit_any = np.zeros(pending.shape[0], dtype=np.bool_)
        for c0 in range(0, pending.shape[0], _ROW_CHUNK):
            idx = pending[c0 : c0 + _ROW_CHUNK]
            hit = (gc[None, :, :] <= vs[idx][:, None, :]).all(axis=2).any(axis=1)
            out[idx[hit]] = True
            hit_any[c0 : c0 + idx.shape[0]] = hit
        pending = pending[~hit_any]
        if pending.shape[0] == 0:
            break
    return out


def any_witness(a: np.ndarray, b: np.ndarray, box: np.ndarray, dom: np.ndarray) -> bool:
    """True iff some sum a[i] + b[j] fits the box and no dom row is <= it."""
    if a.shape[0] == 0 or b.shape[0] == 0:
        return False
    n = a.shape[1]
    for c0 in range(0, a.shape[0], 64):
        sums = (a[c0 : c0 + 64, None, :] + b[None, :, :]).reshape(-1, n)
        ok = (sums < box[None, :]).all(axis=1)
        if not ok.any():
            continue
        sums = sums[ok]
        if dom.shape[0] == 0:
            return True
        if not dominated_mask(sums, dom).all():
            return True
    return False


def pairwise_sums_boxed(a: np.ndarray, b: np.ndarray, box: np.ndarray) -> np.ndarray:
    """All row sums a[i] + b[j] with every coordinate strictly below box.

    box holds exclusive upper bounds (a huge sentinel disables a coordinate).
    Result rows are unordered and may contain duplicates.
    """
    n = a.shape[1]
    gb = b.shape[0]
    if a.shape[0] == 0 or gb == 0:
        return np.empty((0, n), dtype=np.int64)
    chunk = max(1, (8 << 20) // max(1, gb * n * 8))
    parts = []
    for c0 in range(0, a.shape[0], chunk):
        sums = (a[c0 : c0 + chunk, None, :] + b[None, :, :]).reshape(-1, n)
        ok = (sums < box[None, :]).all(axis=1)
        if ok.any():
            parts.append(sums[ok])
    if not parts:
        return np.empty((0, n), dtype=np.int64)
    return np.concatenate(parts)

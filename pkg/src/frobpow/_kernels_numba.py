"""Numba-jitted generator-set kernels; the default backend.

Same contracts as _kernels_numpy (see there for the docstrings).  The inner
loops carry early exits that numpy cannot express without materializing the
full pairwise comparison, which is where the speedup comes from.
"""

from __future__ import annotations

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True)
def _minimal_mask(rows, norms, limits):
    G, n = rows.shape
    keep = np.ones(G, dtype=np.bool_)
    for i in range(G):
        for j in range(limits[i]):
            if not keep[j]:
                continue
            dom = True
            for k in range(n):
                if rows[j, k] > rows[i, k]:
                    dom = False
                    break
            if dom:
                keep[i] = False
                break
    return keep


@njit(cache=True)
def _dominated_mask(vs, gens):
    V, n = vs.shape
    G = gens.shape[0]
    out = np.zeros(V, dtype=np.bool_)
    for i in range(V):
        for j in range(G):
            dom = True
            for k in range(n):
                if gens[j, k] > vs[i, k]:
                    dom = False
                    break
            if dom:
                out[i] = True
                break
    return out


@njit(cache=True)
def _pairwise_sums_boxed(a, b, box):
    GA, n = a.shape
    GB = b.shape[0]
    count = 0
    for i in range(GA):
        for j in range(GB):
            ok = True
            for k in range(n):
                if a[i, k] + b[j, k] >= box[k]:
                    ok = False
                    break
            if ok:
                count += 1
    out = np.empty((count, n), dtype=np.int64)
    pos = 0
    for i in range(GA):
        for j in range(GB):
            ok = True
            for k in range(n):
                if a[i, k] + b[j, k] >= box[k]:
                    ok = False
                    break
            if ok:
                for k in range(n):
                    out[pos, k] = a[i, k] + b[j, k]
                pos += 1
    return out


@njit(cache=True)
def _any_witness(a, b, box, dom):
    GA, n = a.shape
    GB = b.shape[0]
    GD = dom.shape[0]
    for i in range(GA):
        for j in range(GB):
            ok = True
            for k in range(n):
                if a[i, k] + b[j, k] >= box[k]:
                    ok = False
                    break
            if not ok:
                continue
            witness = True
            for h in range(GD):
                inside = True
                for k in range(n):
                    if dom[h, k] > a[i, k] + b[j, k]:
                        inside = False
                        break
                if inside:
                    witness = False
                    break
            if witness:
                return True
    return False


def minimal_mask(rows, norms, limits):
    if rows.shape[0] == 0:
        return np.ones(0, dtype=np.bool_)
    return _minimal_mask(rows, norms, limits)


def dominated_mask(vs, gens):
    if vs.shape[0] == 0 or gens.shape[0] == 0:
        return np.zeros(vs.shape[0], dtype=np.bool_)
    return _dominated_mask(vs, gens)


def pairwise_sums_boxed(a, b, box):
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.empty((0, a.shape[1]), dtype=np.int64)
    return _pairwise_sums_boxed(a, b, box)


def any_witness(a, b, box, dom):
    """True iff some sum a[i] + b[j] fits the box and no dom row is <= it."""
    if a.shape[0] == 0 or b.shape[0] == 0:
        return False
    return bool(_any_witness(a, b, box, dom))

"""Hot numeric kernels: merged-sequence discrepancy, dense-matrix Kruskal,
and the permutation-null inner loop.

Each kernel is written as a plain numpy function and JIT-compiled with numba
unless the environment variable ``COMBINF_NO_NUMBA`` is set to ``1`` (or numba
is unavailable), in which case the same code runs as pure numpy/Python.
``backend()`` reports which path is active; ``benchmarks/bench_kernels.py``
times both.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLE = os.environ.get("COMBINF_NO_NUMBA", "0").lower() in ("1", "true", "yes")


def _discrepancy_sorted(a, b):
    """Max |#{a <= t} - #{b <= t}| over merged values of two sorted arrays.

    Returns (d, argmax_value, ties) where argmax_value is the smallest value
    attaining the max and ties is 1 when some value occurs in both arrays.
    """
    q = a.shape[0]
    i = 0
    j = 0
    best = 0
    best_t = a[0] if a[0] <= b[0] else b[0]
    ties = 0
    while i < q or j < q:
        if i < q and (j == q or a[i] <= b[j]):
            t = a[i]
        else:
            t = b[j]
        moved_a = False
        moved_b = False
        while i < q and a[i] == t:
            i += 1
            moved_a = True
        while j < q and b[j] == t:
            j += 1
            moved_b = True
        if moved_a and moved_b:
            ties = 1
        diff = i - j if i >= j else j - i
        if diff > best:
            best = diff
            best_t = t
    return best, best_t, ties


def _mst_sorted_weights(iu, ju, w, p):
    """Kruskal on an edge list; returns tree edge weights in insertion order.

    Edges must be listed with i < j in lexicographic order so that the stable
    sort breaks weight ties by (min endpoint, max endpoint).
    """
    order = np.argsort(w, kind="mergesort")
    parent = np.arange(p)
    out = np.empty(p - 1, dtype=np.float64)
    cnt = 0
    for e in range(order.shape[0]):
        idx = order[e]
        a = iu[idx]
        b = ju[idx]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a != b:
            parent[a] = b
            out[cnt] = w[idx]
            cnt += 1
            if cnt == p - 1:
                break
    return out[:cnt]


def _mst_tree_indices(iu, ju, w, p):
    """Same scan as _mst_sorted_weights but returns edge-list indices."""
    order = np.argsort(w, kind="mergesort")
    parent = np.arange(p)
    out = np.empty(p - 1, dtype=np.int64)
    cnt = 0
    for e in range(order.shape[0]):
        idx = order[e]
        a = iu[idx]
        b = ju[idx]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a != b:
            parent[a] = b
            out[cnt] = idx
            cnt += 1
            if cnt == p - 1:
                break
    return out[:cnt]


def _group_mst_weights(Zg, iu, ju, one_minus):
    """Correlation-MST weights for one group's data matrix (n x p).

    Edge weight is the column Pearson correlation itself, or 1 - correlation
    when one_minus is set.
    """
    n, p = Zg.shape
    A = np.empty((n, p))
    for c in range(p):
        m = 0.0
        for r in range(n):
            m += Zg[r, c]
        m /= n
        for r in range(n):
            A[r, c] = Zg[r, c] - m
    G = np.dot(A.T.copy(), A)
    ne = iu.shape[0]
    w = np.empty(ne)
    for e in range(ne):
        i = iu[e]
        j = ju[e]
        corr = G[i, j] / np.sqrt(G[i, i] * G[j, j])
        w[e] = 1.0 - corr if one_minus else corr
    return _mst_sorted_weights(iu, ju, w, p)


def _permutation_null(Z, perms, iu, ju, one_minus):
    """Discrepancy statistics for relabelings of pooled data.

    Z is the pooled (2n x p) data matrix; each row of perms is a permutation
    of 0..2n-1 whose first n entries form group A. Returns an int64 array of
    the max step-function gap for each relabeling.
    """
    m = perms.shape[0]
    n2 = perms.shape[1]
    n = n2 // 2
    out = np.empty(m, dtype=np.int64)
    for k in range(m):
        ga = Z[perms[k, :n], :]
        gb = Z[perms[k, n:], :]
        wa = _group_mst_weights(ga, iu, ju, one_minus)
        wb = _group_mst_weights(gb, iu, ju, one_minus)
        d, _, _ = _discrepancy_sorted(wa, wb)
        out[k] = d
    return out


if not _DISABLE:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _DISABLE = True

if not _DISABLE:
    # Rebind the underscored globals to their compiled versions in dependency
    # order so the jitted callers resolve them as numba dispatchers.
    _discrepancy_sorted = njit(cache=True)(_discrepancy_sorted)
    _mst_sorted_weights = njit(cache=True)(_mst_sorted_weights)
    _mst_tree_indices = njit(cache=True)(_mst_tree_indices)
    _group_mst_weights = njit(cache=True)(_group_mst_weights)
    _permutation_null = njit(cache=True)(_permutation_null)

discrepancy_sorted = _discrepancy_sorted
mst_sorted_weights = _mst_sorted_weights
mst_tree_indices = _mst_tree_indices
group_mst_weights = _group_mst_weights
permutation_null = _permutation_null


def backend() -> str:
    """Name of the active kernel backend ('numba' or 'numpy')."""
    return "numpy" if _DISABLE else "numba"

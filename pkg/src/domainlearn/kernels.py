"""Hot numeric kernels, each with a numba loop and a vectorized numpy twin.

The public functions dispatch on :func:`domainlearn._accel.enabled`. Both
paths accumulate coordinates in the same order and agree bit for bit; the
numpy variants trade memory for vectorization and chunk where the full
distance matrix would be too large.
"""
import numpy as np

from . import _accel
from ._accel import njit

_CHUNK = 2048


# --------------------------------------------------------------------------
# squared distances
# --------------------------------------------------------------------------
@njit
def _sq_distances_nb(a, b):
    n, m = a.shape
    k = b.shape[0]
    out = np.empty((n, k))
    for i in range(n):
        for j in range(k):
            s = 0.0
            for d in range(m):
                t = a[i, d] - b[j, d]
                s += t * t
            out[i, j] = s
    return out


def _sq_distances_np(a, b):
    # coordinates accumulate left to right, the same order as the loop twin
    out = np.zeros((a.shape[0], b.shape[0]))
    for d in range(a.shape[1]):
        t = a[:, d, None] - b[None, :, d]
        out += t * t
    return out


def sq_distances(a, b):
    """Squared Euclidean distances between rows of ``a`` and rows of ``b``."""
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    if _accel.enabled():
        return _sq_distances_nb(a, b)
    return _sq_distances_np(a, b)


# --------------------------------------------------------------------------
# nearest-neighbour distance within one set
# --------------------------------------------------------------------------
@njit
def _nn_distances_nb(p):
    n, m = p.shape
    out = np.full(n, np.inf)
    for i in range(n):
        best = np.inf
        for j in range(n):
            if j == i:
                continue
            s = 0.0
            for d in range(m):
                t = p[i, d] - p[j, d]
                s += t * t
            if s < best:
                best = s
        out[i] = np.sqrt(best)
    return out


def _nn_distances_np(p):
    n = p.shape[0]
    out = np.empty(n)
    for start in range(0, n, _CHUNK):
        block = _sq_distances_np(p[start:start + _CHUNK], p)
        rows = np.arange(block.shape[0])
        block[rows, rows + start] = np.inf
        out[start:start + _CHUNK] = np.sqrt(block.min(axis=1))
    return out


def nn_distances(points):
    """Distance from every row to its nearest *other* row (inf if alone).

    Duplicated rows have nearest-neighbour distance zero.
    """
    p = np.ascontiguousarray(points, dtype=np.float64)
    if p.shape[0] < 2:
        return np.full(p.shape[0], np.inf)
    if _accel.enabled():
        return _nn_distances_nb(p)
    return _nn_distances_np(p)


# --------------------------------------------------------------------------
# nearest distance from queries to a prototype set
# --------------------------------------------------------------------------
@njit
def _min_distances_nb(q, p):
    n, m = q.shape
    k = p.shape[0]
    out = np.empty(n)
    for i in range(n):
        best = np.inf
        for j in range(k):
            s = 0.0
            for d in range(m):
                t = q[i, d] - p[j, d]
                s += t * t
            if s < best:
                best = s
        out[i] = np.sqrt(best)
    return out


def _min_distances_np(q, p):
    out = np.empty(q.shape[0])
    for start in range(0, q.shape[0], _CHUNK):
        out[start:start + _CHUNK] = np.sqrt(
            _sq_distances_np(q[start:start + _CHUNK], p).min(axis=1))
    return out


def min_distances(queries, prototypes):
    """Distance from each query row to the closest prototype row."""
    q = np.ascontiguousarray(queries, dtype=np.float64)
    p = np.ascontiguousarray(prototypes, dtype=np.float64)
    if p.shape[0] == 0:
        return np.full(q.shape[0], np.inf)
    if _accel.enabled():
        return _min_distances_nb(q, p)
    return _min_distances_np(q, p)


# --------------------------------------------------------------------------
# k nearest probes carrying a different label
# --------------------------------------------------------------------------
@njit
def _knn_opposite_nb(s, s_lab, r, r_lab, k):
    n, m = s.shape
    nr = r.shape[0]
    idx = np.full((n, k), -1, dtype=np.int64)
    best = np.full((n, k), np.inf)
    for i in range(n):
        filled = 0
        for j in range(nr):
            if r_lab[j] == s_lab[i]:
                continue
            d2 = 0.0
            for c in range(m):
                t = s[i, c] - r[j, c]
                d2 += t * t
            if filled == k and d2 >= best[i, k - 1]:
                continue
            # insertion into the sorted top-k list; ties keep the lower index
            pos = filled if filled < k else k - 1
            while pos > 0 and best[i, pos - 1] > d2:
                if pos < k:
                    best[i, pos] = best[i, pos - 1]
                    idx[i, pos] = idx[i, pos - 1]
                pos -= 1
            best[i, pos] = d2
            idx[i, pos] = j
            if filled < k:
                filled += 1
    return idx


def _knn_opposite_np(s, s_lab, r, r_lab, k):
    n = s.shape[0]
    idx = np.full((n, k), -1, dtype=np.int64)
    for start in range(0, n, 256):
        stop = min(start + 256, n)
        d2 = _sq_distances_np(s[start:stop], r)
        d2[s_lab[start:stop, None] == r_lab[None, :]] = np.inf
        order = np.argsort(d2, axis=1, kind="stable")[:, :k]
        taken = np.take_along_axis(d2, order, axis=1)
        order[~np.isfinite(taken)] = -1
        idx[start:stop, :order.shape[1]] = order
    return idx


def knn_opposite(queries, query_labels, probes, probe_labels, k):
    """Indices of the ``k`` probes nearest to each query with another label.

    Rows are sorted by distance (ties by probe index) and padded with -1
    when fewer than ``k`` such probes exist.
    """
    s = np.ascontiguousarray(queries, dtype=np.float64)
    r = np.ascontiguousarray(probes, dtype=np.float64)
    s_lab = np.ascontiguousarray(query_labels, dtype=np.int64)
    r_lab = np.ascontiguousarray(probe_labels, dtype=np.int64)
    if _accel.enabled():
        return _knn_opposite_nb(s, s_lab, r, r_lab, int(k))
    return _knn_opposite_np(s, s_lab, r, r_lab, int(k))

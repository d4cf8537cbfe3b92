# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: distance matrix assembly, BFS all-pairs, Frank-Wolfe loop.

Mirrors `_kernels_py`; kept in lockstep by the backend parity tests.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()

BACKEND = "cython"


def pairwise_distances(coords):
    """Euclidean distance matrix of an (n, 2) coordinate array."""
    cdef const double[:, ::1] c = np.ascontiguousarray(coords, dtype=np.float64)
    cdef Py_ssize_t n = c.shape[0]
    out = np.zeros((n, n), dtype=np.float64)
    cdef double[:, ::1] d = out
    cdef Py_ssize_t i, j
    cdef double dx, dy, v
    for i in range(n):
        for j in range(i + 1, n):
            dx = c[i, 0] - c[j, 0]
            dy = c[i, 1] - c[j, 1]
            v = sqrt(dx * dx + dy * dy)
            d[i, j] = v
            d[j, i] = v
    return out


def bfs_all_pairs(indptr, indices, n):
    """Hop distances between all vertex pairs of a CSR adjacency.

    Returns an (n, n) int32 matrix with -1 for unreachable pairs.
    """
    cdef const int[::1] ip = np.ascontiguousarray(indptr, dtype=np.int32)
    cdef const int[::1] idx = np.ascontiguousarray(indices, dtype=np.int32)
    cdef Py_ssize_t nn = n
    out = np.full((nn, nn), -1, dtype=np.int32)
    cdef int[:, ::1] dist = out
    queue_arr = np.empty(nn, dtype=np.int32)
    cdef int[::1] queue = queue_arr
    cdef Py_ssize_t src, head, tail, u, v, e
    cdef int du
    for src in range(nn):
        dist[src, src] = 0
        queue[0] = <int> src
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[src, u]
            for e in range(ip[u], ip[u + 1]):
                v = idx[e]
                if dist[src, v] < 0:
                    dist[src, v] = du + 1
                    queue[tail] = <int> v
                    tail += 1
    return out


cdef double _ksum(double[::1] x) noexcept:
    # Kahan-compensated sum; keeps the simplex normalizer at machine accuracy.
    cdef double s = 0.0, comp = 0.0, y, t
    cdef Py_ssize_t i
    for i in range(x.shape[0]):
        y = x[i] - comp
        t = s + y
        comp = (t - s) - y
        s = t
    return s


cdef double _kdot(double[::1] a, double[::1] b) noexcept:
    cdef double s = 0.0, comp = 0.0, y, t
    cdef Py_ssize_t i
    for i in range(a.shape[0]):
        y = a[i] * b[i] - comp
        t = s + y
        comp = (t - s) - y
        s = t
    return s


def frank_wolfe_ascent(D, x0, max_iters, tol):
    """Frank-Wolfe ascent for mu^T D mu over the probability simplex.

    Each step moves toward the vertex with the largest potential (D mu)_k,
    using the exact line search of the 1-D quadratic restriction. The
    potential vector is updated incrementally (O(n) per step) and refreshed
    from scratch periodically and before returning, so the reported gap is
    exact at the returned point.

    Returns (x, gap, iterations_used).
    """
    cdef const double[:, ::1] dm = np.ascontiguousarray(D, dtype=np.float64)
    x_arr = np.array(x0, dtype=np.float64)
    cdef double[::1] x = x_arr
    cdef Py_ssize_t n = x.shape[0]
    g_arr = np.asarray(D, dtype=np.float64) @ x_arr
    cdef double[::1] g = g_arr
    cdef double f = _kdot(x, g)
    cdef long it = 0, max_it = max_iters
    cdef double tol_c = tol
    cdef Py_ssize_t i, k
    cdef double gk, gap, a, b, gamma, om, s
    while it < max_it:
        k = 0
        gk = g[0]
        for i in range(1, n):
            if g[i] > gk:
                gk = g[i]
                k = i
        gap = gk - f
        if gap <= tol_c:
            break
        it += 1
        a = f - 2.0 * gk
        b = 2.0 * (gk - f)
        if a < -1e-300:
            gamma = -b / (2.0 * a)
            if gamma > 1.0:
                gamma = 1.0
            elif gamma < 0.0:
                gamma = 0.0
        else:
            gamma = 1.0 if b > 0 else 0.0
        if gamma <= 0.0:
            break
        om = 1.0 - gamma
        for i in range(n):
            x[i] = om * x[i]
        x[k] += gamma
        s = _ksum(x)
        for i in range(n):
            x[i] /= s
        for i in range(n):
            g[i] = om * g[i] + gamma * dm[i, k]
        f = f + b * gamma + a * gamma * gamma
        if it % 4096 == 0:
            g_arr[:] = np.asarray(D, dtype=np.float64) @ x_arr
            f = _kdot(x, g)
    g_arr[:] = np.asarray(D, dtype=np.float64) @ x_arr
    f = _kdot(x, g)
    gap = float(np.max(g_arr) - f)
    return x_arr, gap, int(it)

"""Pure NumPy implementations of the hot kernels.

Fallback used when the compiled extension is unavailable (or when
DISTEQ_PURE_PYTHON is set). Same signatures and semantics as the
Cython module `_ckernels`.
"""

from collections import deque

import numpy as np

BACKEND = "python"


def pairwise_distances(coords):
    """Euclidean distance matrix of an (n, 2) coordinate array."""
    coords = np.ascontiguousarray(coords, dtype=np.float64)
    diff = coords[:, None, :] - coords[None, :, :]
    d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    # enforce exact symmetry and a zero diagonal
    d = 0.5 * (d + d.T)
    np.fill_diagonal(d, 0.0)
    return d


def bfs_all_pairs(indptr, indices, n):
    """Hop distances between all vertex pairs of a CSR adjacency.

    Returns an (n, n) int32 matrix with -1 for unreachable pairs.
    """
    indptr = np.asarray(indptr, dtype=np.int32)
    indices = np.asarray(indices, dtype=np.int32)
    dist = np.full((n, n), -1, dtype=np.int32)
    for src in range(n):
        row = dist[src]
        row[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            du = row[u]
            for v in indices[indptr[u]:indptr[u + 1]]:
                if row[v] < 0:
                    row[v] = du + 1
                    queue.append(v)
    return dist


def frank_wolfe_ascent(D, x0, max_iters, tol):
    """Frank-Wolfe ascent for mu^T D mu over the probability simplex.

    Each step moves toward the vertex with the largest potential (D mu)_k,
    using the exact line search of the 1-D quadratic restriction. The
    potential vector is updated incrementally (O(n) per step) and refreshed
    from scratch periodically and before returning, so the reported gap is
    exact at the returned point.

    Returns (x, gap, iterations_used).
    """
    D = np.asarray(D, dtype=np.float64)
    x = np.array(x0, dtype=np.float64)
    n = x.shape[0]
    g = D @ x
    f = float(x @ g)
    it = 0
    refresh = 4096
    while it < max_iters:
        k = int(np.argmax(g))
        gap = g[k] - f
        if gap <= tol:
            break
        it += 1
        a = f - 2.0 * g[k]
        b = 2.0 * (g[k] - f)
        if a < -1e-300:
            gamma = min(1.0, max(0.0, -b / (2.0 * a)))
        else:
            gamma = 1.0 if b > 0 else 0.0
        if gamma <= 0.0:
            break
        x *= 1.0 - gamma
        x[k] += gamma
        x /= x.sum()
        g *= 1.0 - gamma
        g += gamma * D[:, k]
        f = f + b * gamma + a * gamma * gamma
        if it % refresh == 0:
            g = D @ x
            f = float(x @ g)
    g = D @ x
    f = float(x @ g)
    gap = float(np.max(g) - f)
    return x, gap, it

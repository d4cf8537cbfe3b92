#!/usr/bin/env python3
"""Timing comparison of the compiled kernels against the NumPy fallback.

Runs the three hot kernels (pairwise distances, BFS all-pairs hop
distances, Frank-Wolfe ascent) through both backends on identical
inputs, checks that the outputs agree, and prints a timing table.

Usage:
    python3 benchmarks/bench_kernels.py [--repeats 3]
"""

import argparse
import sys
import time

import numpy as np

from disteq import _kernels_py

try:
    from disteq import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeats):
    """Best wall-clock time of `repeats` calls, plus the last result."""
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def random_cloud(n, seed):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((n, 2))


def random_connected_csr(n, extra_edges, seed):
    """CSR adjacency of a cycle on n vertices plus random chords."""
    rng = np.random.default_rng(seed)
    edges = {(i, (i + 1) % n) for i in range(n)}
    while len(edges) < n + extra_edges:
        u, v = rng.integers(0, n, size=2)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    indptr = np.zeros(n + 1, dtype=np.int32)
    for i, nbrs in enumerate(adj):
        indptr[i + 1] = indptr[i] + len(nbrs)
    indices = np.concatenate([np.sort(nbrs) for nbrs in adj]).astype(np.int32)
    return indptr, indices


def wobbly_distance_matrix(n):
    """Distance matrix of a gently perturbed circle, for the FW workload."""
    t = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    r = 1.0 + 0.05 * np.cos(3.0 * t)
    pts = np.column_stack([r * np.cos(t), r * np.sin(t)])
    return _kernels_py.pairwise_distances(pts)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=3,
                        help="timing repeats per case (best is reported)")
    args = parser.parse_args(argv)

    if _ckernels is None:
        print("compiled extension not available; build it first "
              "(pip install -e . --no-build-isolation)", file=sys.stderr)
        return 1

    cases = []

    coords = random_cloud(1500, seed=7)
    cases.append((
        "pairwise_distances", "n=1500 points",
        lambda k: k.pairwise_distances(coords),
        lambda a, b: float(np.max(np.abs(a - b))),
    ))

    n_graph = 3000
    indptr, indices = random_connected_csr(n_graph, extra_edges=6000, seed=7)
    cases.append((
        "bfs_all_pairs", f"n={n_graph}, m={indices.size // 2} edges",
        lambda k: k.bfs_all_pairs(indptr, indices, n_graph),
        lambda a, b: float(np.max(np.abs(a - b))),
    ))

    n_fw = 1024
    D = wobbly_distance_matrix(n_fw)
    x0 = np.full(n_fw, 1.0 / n_fw)
    cases.append((
        "frank_wolfe_ascent", f"n={n_fw}, 20000 iters",
        lambda k: k.frank_wolfe_ascent(D, x0, 20000, 0.0)[0],
        lambda a, b: float(np.max(np.abs(a - b))),
    ))

    header = f"{'kernel':<22} {'workload':<26} {'python':>10} {'cython':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, workload, run, diff in cases:
        t_py, out_py = best_of(lambda: run(_kernels_py), args.repeats)
        t_cy, out_cy = best_of(lambda: run(_ckernels), args.repeats)
        mismatch = diff(np.asarray(out_py, dtype=np.float64),
                        np.asarray(out_cy, dtype=np.float64))
        if mismatch > 1e-9:
            print(f"{name}: backends disagree (max diff {mismatch:.3e})",
                  file=sys.stderr)
            return 1
        print(f"{name:<22} {workload:<26} {t_py:>9.3f}s {t_cy:>9.3f}s "
              f"{t_py / t_cy:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

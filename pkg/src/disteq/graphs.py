"""Hop-distance curvature of connected graphs.

The curvature vector x solves D x = (1/n) 1 for the all-pairs shortest-path
matrix D, unnormalized: x need not sum to one, and its total is a graph
invariant in its own right. Graphs also convert to metric spaces (unit
weights) so the equilibrium and energy solvers apply unchanged.
"""

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .equilibrium import solve_linear_system
from .errors import Disconnected, SingularDistanceMatrix, SingularSystem
from .spaces import FiniteMetricSpace


@dataclass(frozen=True)
class GraphSpec:
    """Simple undirected graph: vertex count and unordered edge pairs."""

    n: int
    edges: tuple
    labels: tuple = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"graph: vertex count {self.n} < 1")
        seen = set()
        norm = []
        for e in self.edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"graph: self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(
                    f"graph: vertex id out of range in edge ({u}, {v}), n = {self.n}"
                )
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"graph: duplicate edge {key}")
            seen.add(key)
            norm.append(key)
        labels = tuple(self.labels) if self.labels else tuple(str(i) for i in range(self.n))
        if len(labels) != self.n:
            raise ValueError(f"graph: {len(labels)} labels for {self.n} vertices")
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "labels", labels)

    def adjacency_csr(self):
        """Neighbor lists in compressed form: (indptr, indices), int32."""
        deg = np.zeros(self.n, dtype=np.int32)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        indptr = np.zeros(self.n + 1, dtype=np.int32)
        np.cumsum(deg, out=indptr[1:])
        indices = np.empty(max(2 * len(self.edges), 1), dtype=np.int32)
        fill = indptr[:-1].copy()
        for u, v in self.edges:
            indices[fill[u]] = v
            fill[u] += 1
            indices[fill[v]] = u
            fill[v] += 1
        return indptr, indices[: 2 * len(self.edges)]


@dataclass(frozen=True)
class GraphCurvature:
    """Per-vertex curvature values and their sum."""

    values: np.ndarray
    total: float


def _components(g: GraphSpec) -> list:
    """Connected components by repeated sweeps."""
    indptr, indices = g.adjacency_csr()
    unassigned = set(range(g.n))
    comps = []
    while unassigned:
        root = min(unassigned)
        stack = [root]
        comp = {root}
        while stack:
            u = stack.pop()
            for v in indices[indptr[u] : indptr[u + 1]]:
                if int(v) in unassigned and int(v) not in comp:
                    comp.add(int(v))
                    stack.append(int(v))
        unassigned -= comp
        comps.append(sorted(comp))
    return comps


def all_pairs_distances(g: GraphSpec) -> np.ndarray:
    """Hop distances by breadth-first search from every vertex (integers)."""
    indptr, indices = g.adjacency_csr()
    D = kernels.bfs_all_pairs(indptr, indices, g.n)
    if (D < 0).any():
        comps = _components(g)
        raise Disconnected(
            f"graph: {len(comps)} components, distances are not finite",
            components=comps,
        )
    return D


def graph_curvature(g: GraphSpec) -> GraphCurvature:
    """Solve the hop-distance system with right side 1/n, unnormalized."""
    D = all_pairs_distances(g).astype(np.float64)
    b = np.full(g.n, 1.0 / g.n)
    try:
        x, _ = solve_linear_system(D, b, "graph_curvature")
    except SingularSystem as exc:
        rank = int(np.linalg.matrix_rank(D))
        raise SingularDistanceMatrix(
            f"graph_curvature: distance matrix is singular (rank {rank} of "
            f"{g.n}) and the system has no solution",
            rank=rank,
        ) from exc
    x.flags.writeable = False
    return GraphCurvature(values=x, total=float(x.sum()))


def graph_to_metric_space(g: GraphSpec) -> FiniteMetricSpace:
    """Hop metric with unit weights, ready for the generic solvers."""
    D = all_pairs_distances(g).astype(np.float64)
    return FiniteMetricSpace(
        distances=D,
        weights=np.ones(g.n),
        labels=g.labels,
        source="graph",
    )


def read_edge_list(path) -> GraphSpec:
    """Parse "u v" lines (0-based ids); '#' starts a comment line."""
    edges = []
    top = -1
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            body = line.strip()
            if not body or body.startswith("#"):
                continue
            parts = body.split()
            try:
                u, v = int(parts[0]), int(parts[1])
            except (ValueError, IndexError):
                raise ValueError(
                    f"edge-list file: cannot parse line {lineno} of {path}: {body!r}"
                )
            edges.append((u, v))
            top = max(top, u, v)
    if not edges:
        raise ValueError(f"edge-list file: no edges in {path}")
    return GraphSpec(top + 1, edges)

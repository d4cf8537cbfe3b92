"""Finite metric spaces: point sets with distances and quadrature weights.

Every solver in the package consumes the same structure, whether it came
from a sampled curve, a raw point cloud, a gridded polygon or a graph.
Validation happens at construction so downstream code can assume a genuine
metric.
"""

import csv
import enum
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .curves import SupportCurve, sample_uniform_parameter
from .errors import DegeneratePolygon, DuplicatePoints, TooCoarse

# Exhaustive triangle-inequality checking is cubic; above this size a seeded
# random sample of triples is used instead.
EXHAUSTIVE_TRIANGLE_LIMIT = 200
TRIANGLE_SAMPLES = 20000

# Grid points within this distance of a polygon edge count as inside, and are
# flagged as boundary nodes. Keeps edge-of-region nodes deterministic.
BOUNDARY_SNAP = 1e-9

DUPLICATE_TOL = 1e-12


class KernelKind(enum.Enum):
    DISTANCE = "distance"
    EXP_NEG_DISTANCE = "exp_neg_distance"


def _check_triangle(D: np.ndarray) -> None:
    n = D.shape[0]
    slack = 1e-9 * float(D.max()) if n else 0.0
    if n <= EXHAUSTIVE_TRIANGLE_LIMIT:
        for k in range(n):
            gap = D - (D[:, k, None] + D[None, k, :])
            if gap.max() > slack:
                i, j = np.unravel_index(int(np.argmax(gap)), gap.shape)
                raise ValueError(
                    f"metric space: triangle inequality fails for "
                    f"(i, j, k) = ({i}, {j}, {k}): "
                    f"{D[i, j]:.6g} > {D[i, k]:.6g} + {D[k, j]:.6g}"
                )
        return
    rng = np.random.default_rng(0)
    idx = rng.integers(0, n, size=(TRIANGLE_SAMPLES, 3))
    i, j, k = idx[:, 0], idx[:, 1], idx[:, 2]
    # each sampled triple is checked with every vertex as the midpoint
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        bad = D[a, b] > D[a, c] + D[c, b] + slack
        if np.any(bad):
            w = int(np.argmax(bad))
            raise ValueError(
                f"metric space: triangle inequality fails for "
                f"(i, j, k) = ({int(a[w])}, {int(b[w])}, {int(c[w])}): "
                f"{D[a[w], b[w]]:.6g} > {D[a[w], c[w]]:.6g} + {D[c[w], b[w]]:.6g}"
            )


@dataclass(frozen=True)
class FiniteMetricSpace:
    """Point set with a symmetric distance matrix and positive weights.

    Parameters
    ----------
    distances : (n, n) ndarray
        Symmetric, zero diagonal, positive off-diagonal, triangle
        inequality verified at construction.
    weights : (n,) ndarray
        Positive quadrature weights: arclength elements for curves, cell
        areas for grids, ones for clouds and graphs.
    labels : tuple of str, optional
        Per-node identifiers; defaults to stringified indices.
    coords : (n, 2) ndarray, optional
        Plane coordinates when the space has them (absent for graphs).
    source : str
        One of "curve", "cloud", "polygon-grid", "graph", "direct".
    boundary_mask : (n,) bool ndarray, optional
        Marks nodes on the region boundary; set by ``from_polygon_grid``.
    """

    distances: np.ndarray
    weights: np.ndarray
    labels: tuple = ()
    coords: np.ndarray = None
    source: str = "direct"
    boundary_mask: np.ndarray = None

    def __post_init__(self):
        D = np.ascontiguousarray(np.asarray(self.distances, dtype=np.float64))
        w = np.asarray(self.weights, dtype=np.float64)
        if D.ndim != 2 or D.shape[0] != D.shape[1]:
            raise ValueError(f"metric space: distance matrix shape {D.shape} not square")
        n = D.shape[0]
        if n == 0:
            raise ValueError("metric space: empty")
        scale = max(1.0, float(np.abs(D).max()))
        if float(np.abs(D - D.T).max()) > 1e-12 * scale:
            raise ValueError("metric space: distance matrix not symmetric")
        if float(np.abs(np.diag(D)).max(initial=0.0)) > 0.0:
            raise ValueError("metric space: distance matrix diagonal not zero")
        off = D[~np.eye(n, dtype=bool)]
        if off.size and off.min() <= 0.0:
            raise ValueError(
                "metric space: off-diagonal distances must be positive "
                "(coincident points?)"
            )
        _check_triangle(D)
        if w.shape != (n,):
            raise ValueError(f"metric space: weights shape {w.shape}, expected ({n},)")
        if w.min() <= 0.0:
            raise ValueError("metric space: weights must be positive")
        labels = tuple(self.labels) if self.labels else tuple(str(i) for i in range(n))
        if len(labels) != n:
            raise ValueError(f"metric space: {len(labels)} labels for {n} nodes")
        coords = self.coords
        if coords is not None:
            coords = np.asarray(coords, dtype=np.float64)
            if coords.shape != (n, 2):
                raise ValueError(f"metric space: coords shape {coords.shape}")
            coords.flags.writeable = False
        mask = self.boundary_mask
        if mask is not None:
            mask = np.asarray(mask, dtype=bool)
            if mask.shape != (n,):
                raise ValueError(f"metric space: boundary mask shape {mask.shape}")
            mask.flags.writeable = False
        D.flags.writeable = False
        w.flags.writeable = False
        object.__setattr__(self, "distances", D)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "boundary_mask", mask)

    @property
    def n(self) -> int:
        return self.distances.shape[0]


def apply_kernel(space: FiniteMetricSpace, kind: KernelKind) -> np.ndarray:
    """Kernel matrix for the solve: distances as-is or exp(-d) entrywise."""
    if kind is KernelKind.DISTANCE:
        return space.distances
    if kind is KernelKind.EXP_NEG_DISTANCE:
        return np.exp(-space.distances)
    raise ValueError(f"apply_kernel: unknown kernel kind {kind!r}")


def from_curve(curve: SupportCurve, n: int) -> FiniteMetricSpace:
    """Sample a strictly convex curve into a metric space.

    Nodes are the boundary points at parameter-uniform angles; weights are
    the arclength elements, so weighted sums approximate arclength
    integrals.
    """
    samples = sample_uniform_parameter(curve, n)
    D = kernels.pairwise_distances(samples.points)
    return FiniteMetricSpace(
        distances=D,
        weights=samples.weight,
        coords=samples.points,
        source="curve",
    )


def _find_duplicates(pts: np.ndarray):
    n = len(pts)
    chunk = 512
    for start in range(0, n, chunk):
        block = pts[start : start + chunk]
        diff = block[:, None, :] - pts[None, :, :]
        d2 = np.einsum("ijk,ijk->ij", diff, diff)
        rows = np.arange(start, start + len(block))
        d2[np.arange(len(block)), rows] = np.inf  # self-pairs
        hits = np.argwhere(d2 < DUPLICATE_TOL**2)
        if len(hits):
            i, j = hits[0]
            return int(rows[i]), int(j)
    return None


def from_point_cloud(points) -> FiniteMetricSpace:
    """Metric space on raw plane points with unit weights."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError(f"from_point_cloud: expected (n, 2) points, got {pts.shape}")
    if len(pts) < 2:
        raise ValueError(f"from_point_cloud: need at least 2 points, got {len(pts)}")
    dup = _find_duplicates(pts)
    if dup is not None:
        raise DuplicatePoints(
            f"from_point_cloud: points {dup[0]} and {dup[1]} coincide "
            f"(within {DUPLICATE_TOL:g})",
            indices=dup,
        )
    D = kernels.pairwise_distances(pts)
    return FiniteMetricSpace(
        distances=D,
        weights=np.ones(len(pts)),
        coords=pts,
        source="cloud",
    )


def _point_segment_dist(px, py, ax, ay, bx, by):
    """Distances from grid points (px, py arrays) to segment a-b."""
    vx, vy = bx - ax, by - ay
    vv = vx * vx + vy * vy
    if vv == 0.0:
        return np.hypot(px - ax, py - ay)
    t = np.clip(((px - ax) * vx + (py - ay) * vy) / vv, 0.0, 1.0)
    return np.hypot(px - (ax + t * vx), py - (ay + t * vy))


def from_polygon_grid(vertices, spacing: float) -> FiniteMetricSpace:
    """Axis-aligned grid restricted to a simple polygon.

    A grid point belongs to the region when the even-odd rule puts it
    inside, or when it lies within BOUNDARY_SNAP of an edge; the latter are
    flagged in ``boundary_mask``. Weights are uniform spacing**2 (no cell
    clipping at the boundary, which slightly overweights edge cells).
    """
    verts = np.asarray(vertices, dtype=np.float64)
    if verts.ndim != 2 or verts.shape[1] != 2 or len(verts) < 3:
        raise DegeneratePolygon(
            f"from_polygon_grid: need >= 3 vertices, got shape {verts.shape}"
        )
    x, y = verts[:, 0], verts[:, 1]
    area2 = np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y)
    scale = max(1.0, float(np.abs(verts).max()) ** 2)
    if abs(area2) < 1e-12 * scale:
        raise DegeneratePolygon("from_polygon_grid: polygon has zero area")
    if spacing <= 0:
        raise ValueError(f"from_polygon_grid: spacing {spacing} not positive")

    xmin, ymin = verts.min(axis=0)
    xmax, ymax = verts.max(axis=0)
    nx = int(np.floor((xmax - xmin) / spacing + 1e-9)) + 1
    ny = int(np.floor((ymax - ymin) / spacing + 1e-9)) + 1
    gx, gy = np.meshgrid(
        xmin + spacing * np.arange(nx), ymin + spacing * np.arange(ny), indexing="ij"
    )
    px, py = gx.ravel(), gy.ravel()

    inside = np.zeros(len(px), dtype=bool)
    on_edge = np.zeros(len(px), dtype=bool)
    m = len(verts)
    for e in range(m):
        ax, ay = verts[e]
        bx, by = verts[(e + 1) % m]
        on_edge |= _point_segment_dist(px, py, ax, ay, bx, by) <= BOUNDARY_SNAP
        crosses = (ay > py) != (by > py)
        if np.any(crosses):
            with np.errstate(divide="ignore", invalid="ignore"):
                xcross = ax + (py - ay) * (bx - ax) / (by - ay)
            inside[crosses] ^= px[crosses] < xcross[crosses]

    keep = inside | on_edge
    count = int(keep.sum())
    if count < 4:
        raise TooCoarse(
            f"from_polygon_grid: spacing {spacing:g} yields only {count} grid "
            f"points (need >= 4)"
        )
    pts = np.stack([px[keep], py[keep]], axis=-1)
    D = kernels.pairwise_distances(pts)
    return FiniteMetricSpace(
        distances=D,
        weights=np.full(count, float(spacing) ** 2),
        coords=pts,
        source="polygon-grid",
        boundary_mask=on_edge[keep],
    )


def _read_xy_csv(path, what: str) -> np.ndarray:
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or not "".join(row).strip():
                continue
            try:
                rows.append((float(row[0]), float(row[1])))
            except (ValueError, IndexError):
                if lineno == 1:  # header row
                    continue
                raise ValueError(f"{what}: cannot parse line {lineno} of {path}: {row!r}")
    if not rows:
        raise ValueError(f"{what}: no data rows in {path}")
    return np.asarray(rows, dtype=np.float64)


def read_point_cloud_csv(path) -> np.ndarray:
    """Read an "x,y"-headed CSV of plane points."""
    return _read_xy_csv(path, "point-cloud file")


def read_polygon_csv(path) -> np.ndarray:
    """Read polygon vertices, one "x,y" row per vertex, header optional."""
    return _read_xy_csv(path, "polygon file")

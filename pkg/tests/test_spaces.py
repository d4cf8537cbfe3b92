import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from disteq.curves import SupportCurve
from disteq.errors import DegeneratePolygon, DuplicatePoints, TooCoarse
from disteq.spaces import (
    FiniteMetricSpace,
    KernelKind,
    apply_kernel,
    from_curve,
    from_point_cloud,
    from_polygon_grid,
    read_point_cloud_csv,
    read_polygon_csv,
)

CIRCLE = SupportCurve([1.0])
UNIT_SQUARE = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]


# ---------------------------------------------------------------- point clouds


def test_cloud_two_points():
    sp = from_point_cloud([(0.0, 0.0), (1.0, 0.0)])
    assert np.allclose(sp.distances, [[0, 1], [1, 0]])
    assert np.array_equal(sp.weights, [1.0, 1.0])
    assert sp.n == 2
    assert sp.source == "cloud"


def test_cloud_345_triangle():
    sp = from_point_cloud([(0.0, 0.0), (3.0, 4.0)])
    assert sp.distances[0, 1] == pytest.approx(5.0, abs=1e-14)


def test_cloud_duplicate_points():
    with pytest.raises(DuplicatePoints) as exc:
        from_point_cloud([(0.0, 0.0), (0.0, 0.0)])
    assert set(exc.value.indices) == {0, 1}


def test_cloud_duplicate_reported_indices():
    pts = [(0.0, 0.0), (1.0, 1.0), (1.0, 1.0 + 1e-14), (2.0, 0.0)]
    with pytest.raises(DuplicatePoints) as exc:
        from_point_cloud(pts)
    assert set(exc.value.indices) == {1, 2}


def test_cloud_rejects_single_point():
    with pytest.raises(ValueError):
        from_point_cloud([(0.0, 0.0)])


def test_cloud_labels_cover_nodes():
    sp = from_point_cloud([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])
    assert len(sp.labels) == 3
    assert len(set(sp.labels)) == 3


# --------------------------------------------------------------- curve spaces


def test_curve_circle_four_points():
    sp = from_curve(CIRCLE, 4)
    off = sp.distances[~np.eye(4, dtype=bool)]
    assert np.allclose(np.sort(np.unique(np.round(off, 12))), [math.sqrt(2), 2.0])
    assert sp.distances[0, 2] == pytest.approx(2.0, abs=1e-12)
    assert sp.source == "curve"


def test_curve_circle_three_points():
    sp = from_curve(CIRCLE, 3)
    off = sp.distances[~np.eye(3, dtype=bool)]
    assert np.allclose(off, math.sqrt(3.0), atol=1e-12)


def test_curve_weights_sum_to_length():
    sp = from_curve(SupportCurve([1.0, 0.0, 0.0, 0.1]), 64)
    assert abs(sp.weights.sum() - 2 * math.pi) < 1e-10


def test_curve_circulant_distance_matrix():
    sp = from_curve(CIRCLE, 16)
    for i in range(16):
        assert np.allclose(np.roll(sp.distances[0], i), sp.distances[i], atol=1e-12)


def test_curve_keeps_coords():
    sp = from_curve(CIRCLE, 8)
    assert sp.coords.shape == (8, 2)
    assert np.allclose(np.hypot(sp.coords[:, 0], sp.coords[:, 1]), 1.0)


# -------------------------------------------------------------- polygon grids


def test_square_grid_half_spacing():
    sp = from_polygon_grid(UNIT_SQUARE, 0.5)
    assert sp.n == 9
    assert np.allclose(sp.weights, 0.25)
    assert sp.source == "polygon-grid"
    # every point except the center lies on an edge
    assert sp.boundary_mask.sum() == 8
    center = np.where(~sp.boundary_mask)[0]
    assert np.allclose(sp.coords[center], [[0.5, 0.5]])


def test_square_grid_too_coarse():
    with pytest.raises(TooCoarse):
        from_polygon_grid(UNIT_SQUARE, 2.0)


def test_triangle_grid_matches_enumeration():
    verts = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]
    sp = from_polygon_grid(verts, 0.25)
    # oracle: enumerate lattice points with x + y <= 1
    count = 0
    for i in range(5):
        for j in range(5):
            if 0.25 * i + 0.25 * j <= 1.0 + 1e-9:
                count += 1
    assert sp.n == count == 15


def test_degenerate_polygons():
    with pytest.raises(DegeneratePolygon):
        from_polygon_grid([(0.0, 0.0), (1.0, 0.0)], 0.1)
    with pytest.raises(DegeneratePolygon):
        from_polygon_grid([(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)], 0.1)


def test_grid_area_convergence():
    sp = from_polygon_grid(UNIT_SQUARE, 1.0 / 32.0)
    area = sp.n * sp.weights[0]
    assert abs(area - 1.0) < 0.1


def test_grid_includes_boundary_within_snap():
    # a square nudged so its right edge misses the lattice by less than the snap
    eps = 5e-10
    verts = [(0.0, 0.0), (1.0 - eps, 0.0), (1.0 - eps, 1.0), (0.0, 1.0)]
    sp = from_polygon_grid(verts, 0.5)
    assert sp.n == 9


def test_nonconvex_polygon_grid():
    # L-shape: unit square minus its upper-right quadrant
    verts = [(0, 0), (1, 0), (1, 0.5), (0.5, 0.5), (0.5, 1), (0, 1)]
    sp = from_polygon_grid([(float(x), float(y)) for x, y in verts], 0.25)
    # oracle: enumerate cell centers inside the L
    pts = [
        (0.25 * i, 0.25 * j)
        for i in range(5)
        for j in range(5)
        if 0.25 * i <= 0.5 + 1e-9 or 0.25 * j <= 0.5 + 1e-9
    ]
    assert sp.n == len(pts)


# -------------------------------------------------------------------- kernels


def test_kernel_exp_neg_distance():
    sp = from_point_cloud([(0.0, 0.0), (math.log(2.0), 0.0)])
    K = apply_kernel(sp, KernelKind.EXP_NEG_DISTANCE)
    assert np.allclose(K, [[1.0, 0.5], [0.5, 1.0]], atol=1e-15)


def test_kernel_distance_is_identity():
    sp = from_point_cloud([(0.0, 0.0), (1.0, 2.0), (3.0, 1.0)])
    assert np.array_equal(apply_kernel(sp, KernelKind.DISTANCE), sp.distances)


def test_kernel_single_point():
    sp = FiniteMetricSpace(
        distances=np.zeros((1, 1)), weights=np.ones(1), source="cloud"
    )
    assert np.array_equal(apply_kernel(sp, KernelKind.EXP_NEG_DISTANCE), [[1.0]])


def test_kernel_range():
    sp = from_curve(CIRCLE, 32)
    K = apply_kernel(sp, KernelKind.EXP_NEG_DISTANCE)
    assert np.allclose(np.diag(K), 1.0)
    assert K.min() > 0.0
    assert K.max() <= 1.0


# ----------------------------------------------------------------- validation


def test_rejects_asymmetric():
    D = np.array([[0.0, 1.0], [2.0, 0.0]])
    with pytest.raises(ValueError, match="symmetric"):
        FiniteMetricSpace(distances=D, weights=np.ones(2))


def test_rejects_nonzero_diagonal():
    D = np.array([[0.1, 1.0], [1.0, 0.0]])
    with pytest.raises(ValueError, match="diagonal"):
        FiniteMetricSpace(distances=D, weights=np.ones(2))


def test_rejects_zero_off_diagonal():
    D = np.zeros((2, 2))
    with pytest.raises(ValueError, match="positive"):
        FiniteMetricSpace(distances=D, weights=np.ones(2))


def test_rejects_triangle_violation():
    D = np.array([[0.0, 10.0, 1.0], [10.0, 0.0, 1.0], [1.0, 1.0, 0.0]])
    with pytest.raises(ValueError, match="triangle"):
        FiniteMetricSpace(distances=D, weights=np.ones(3))


def test_rejects_bad_weights():
    D = np.array([[0.0, 1.0], [1.0, 0.0]])
    with pytest.raises(ValueError, match="weight"):
        FiniteMetricSpace(distances=D, weights=np.array([1.0, 0.0]))
    with pytest.raises(ValueError, match="weight"):
        FiniteMetricSpace(distances=D, weights=np.ones(3))


def test_random_triple_check_catches_violation():
    # above the exhaustive-check cutoff a seeded sample of triples must still
    # flag a corrupted row
    rng = np.random.default_rng(7)
    pts = rng.uniform(0.0, 1.0, size=(250, 2))
    sp = from_point_cloud(pts)  # sanity: valid cloud passes
    D = sp.distances.copy()
    D[3, :] *= 100.0
    D[:, 3] *= 100.0
    D[3, 3] = 0.0
    with pytest.raises(ValueError, match="triangle"):
        FiniteMetricSpace(distances=D, weights=np.ones(250))


def test_space_is_immutable():
    sp = from_point_cloud([(0.0, 0.0), (1.0, 0.0)])
    with pytest.raises(ValueError):
        sp.distances[0, 1] = 7.0


@settings(max_examples=50, deadline=None)
@given(
    st.lists(
        st.tuples(
            st.integers(min_value=-50, max_value=50),
            st.integers(min_value=-50, max_value=50),
        ),
        min_size=2,
        max_size=30,
        unique=True,
    )
)
def test_cloud_metric_axioms_hold(int_pts):
    pts = [(float(x), float(y)) for x, y in int_pts]
    sp = from_point_cloud(pts)  # construction itself runs the validation
    assert np.all(sp.distances >= 0)
    assert np.allclose(sp.distances, sp.distances.T)


# ------------------------------------------------------------------ file I/O


def test_read_point_cloud_csv(tmp_path):
    p = tmp_path / "cloud.csv"
    p.write_text("x,y\n0.0,0.0\n3.0,4.0\n", encoding="utf-8")
    pts = read_point_cloud_csv(p)
    assert np.allclose(pts, [[0.0, 0.0], [3.0, 4.0]])


def test_read_polygon_csv(tmp_path):
    p = tmp_path / "poly.csv"
    p.write_text("x,y\n0,0\n1,0\n1,1\n0,1\n", encoding="utf-8")
    verts = read_polygon_csv(p)
    assert np.allclose(verts, UNIT_SQUARE)


def test_read_polygon_csv_headerless(tmp_path):
    p = tmp_path / "poly.csv"
    p.write_text("0,0\n1,0\n0,1\n", encoding="utf-8")
    verts = read_polygon_csv(p)
    assert np.allclose(verts, [[0, 0], [1, 0], [0, 1]])

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from disteq.curves import (
    SupportCurve,
    curvature_at,
    curve_length,
    curve_point,
    eval_support,
    min_max_curvature,
    sample_uniform_parameter,
)
from disteq.errors import NotStrictlyConvex

from oracles import central_diff, central_diff2, periodic_trapezoid

CIRCLE = SupportCurve([1.0])
WOBBLE = SupportCurve([1.0, 0.0, 0.0, 0.1])  # h = 1 + 0.1 cos(3t)


def wobble_h(t):
    return 1.0 + 0.1 * np.cos(3.0 * np.asarray(t))


def test_eval_support_circle():
    h, h1, h2 = eval_support(CIRCLE, math.pi / 2)
    assert (h, h1, h2) == (1.0, 0.0, 0.0)


@pytest.mark.parametrize("t", [0.0, math.pi / 3, 1.234, -2.0])
def test_eval_support_wobble_matches_symbolic(t):
    # symbolic oracle: d^2/dt^2 [0.1 cos 3t] = -0.9 cos 3t
    h, h1, h2 = eval_support(WOBBLE, t)
    assert h == pytest.approx(1.0 + 0.1 * math.cos(3 * t), abs=1e-15)
    assert h1 == pytest.approx(-0.3 * math.sin(3 * t), abs=1e-15)
    assert h2 == pytest.approx(-0.9 * math.cos(3 * t), abs=1e-15)


def test_eval_support_wobble_spec_points():
    assert eval_support(WOBBLE, 0.0) == pytest.approx((1.1, 0.0, -0.9))
    assert eval_support(WOBBLE, math.pi / 3) == pytest.approx((0.9, 0.0, 0.9))


def test_eval_support_derivatives_match_finite_differences():
    def h_only(t):
        return eval_support(WOBBLE, t)[0]

    for t in [0.1, 1.0, 2.5, 5.0]:
        h, h1, h2 = eval_support(WOBBLE, t)
        for delta in (1e-3, 1e-4):
            # |h3| <= 2.7 for this curve, so C = 2.7/6 + rounding headroom
            assert abs(h1 - central_diff(h_only, t, delta)) <= 1.0 * delta**2
        assert abs(h2 - central_diff2(h_only, t, 1e-4)) <= 1e-5


def test_curve_point_circle():
    assert curve_point(CIRCLE, 0.0) == pytest.approx((1.0, 0.0))
    assert curve_point(CIRCLE, math.pi / 2) == pytest.approx((0.0, 1.0), abs=1e-15)


def test_curve_point_wobble_at_zero():
    assert curve_point(WOBBLE, 0.0) == pytest.approx((1.1, 0.0), abs=1e-15)


def test_curvature_circle():
    for t in np.linspace(0, 2 * math.pi, 7):
        assert curvature_at(CIRCLE, t) == pytest.approx(1.0)


def test_curvature_wobble():
    assert curvature_at(WOBBLE, 0.0) == pytest.approx(5.0)
    assert curvature_at(WOBBLE, math.pi / 3) == pytest.approx(1.0 / 1.8)


def test_curvature_rejects_nonconvex_point():
    flat = SupportCurve([1.0, 0.0, 0.5])  # h + h'' = 1 - 1.5 cos(2t) < 0 at t=pi
    with pytest.raises(NotStrictlyConvex):
        curvature_at(flat, math.pi)


def test_curve_length_circle():
    assert curve_length(CIRCLE) == pytest.approx(2 * math.pi, abs=1e-15)


def test_curve_length_wobble_matches_quadrature():
    def speed(t):
        h, _, h2 = eval_support(WOBBLE, t)
        return h + h2

    assert curve_length(WOBBLE) == pytest.approx(2 * math.pi, abs=1e-14)
    assert curve_length(WOBBLE) == pytest.approx(periodic_trapezoid(speed), abs=1e-10)


def test_curve_length_scaling():
    assert curve_length(SupportCurve([2.0])) == pytest.approx(4 * math.pi)
    assert curve_length(WOBBLE.scaled(3.0)) == pytest.approx(3 * curve_length(WOBBLE))


def test_curve_length_rejects_nonconvex():
    with pytest.raises(NotStrictlyConvex):
        curve_length(SupportCurve([1.0, 0.0, 0.5]))


def test_sample_circle_n4():
    s = sample_uniform_parameter(CIRCLE, 4)
    expect = np.array([[1, 0], [0, 1], [-1, 0], [0, -1]], dtype=float)
    assert np.allclose(s.points, expect, atol=1e-15)
    assert np.allclose(s.weight, math.pi / 2)


def test_sample_weights_sum_to_length():
    s = sample_uniform_parameter(WOBBLE, 256)
    assert abs(s.weight.sum() - 2 * math.pi) <= 1e-12


def test_sample_rejects_small_n():
    with pytest.raises(ValueError):
        sample_uniform_parameter(CIRCLE, 2)


def test_sample_circle_equispaced():
    for n in (3, 5, 8, 17):
        s = sample_uniform_parameter(CIRCLE, n)
        ts = 2 * math.pi * np.arange(n) / n
        expect = np.stack([np.cos(ts), np.sin(ts)], axis=-1)
        assert np.allclose(s.points, expect, atol=1e-12)
        assert np.allclose(np.hypot(s.points[:, 0], s.points[:, 1]), 1.0)


def test_min_max_curvature_circle():
    assert min_max_curvature(CIRCLE, 128) == pytest.approx((1.0, 1.0))


def test_min_max_curvature_wobble():
    kmin, kmax = min_max_curvature(WOBBLE, 4096)
    assert kmin == pytest.approx(1 / 1.8, rel=1e-5)
    assert kmax == pytest.approx(5.0, rel=1e-5)


def test_min_max_curvature_second_harmonic():
    # h = 1 + a cos(2t): h + h'' = 1 - 3a cos(2t), so kappa_min = 1/(1+3a)
    a = 0.2
    kmin, _ = min_max_curvature(SupportCurve([1.0, 0.0, a]), 4096)
    assert kmin == pytest.approx(1 / (1 + 3 * a), rel=1e-5)


def test_min_max_curvature_grid_precondition():
    with pytest.raises(ValueError):
        min_max_curvature(CIRCLE, 32)


small_curves = st.builds(
    lambda a2, b2, a3, b3: SupportCurve([1.0, 0.0, a2, a3], [0.0, b2, b3]),
    *(st.floats(-0.03, 0.03) for _ in range(4)),
)


@settings(max_examples=100, deadline=None)
@given(curve=small_curves, t=st.floats(-10.0, 10.0))
def test_parametrization_identities(curve, t):
    h, h1, h2 = eval_support(curve, t)
    p = curve_point(curve, t)
    # defining support property of the parametrization
    assert p[0] * math.cos(t) + p[1] * math.sin(t) == pytest.approx(h, abs=1e-12)
    # curvature times arclength element is identically one
    assert curvature_at(curve, t) * (h + h2) == pytest.approx(1.0, abs=4e-16)


@settings(max_examples=50, deadline=None)
@given(curve=small_curves)
def test_sample_weight_identity(curve):
    s = sample_uniform_parameter(curve, 64)
    assert np.allclose(s.curvature * s.speed, 1.0, atol=4e-16)
    assert abs(s.weight.sum() - curve_length(curve)) <= 1e-12


def test_curve_json_roundtrip(tmp_path):
    path = tmp_path / "curve.json"
    path.write_text('{"cos": [1.0, 0.0, 0.0, 0.1]}')
    c = SupportCurve.from_json(path)
    assert np.allclose(c.cos_coeffs, WOBBLE.cos_coeffs)
    assert np.allclose(c.sin_coeffs, 0.0)


def test_rotation_preserves_geometry():
    rot = WOBBLE.rotated(0.7)
    assert curve_length(rot) == pytest.approx(curve_length(WOBBLE))
    h_rot = eval_support(rot, 1.0 + 0.7)[0]
    assert h_rot == pytest.approx(eval_support(WOBBLE, 1.0)[0], abs=1e-14)

"""Strictly convex closed plane curves encoded by trigonometric support functions.

A curve is stored as the coefficients of
``h(t) = a_0 + sum_k (a_k cos(kt) + b_k sin(kt))``; the boundary point in
direction ``t`` is ``(h cos t - h' sin t, h sin t + h' cos t)``, the arclength
element per unit parameter is ``h + h''`` and the curvature is its reciprocal.
All derivatives are evaluated analytically from the coefficients.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import NotStrictlyConvex

# Strict convexity means h + h'' > 0. The checks use a dense grid plus any
# points of interest; the tolerance must not reject nearly degenerate curves,
# which are exactly the interesting regime.
CONVEXITY_TOL = 1e-9
CONVEXITY_GRID = 4096


@dataclass(frozen=True)
class SupportCurve:
    """Coefficients of a trigonometric-polynomial support function.

    ``cos_coeffs[k]`` is the cos(kt) coefficient (index 0 is the constant
    term), ``sin_coeffs[k-1]`` the sin(kt) coefficient. The sine array may be
    shorter; it is zero-padded to match.
    """

    cos_coeffs: np.ndarray
    sin_coeffs: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        a = np.atleast_1d(np.asarray(self.cos_coeffs, dtype=np.float64))
        b = np.atleast_1d(np.asarray(self.sin_coeffs, dtype=np.float64))
        order = max(len(a) - 1, len(b), 0)
        a = np.pad(a, (0, order + 1 - len(a)))
        b = np.pad(b, (0, order - len(b)))
        a.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "cos_coeffs", a)
        object.__setattr__(self, "sin_coeffs", b)

    @property
    def order(self) -> int:
        """Highest harmonic with a stored coefficient."""
        return len(self.cos_coeffs) - 1

    @classmethod
    def circle(cls, radius: float = 1.0) -> "SupportCurve":
        return cls([float(radius)])

    @classmethod
    def from_dict(cls, spec: dict) -> "SupportCurve":
        """Build from {"cos": [a0, a1, ...], "sin": [b1, ...]}; "sin" optional."""
        if "cos" not in spec:
            raise ValueError("curve spec: missing required key 'cos'")
        return cls(spec["cos"], spec.get("sin", []))

    @classmethod
    def from_json(cls, path) -> "SupportCurve":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        return {"cos": self.cos_coeffs.tolist(), "sin": self.sin_coeffs.tolist()}

    def scaled(self, factor: float) -> "SupportCurve":
        """Curve dilated by ``factor`` (h is linear in the dilation)."""
        return SupportCurve(self.cos_coeffs * factor, self.sin_coeffs * factor)

    def rotated(self, phi: float) -> "SupportCurve":
        """Curve rotated by angle ``phi``: h_rot(t) = h(t - phi)."""
        k = np.arange(1, self.order + 1)
        a, b = self.cos_coeffs[1:], self.sin_coeffs
        c, s = np.cos(k * phi), np.sin(k * phi)
        new_a = np.concatenate([[self.cos_coeffs[0]], a * c - b * s])
        new_b = a * s + b * c
        return SupportCurve(new_a, new_b)


def eval_support(curve: SupportCurve, t):
    """Evaluate (h, h', h'') at parameter t (scalar or array), analytically."""
    t_arr = np.asarray(t, dtype=np.float64)
    k = np.arange(curve.order + 1, dtype=np.float64)
    kt = np.multiply.outer(t_arr, k)
    c, s = np.cos(kt), np.sin(kt)
    a = curve.cos_coeffs
    b = np.concatenate([[0.0], curve.sin_coeffs])
    h = c @ a + s @ b
    h1 = -s @ (k * a) + c @ (k * b)
    h2 = -c @ (k * k * a) - s @ (k * k * b)
    if t_arr.ndim == 0:
        return float(h), float(h1), float(h2)
    return h, h1, h2


def curve_point(curve: SupportCurve, t):
    """Boundary point(s) (h cos t - h' sin t, h sin t + h' cos t)."""
    t_arr = np.asarray(t, dtype=np.float64)
    h, h1, _ = eval_support(curve, t_arr)
    c, s = np.cos(t_arr), np.sin(t_arr)
    pts = np.stack([h * c - h1 * s, h * s + h1 * c], axis=-1)
    return pts


def curvature_at(curve: SupportCurve, t):
    """Curvature 1/(h + h'') at t; raises NotStrictlyConvex where h + h'' <= 0."""
    h, _, h2 = eval_support(curve, t)
    speed = np.asarray(h) + np.asarray(h2)
    if np.any(speed <= 0):
        bad = np.atleast_1d(np.asarray(t, dtype=np.float64))[
            np.argmin(np.atleast_1d(speed))
        ]
        raise NotStrictlyConvex(
            f"curvature_at: h + h'' = {float(np.min(speed)):.3e} <= 0 "
            f"at t = {float(bad):.6f}",
            t=float(bad),
        )
    out = 1.0 / speed
    return float(out) if np.asarray(t).ndim == 0 else out


def check_strict_convexity(curve: SupportCurve, grid: int = CONVEXITY_GRID, extra_t=None):
    """Verify h > 0 and h + h'' > tolerance on a dense grid (plus extra points).

    Raises NotStrictlyConvex naming the worst parameter value. The grid is
    dense by default; callers pass their own sample parameters as ``extra_t``
    so the check also covers the points actually used downstream.
    """
    ts = 2.0 * np.pi * np.arange(grid) / grid
    if extra_t is not None:
        ts = np.concatenate([ts, np.ravel(extra_t)])
    h, _, h2 = eval_support(curve, ts)
    speed = h + h2
    i = int(np.argmin(speed))
    if speed[i] <= CONVEXITY_TOL:
        raise NotStrictlyConvex(
            f"convexity check: h + h'' = {speed[i]:.3e} <= {CONVEXITY_TOL:g} "
            f"at t = {ts[i]:.6f}",
            t=float(ts[i]),
        )
    j = int(np.argmin(h))
    if h[j] <= 0:
        raise NotStrictlyConvex(
            f"convexity check: h = {h[j]:.3e} <= 0 at t = {ts[j]:.6f} "
            "(curve does not enclose the origin)",
            t=float(ts[j]),
        )


def curve_length(curve: SupportCurve) -> float:
    """Total arclength; equals 2*pi*a_0 exactly since harmonics integrate to zero."""
    check_strict_convexity(curve)
    return 2.0 * np.pi * float(curve.cos_coeffs[0])


@dataclass(frozen=True)
class CurveSamples:
    """Curve sampled at parameter-uniform points, arrays of length n.

    ``weight`` carries the arclength element: speed * (2*pi/n), the periodic
    trapezoid rule, spectrally accurate for trigonometric-polynomial h.
    """

    t: np.ndarray
    points: np.ndarray
    speed: np.ndarray
    curvature: np.ndarray
    weight: np.ndarray

    def __len__(self) -> int:
        return len(self.t)

    @property
    def arclength(self) -> np.ndarray:
        """Cumulative arclength position of each sample (starts at 0)."""
        return np.concatenate([[0.0], np.cumsum(self.weight[:-1])])


def sample_uniform_parameter(curve: SupportCurve, n: int) -> CurveSamples:
    """Sample at t_j = 2*pi*j/n with arclength quadrature weights."""
    if n < 3:
        raise ValueError(f"sample_uniform_parameter: n = {n} < 3")
    ts = 2.0 * np.pi * np.arange(n) / n
    check_strict_convexity(curve, extra_t=ts)
    h, h1, h2 = eval_support(curve, ts)
    speed = h + h2
    c, s = np.cos(ts), np.sin(ts)
    points = np.stack([h * c - h1 * s, h * s + h1 * c], axis=-1)
    return CurveSamples(
        t=ts,
        points=points,
        speed=speed,
        curvature=1.0 / speed,
        weight=speed * (2.0 * np.pi / n),
    )


def min_max_curvature(curve: SupportCurve, grid: int = CONVEXITY_GRID):
    """Curvature extrema over a parameter grid (grid >= 64)."""
    if grid < 64:
        raise ValueError(f"min_max_curvature: grid = {grid} < 64")
    ts = 2.0 * np.pi * np.arange(grid) / grid
    check_strict_convexity(curve, grid=max(grid, CONVEXITY_GRID))
    kappa = curvature_at(curve, ts)
    return float(np.min(kappa)), float(np.max(kappa))

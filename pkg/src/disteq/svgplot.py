"""Minimal SVG emitter for point sets colored by a signed value.

The palette is a fixed diverging map: negative values blue, zero white,
positive red, scaled symmetrically to the largest absolute value so that
sign semantics survive rescaling. Output is plain SVG 1.1 with no
external references, formatted so identical input gives identical bytes.
"""

import numpy as np

from .errors import EmptyInput

# palette endpoints, white center
_BLUE = (59, 76, 192)
_WHITE = (255, 255, 255)
_RED = (180, 4, 38)

_CANVAS = 420.0
_MARGIN = 40.0
_LEGEND_H = 54.0


def _blend(c0, c1, t: float) -> str:
    rgb = [round(a + (b - a) * t) for a, b in zip(c0, c1)]
    return f"rgb({rgb[0]},{rgb[1]},{rgb[2]})"


def value_color(value: float, scale: float) -> str:
    """Diverging color for one value against a symmetric scale."""
    if scale <= 0.0:
        return _blend(_WHITE, _WHITE, 0.0)
    x = min(1.0, max(-1.0, value / scale))
    if x >= 0.0:
        return _blend(_WHITE, _RED, x)
    return _blend(_WHITE, _BLUE, -x)


def render_svg(points, values, point_radius: float = None, title: str = "") -> str:
    """Render points as filled circles colored by signed value.

    Parameters
    ----------
    points : array-like, shape (n, 2)
        Planar positions.
    values : array-like, shape (n,)
        Signed values; the color scale is symmetric in max(|values|).
    point_radius : float, optional
        Circle radius in pixels; defaults to a size that keeps
        neighboring points distinct on a 420-pixel canvas.
    title : str, optional
        Legend caption.

    Returns
    -------
    str
        Complete SVG document.
    """
    pts = np.asarray(points, dtype=float)
    vals = np.asarray(values, dtype=float)
    if pts.size == 0 or vals.size == 0:
        raise EmptyInput("render_svg: no points to draw")
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError(f"render_svg: points must be (n, 2), got {pts.shape}")
    if len(pts) != len(vals):
        raise ValueError(
            f"render_svg: {len(pts)} points but {len(vals)} values"
        )
    if not np.all(np.isfinite(pts)) or not np.all(np.isfinite(vals)):
        raise ValueError("render_svg: non-finite input")

    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-30))
    inner = _CANVAS - 2.0 * _MARGIN
    # y flipped: SVG grows downward
    xs = _MARGIN + (pts[:, 0] - lo[0]) / span * inner
    ys = _MARGIN + (hi[1] - pts[:, 1]) / span * inner
    if point_radius is None:
        point_radius = max(1.5, min(6.0, 0.35 * inner / np.sqrt(len(pts))))
    scale = float(np.abs(vals).max())

    height = _CANVAS + _LEGEND_H
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_CANVAS:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {_CANVAS:.0f} {height:.0f}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for x, y, v in zip(xs, ys, vals):
        out.append(
            f'<circle cx="{x:.6f}" cy="{y:.6f}" r="{point_radius:.6f}" '
            f'fill="{value_color(float(v), scale)}"/>'
        )
    # legend: gradient bar with min / mid / max labels
    bar_y = _CANVAS + 8.0
    bar_w = _CANVAS - 2.0 * _MARGIN
    steps = 64
    for i in range(steps):
        t = -1.0 + 2.0 * (i + 0.5) / steps
        x0 = _MARGIN + bar_w * i / steps
        out.append(
            f'<rect x="{x0:.6f}" y="{bar_y:.6f}" '
            f'width="{bar_w / steps + 0.5:.6f}" height="14" '
            f'fill="{value_color(t * scale, scale)}"/>'
        )
    labels = (
        (_MARGIN, "start", -scale),
        (_MARGIN + bar_w / 2.0, "middle", 0.0),
        (_MARGIN + bar_w, "end", scale),
    )
    for x, anchor, v in labels:
        out.append(
            f'<text x="{x:.6f}" y="{bar_y + 28.0:.6f}" font-size="11" '
            f'font-family="monospace" text-anchor="{anchor}">{v:.6f}</text>'
        )
    if title:
        out.append(
            f'<text x="{_CANVAS / 2.0:.6f}" y="{bar_y + 44.0:.6f}" font-size="12" '
            f'font-family="monospace" text-anchor="middle">{title}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"

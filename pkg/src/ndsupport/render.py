"""Deterministic SVG figures: weight-space decompositions and the
bi-objective outcome plot.

Exact rationals are converted to floats only here, at the last moment
before formatting; nothing rendered ever feeds back into a decision.
Output bytes are a pure function of the input (fixed palette, fixed
coordinate formatting), so figures can be diffed across runs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .classify import Classification, Label
from .outcomes import OutcomeSet
from .weightspace import WeightCell, cell_interval

_PALETTE = (
    "#4e79a7",
    "#f28e2b",
    "#59a14f",
    "#e15759",
    "#b07aa1",
    "#76b7b2",
    "#edc948",
    "#9c755f",
)


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _svg(width: int, height: int, body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


def svg_weight_space(cells: Sequence[WeightCell], p: int) -> str:
    """The projected weight-space decomposition.

    p = 3 draws the projected simplex triangle with one polygon,
    segment or dot per cell; p = 2 draws the unit interval in the first
    weight as a segmented bar.
    """
    if p == 3:
        return _svg_simplex_triangle(cells)
    if p == 2:
        return _svg_interval_bar(cells)
    raise ValueError(f"no weight-space figure for p = {p}")


def _svg_simplex_triangle(cells: Sequence[WeightCell]) -> str:
    size, margin = 420, 50
    scale = size - 2 * margin

    def place(l1: Fraction, l2: Fraction) -> tuple[float, float]:
        return margin + float(l1) * scale, size - margin - float(l2) * scale

    body = ['<rect width="100%" height="100%" fill="white"/>']
    corners = [place(Fraction(0), Fraction(0)), place(Fraction(1), Fraction(0)), place(Fraction(0), Fraction(1))]
    triangle = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in corners)
    body.append(
        f'<polygon points="{triangle}" fill="#f5f5f5" stroke="#444" stroke-width="1"/>'
    )
    for idx, cell in enumerate(cells):
        verts = cell.projected_vertices or ()
        color = _PALETTE[idx % len(_PALETTE)]
        placed = [place(*v) for v in verts]
        if len(placed) >= 3:
            pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in placed)
            body.append(
                f'<polygon points="{pts}" fill="{color}" fill-opacity="0.55" '
                f'stroke="{color}" stroke-width="1.5"/>'
            )
        elif len(placed) == 2:
            (x1, y1), (x2, y2) = placed
            body.append(
                f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" '
                f'y2="{_fmt(y2)}" stroke="{color}" stroke-width="3"/>'
            )
        elif len(placed) == 1:
            x, y = placed[0]
            body.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="{color}"/>')
        if placed:
            cx = sum(x for x, _ in placed) / len(placed)
            cy = sum(y for _, y in placed) / len(placed)
            anchor_shift = 10 if len(placed) < 3 else 0
            body.append(
                f'<text x="{_fmt(cx + anchor_shift)}" y="{_fmt(cy - anchor_shift / 2)}" '
                f'font-size="13" font-family="sans-serif">{cell.point_id}</text>'
            )
    axis_y = size - margin
    body.append(
        f'<text x="{size - margin + 8}" y="{axis_y + 4}" font-size="13" '
        'font-family="sans-serif">w1</text>'
    )
    body.append(
        f'<text x="{margin - 10}" y="{margin - 8}" font-size="13" '
        'font-family="sans-serif">w2</text>'
    )
    for tick in (Fraction(1, 2), Fraction(1)):
        x, _ = place(tick, Fraction(0))
        body.append(
            f'<text x="{_fmt(x - 8)}" y="{axis_y + 16}" font-size="11" '
            f'font-family="sans-serif">{float(tick):g}</text>'
        )
        _, y = place(Fraction(0), tick)
        body.append(
            f'<text x="{margin - 28}" y="{_fmt(y + 4)}" font-size="11" '
            f'font-family="sans-serif">{float(tick):g}</text>'
        )
    return _svg(size, size, body)


def _svg_interval_bar(cells: Sequence[WeightCell]) -> str:
    width, height, margin = 460, 120, 40
    scale = width - 2 * margin
    body = ['<rect width="100%" height="100%" fill="white"/>']
    y0, bar_height = 40, 30
    for idx, cell in enumerate(cells):
        interval = cell_interval(cell)
        if interval is None:
            continue
        lo, hi = interval
        x = margin + float(lo) * scale
        w = max((float(hi) - float(lo)) * scale, 1.0)
        color = _PALETTE[idx % len(_PALETTE)]
        body.append(
            f'<rect x="{_fmt(x)}" y="{y0}" width="{_fmt(w)}" height="{bar_height}" '
            f'fill="{color}" fill-opacity="0.65" stroke="{color}"/>'
        )
        body.append(
            f'<text x="{_fmt(x + w / 2 - 8)}" y="{y0 - 6}" font-size="12" '
            f'font-family="sans-serif">{cell.point_id}</text>'
        )
    for tick, label in ((0.0, "0"), (0.5, "0.5"), (1.0, "1")):
        x = margin + tick * scale
        body.append(
            f'<line x1="{_fmt(x)}" y1="{y0 + bar_height}" x2="{_fmt(x)}" '
            f'y2="{y0 + bar_height + 6}" stroke="#444"/>'
        )
        body.append(
            f'<text x="{_fmt(x - 6)}" y="{y0 + bar_height + 20}" font-size="11" '
            f'font-family="sans-serif">{label}</text>'
        )
    body.append(
        f'<text x="{width - margin + 6}" y="{y0 + bar_height + 4}" font-size="13" '
        'font-family="sans-serif">w1</text>'
    )
    return _svg(width, height, body)


def svg_objective_space(
    outcome_set: OutcomeSet, classifications: Iterable[Classification]
) -> str:
    """Bi-objective outcome plot with one marker style per label:
    filled circles for extreme supported points, filled squares for
    supported points on open edges, crosses for unsupported points and
    small diamonds for dominated ones.  The staircase of extreme points
    is joined by the frontier polyline."""
    if outcome_set.p != 2:
        raise ValueError("objective-space figure requires exactly two objectives")
    size, margin = 420, 50
    xs = [pt.coords[0] for pt in outcome_set]
    ys = [pt.coords[1] for pt in outcome_set]
    lo_x, hi_x = min(xs), max(xs)
    lo_y, hi_y = min(ys), max(ys)
    span_x = hi_x - lo_x or Fraction(1)
    span_y = hi_y - lo_y or Fraction(1)
    scale = size - 2 * margin

    def place(coords) -> tuple[float, float]:
        x = margin + float((coords[0] - lo_x) / span_x) * scale
        y = size - margin - float((coords[1] - lo_y) / span_y) * scale
        return x, y

    by_id = {c.point_id: c for c in classifications}
    body = ['<rect width="100%" height="100%" fill="white"/>']
    extremes = [
        pt for pt in outcome_set if by_id[pt.id].label == Label.EXTREME_SUPPORTED
    ]
    extremes.sort(key=lambda pt: pt.coords)
    if len(extremes) >= 2:
        pts = " ".join(
            f"{_fmt(x)},{_fmt(y)}" for x, y in (place(pt.coords) for pt in extremes)
        )
        body.append(
            f'<polyline points="{pts}" fill="none" stroke="#888" stroke-width="1.5"/>'
        )
    for pt in outcome_set:
        x, y = place(pt.coords)
        label = by_id[pt.id].label
        if label == Label.EXTREME_SUPPORTED:
            body.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="5" fill="#1f5fa8"/>')
        elif label == Label.SUPPORTED:
            body.append(
                f'<rect x="{_fmt(x - 4)}" y="{_fmt(y - 4)}" width="8" height="8" '
                'fill="#b03060"/>'
            )
        elif label == Label.WEAKLY_SUPPORTED_ONLY:
            body.append(
                f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="5" fill="none" '
                'stroke="#b03060" stroke-width="2"/>'
            )
        elif label == Label.UNSUPPORTED:
            body.append(
                f'<path d="M {_fmt(x - 4)} {_fmt(y - 4)} L {_fmt(x + 4)} {_fmt(y + 4)} '
                f'M {_fmt(x - 4)} {_fmt(y + 4)} L {_fmt(x + 4)} {_fmt(y - 4)}" '
                'stroke="#222" stroke-width="2"/>'
            )
        else:
            body.append(
                f'<path d="M {_fmt(x)} {_fmt(y - 4)} L {_fmt(x + 4)} {_fmt(y)} '
                f'L {_fmt(x)} {_fmt(y + 4)} L {_fmt(x - 4)} {_fmt(y)} Z" fill="#222"/>'
            )
        body.append(
            f'<text x="{_fmt(x + 7)}" y="{_fmt(y - 7)}" font-size="11" '
            f'font-family="sans-serif">{pt.id}</text>'
        )
    legend = [
        ("extreme supported", "circle"),
        ("supported", "square"),
        ("unsupported", "cross"),
        ("dominated", "diamond"),
    ]
    ly = margin
    for name, _marker in legend:
        body.append(
            f'<text x="{size - margin - 130}" y="{ly}" font-size="11" '
            f'font-family="sans-serif">{name}</text>'
        )
        ly += 16
    return _svg(size, size, body)

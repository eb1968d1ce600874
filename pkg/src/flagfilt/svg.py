"""Persistence diagram SVG emitter.

Zero-dependency and deterministic: a fixed 600x600 viewport, birth on the
x axis, death on the y axis, the diagonal as a reference line, one marker
per interval.  Infinite intervals are drawn as triangles in a band above
the finite range.  Coordinates are formatted with a fixed precision so a
given barcode always renders to the same bytes.
"""

from __future__ import annotations

from fractions import Fraction

from .barcodes import Barcode, grade_value

__all__ = ["persistence_diagram_svg"]

_SIZE = 600
_MARGIN = 60
_INF_BAND = 36
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _numeric_span(code: Barcode) -> tuple[Fraction, Fraction]:
    values = []
    for iv in code.reported():
        for g in (iv.birth, iv.death):
            if g is None:
                continue
            v = grade_value(g)
            if v is not None:
                values.append(v)
    if not values:
        return Fraction(0), Fraction(1)
    lo, hi = min(values), max(values)
    if lo == hi:
        hi = lo + 1
    return lo, hi


def persistence_diagram_svg(code: Barcode, title: str = "") -> str:
    lo, hi = _numeric_span(code)
    span = hi - lo
    plot = _SIZE - 2 * _MARGIN - _INF_BAND

    def x_of(value: Fraction) -> float:
        return _MARGIN + float((value - lo) / span) * plot

    def y_of(value: Fraction) -> float:
        return _SIZE - _MARGIN - float((value - lo) / span) * plot

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE}" '
        f'viewBox="0 0 {_SIZE} {_SIZE}">',
        f'<rect width="{_SIZE}" height="{_SIZE}" fill="white"/>',
    ]
    if title:
        parts.append(
            f'<text x="{_SIZE // 2}" y="28" text-anchor="middle" '
            f'font-family="sans-serif" font-size="16">{title}</text>'
        )
    # axes
    x0, y0 = _MARGIN, _SIZE - _MARGIN
    x1, y1 = _SIZE - _MARGIN, _MARGIN
    parts.append(
        f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black" stroke-width="1"/>'
    )
    # diagonal over the finite plotting range
    parts.append(
        f'<line x1="{_fmt(x_of(lo))}" y1="{_fmt(y_of(lo))}" '
        f'x2="{_fmt(x_of(hi))}" y2="{_fmt(y_of(hi))}" '
        f'stroke="#999999" stroke-width="1" stroke-dasharray="4 3"/>'
    )
    # infinity band
    inf_y = y_of(hi) - _INF_BAND
    parts.append(
        f'<line x1="{x0}" y1="{_fmt(inf_y)}" x2="{x1}" y2="{_fmt(inf_y)}" '
        f'stroke="#bbbbbb" stroke-width="1" stroke-dasharray="2 3"/>'
    )
    parts.append(
        f'<text x="{x1 - 8}" y="{_fmt(inf_y - 6)}" text-anchor="end" '
        f'font-family="sans-serif" font-size="12" fill="#555555">inf</text>'
    )
    parts.append(
        f'<text x="{_SIZE // 2}" y="{_SIZE - 18}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">birth</text>'
    )
    parts.append(
        f'<text x="18" y="{_SIZE // 2}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 18 {_SIZE // 2})">death</text>'
    )
    # markers: sort for byte-stable output
    for iv in sorted(
        code.reported(),
        key=lambda iv: (iv.dim, iv.birth_index, iv.death_index is None, iv.death_index or 0),
    ):
        b = grade_value(iv.birth)
        if b is None:
            b = Fraction(iv.birth_index)
        color = _PALETTE[iv.dim % len(_PALETTE)]
        cx = x_of(b)
        if iv.death is None:
            cy = inf_y
            parts.append(
                f'<path d="M {_fmt(cx)} {_fmt(cy - 5)} L {_fmt(cx - 5)} {_fmt(cy + 4)} '
                f'L {_fmt(cx + 5)} {_fmt(cy + 4)} Z" fill="{color}" fill-opacity="0.85"/>'
            )
        else:
            d = grade_value(iv.death)
            if d is None:
                d = Fraction(iv.death_index if iv.death_index is not None else 0)
            parts.append(
                f'<circle cx="{_fmt(cx)}" cy="{_fmt(y_of(d))}" r="4" '
                f'fill="{color}" fill-opacity="0.85"/>'
            )
    # legend
    for i, dim in enumerate(code.dims()):
        color = _PALETTE[dim % len(_PALETTE)]
        lx = _SIZE - _MARGIN - 70
        ly = _MARGIN + 16 * i
        parts.append(f'<circle cx="{lx}" cy="{ly}" r="4" fill="{color}"/>')
        parts.append(
            f'<text x="{lx + 10}" y="{ly + 4}" font-family="sans-serif" '
            f'font-size="12">H{dim}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

"""Minimal self-contained SVG line charts for ROC curves.

Emits plain SVG text (axes, grid, legend, one polyline per curve) with
fixed number formatting, so identical inputs produce identical bytes.
"""

PALETTE = [
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
    "#e377c2",
]

_W, _H = 640, 480
_LEFT, _RIGHT, _TOP, _BOTTOM = 64, 24, 44, 56


def _x(v):
    return _LEFT + v * (_W - _LEFT - _RIGHT)


def _y(v):
    return _TOP + (1.0 - v) * (_H - _TOP - _BOTTOM)


def render_roc_svg(curves, title="ROC") -> str:
    """Render curves as an SVG document string.

    Args:
        curves: list of (label, fpr, tpr) with fpr/tpr value sequences.
        title: chart heading.
    """
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2:.1f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{title}</text>',
    ]

    # grid and tick labels every 0.1
    for i in range(11):
        v = i / 10.0
        gx, gy = _x(v), _y(v)
        parts.append(
            f'<line x1="{gx:.1f}" y1="{_y(0):.1f}" x2="{gx:.1f}" y2="{_y(1):.1f}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<line x1="{_x(0):.1f}" y1="{gy:.1f}" x2="{_x(1):.1f}" y2="{gy:.1f}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{gx:.1f}" y="{_y(0) + 18:.1f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{v:.1f}</text>'
        )
        parts.append(
            f'<text x="{_x(0) - 8:.1f}" y="{gy + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{v:.1f}</text>'
        )

    # chance diagonal and axes
    parts.append(
        f'<line x1="{_x(0):.1f}" y1="{_y(0):.1f}" x2="{_x(1):.1f}" y2="{_y(1):.1f}" '
        f'stroke="#999999" stroke-width="1" stroke-dasharray="5,4"/>'
    )
    parts.append(
        f'<rect x="{_x(0):.1f}" y="{_y(1):.1f}" width="{_x(1) - _x(0):.1f}" '
        f'height="{_y(0) - _y(1):.1f}" fill="none" stroke="black" stroke-width="1"/>'
    )
    parts.append(
        f'<text x="{(_x(0) + _x(1)) / 2:.1f}" y="{_H - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">False positive rate</text>'
    )
    parts.append(
        f'<text x="18" y="{(_y(0) + _y(1)) / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 18 {(_y(0) + _y(1)) / 2:.1f})">True positive rate</text>'
    )

    for idx, (label, fpr, tpr) in enumerate(curves):
        color = PALETTE[idx % len(PALETTE)]
        pts = " ".join(f"{_x(f):.2f},{_y(t):.2f}" for f, t in zip(fpr, tpr))
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="2"/>'
        )

    # legend, bottom-right inside the plot area
    lx = _x(1) - 200
    ly = _y(0) - 18 * len(curves) - 10
    for idx, (label, _, _) in enumerate(curves):
        color = PALETTE[idx % len(PALETTE)]
        yy = ly + 18 * idx
        parts.append(
            f'<line x1="{lx:.1f}" y1="{yy:.1f}" x2="{lx + 26:.1f}" y2="{yy:.1f}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{lx + 32:.1f}" y="{yy + 4:.1f}" font-family="sans-serif" '
            f'font-size="12">{label}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_roc_svg(path, curves, title="ROC") -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_roc_svg(curves, title=title))

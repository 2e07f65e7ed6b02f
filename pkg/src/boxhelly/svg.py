"""Static SVG pictures of planar box families and color systems."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence, Union
from xml.sax.saxutils import escape

from .core import AxisBox, Point
from .errors import DimensionError
from .piercing import ColorSystem, Family

PALETTE = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
)


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def render_svg(
    content: Union[Family, ColorSystem, "object"],
    witness: Optional[Sequence[Point]] = None,
    width: int = 600,
    height: int = 600,
    margin: int = 20,
    title: Optional[str] = None,
) -> str:
    """One ``<g>`` per class holding one ``<rect>`` per box; witnesses as crosses.

    ``content`` may be a family, a color system or an instance document of
    either. Coordinates are exact until the final scaling to pixels.
    """
    payload = getattr(content, "payload", content)
    dim = getattr(content, "dim", None) if payload is not content else None
    if isinstance(payload, ColorSystem):
        classes = [list(c) for c in payload.classes]
    elif isinstance(payload, Family):
        classes = [list(payload)]
    else:
        raise TypeError("render_svg takes a family or a color system")
    boxes = [b for c in classes for b in c]
    if dim is None:
        dim = boxes[0].dim if boxes else 2
    if dim != 2 or any(b.dim != 2 for b in boxes):
        raise DimensionError("render_svg needs planar (d = 2) boxes")
    witness = [tuple(p) for p in (witness or [])]
    if any(len(p) != 2 for p in witness):
        raise DimensionError("witness points must be planar")

    xs = [s for b in boxes for s in (b.sides[0].lo, b.sides[0].hi)] + [p[0] for p in witness]
    ys = [s for b in boxes for s in (b.sides[1].lo, b.sides[1].hi)] + [p[1] for p in witness]
    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
    ]
    if title:
        lines.append(f"<title>{escape(title)}</title>")
    lines.append(f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>')
    if xs:
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
        span = max(x1 - x0, y1 - y0) or Fraction(1)
        scale = Fraction(min(width, height) - 2 * margin) / span

        def px(x):
            return float(margin + (x - x0) * scale)

        def py(y):
            return float(height - margin - (y - y0) * scale)

        for k, cls in enumerate(classes):
            color = PALETTE[k % len(PALETTE)]
            lines.append(
                f'<g id="class-{k + 1}" fill="{color}" fill-opacity="0.18" stroke="{color}" stroke-width="1.5">'
            )
            for i, b in enumerate(cls):
                left, right = px(b.sides[0].lo), px(b.sides[0].hi)
                top, bottom = py(b.sides[1].hi), py(b.sides[1].lo)
                lines.append(
                    f'<rect x="{_fmt(left)}" y="{_fmt(top)}" width="{_fmt(right - left)}" '
                    f'height="{_fmt(bottom - top)}"><title>B[{k + 1},{i + 1}]</title></rect>'
                )
            lines.append("</g>")
        if witness:
            lines.append('<g class="witness" stroke="black" stroke-width="2">')
            arm = 6
            for p in witness:
                cx, cy = px(p[0]), py(p[1])
                lines.append(
                    f'<path class="cross" d="M {_fmt(cx - arm)} {_fmt(cy - arm)} L {_fmt(cx + arm)} {_fmt(cy + arm)} '
                    f'M {_fmt(cx - arm)} {_fmt(cy + arm)} L {_fmt(cx + arm)} {_fmt(cy - arm)}"/>'
                )
            lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"

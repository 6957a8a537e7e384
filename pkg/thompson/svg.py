"""SVG plot of an element: the unit square, its graph and the dashed diagonal.

Coordinates are written as exact decimals; every dyadic has a finite one.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from thompson.dyadic import Dyadic
from thompson.plf import PLHomeo


def _coord(value: Dyadic, size: int, margin: int) -> str:
    return (value * size + margin).to_decimal()


def render_svg(f: PLHomeo, size: int = 400, margin: int = 20, title: str | None = None) -> str:
    """Standalone SVG document of the graph of f; ``title`` is XML-escaped."""
    total = size + 2 * margin
    points = " ".join(
        f"{_coord(x, size, margin)},{_coord(1 - y, size, margin)}" for x, y in f.breakpoints
    )
    low, high = str(margin), str(margin + size)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" viewBox="0 0 {total} {total}">',
    ]
    if title:
        lines.append(f"  <title>{escape(title)}</title>")
    lines.extend(
        [
            f'  <rect x="{margin}" y="{margin}" width="{size}" height="{size}" fill="none" stroke="#888"/>',
            f'  <line x1="{low}" y1="{high}" x2="{high}" y2="{low}" stroke="#888" stroke-dasharray="4 4"/>',
            f'  <polyline points="{points}" fill="none" stroke="#1f4e8c" stroke-width="2"/>',
            "</svg>",
        ]
    )
    return "\n".join(lines) + "\n"

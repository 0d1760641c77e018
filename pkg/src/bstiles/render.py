"""SVG drawings of patches.

Each cell g becomes one polygon at horizontal coordinate alpha(g) (m/n)^height(g),
one unit wide.  Heights are stacked top to bottom in decreasing order, and the
different levels sharing a height get their own sub-row inside the band.
"""
from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

from .group import alpha, level_coordinates
from .wang import Patch

UNIT = 48
ROW = 34
MARGIN = 12
PALETTE = ("#e8d9a8", "#b9d7ea", "#f2b5a7", "#c7e3b5", "#d9c2e9", "#f7d08a",
           "#a9d6c9", "#e6b8cf", "#cfd8dc", "#ffe0b2")


def _fmt(v) -> str:
    if isinstance(v, tuple):
        return f"{_fmt(v[0])}:{v[1]}"
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def layout(x: Patch) -> list[tuple[Fraction, int, int, object]]:
    """(horizontal coordinate, height, sub-row, cell) for every cell, in drawing order."""
    p = x.params
    ratio = Fraction(p.m, p.n)
    keys_by_height: dict[int, set] = {}
    rows = []
    for g in x.cells:
        key, _ = level_coordinates(g, p)
        keys_by_height.setdefault(g.height, set()).add(key)
        rows.append((alpha(g, p) * ratio**g.height, g.height, key, g))
    sub = {h: {k: i for i, k in enumerate(sorted(ks))} for h, ks in keys_by_height.items()}
    out = [(xc, h, sub[h][key], g) for xc, h, key, g in rows]
    out.sort(key=lambda r: (-r[1], r[2], r[0], r[3]))
    return out


def render_svg(x: Patch, unit: int = UNIT, row: int = ROW) -> str:
    if not x.cells:
        raise ValueError("cannot render an empty patch")
    cells = layout(x)
    heights = sorted({h for _, h, _, _ in cells}, reverse=True)
    depth = {h: max(s for _, hh, s, _ in cells if hh == h) + 1 for h in heights}
    band_top = {}
    y = MARGIN
    for h in heights:
        band_top[h] = y
        y += depth[h] * row + row // 3
    xmin = min(c[0] for c in cells)
    xmax = max(c[0] for c in cells) + 1
    width = float(xmax - xmin) * unit + 2 * MARGIN
    height = y + MARGIN
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1f}" height="{height}" '
             f'viewBox="0 0 {width:.1f} {height}">',
             f'<!-- {x.params}, {len(x.cells)} cells -->',
             '<style>text{font-family:monospace;font-size:9px}</style>']
    for h in heights:
        lines.append(f'<text x="2" y="{band_top[h] + 10}">h={h}</text>')
    for xc, h, s, g in cells:
        i = x.cells[g]
        t = x.tileset.tiles[i]
        x0 = float(xc - xmin) * unit + MARGIN
        y0 = band_top[h] + s * row
        x1, y1 = x0 + unit, y0 + row - 4
        pts = f"{x0:.2f},{y0} {x1:.2f},{y0} {x1:.2f},{y1} {x0:.2f},{y1}"
        title = escape(f"{g}  top={[_fmt(v) for v in t.top]} left={_fmt(t.left)} "
                       f"right={_fmt(t.right)} bottom={[_fmt(v) for v in t.bottom]}")
        lines.append(f'<polygon points="{pts}" fill="{PALETTE[i % len(PALETTE)]}" '
                     f'stroke="#333" stroke-width="0.6"><title>{title}</title></polygon>')
        lines.append(f'<text x="{x0 + 3:.2f}" y="{y0 + 10}">{escape("".join(_fmt(v) for v in t.top))}</text>')
        lines.append(f'<text x="{x0 + 3:.2f}" y="{y1 - 3}">{escape(_fmt(t.left))}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"

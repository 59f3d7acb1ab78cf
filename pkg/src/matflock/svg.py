"""Plain static SVG rendering of a 2-D slice of a cell decomposition.

The slice fixes every coordinate at 0 except two chosen axes and colors each
integer point by the matroid it induces; zero-dimensional cells landing in
the slice are marked with dots.
"""

from __future__ import annotations

from .valuation import Valuation, matroid_at, zero_dimensional_cells

_PALETTE = (
    "#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860",
    "#da8bc3", "#8c8c8c", "#ccb974", "#64b5cd", "#e377c2", "#17becf",
    "#bcbd22", "#aec7e8", "#ffbb78", "#98df8a", "#ff9896", "#c5b0d5",
)

_CELL = 28
_PAD = 46


def render_cells_svg(nu: Valuation, axes, radius: int) -> str:
    """Color the integer points of the (axes) slice by induced matroid."""
    ground = nu.ground
    n = len(ground)
    idx = {e: i for i, e in enumerate(ground)}
    try:
        ax, ay = (idx[a] for a in axes)
    except KeyError as exc:
        raise ValueError(f"unknown axis element {exc.args[0]!r}") from None
    if ax == ay:
        raise ValueError("axes must be two distinct elements")

    colors: dict = {}
    squares = []
    span = 2 * radius + 1
    for x in range(-radius, radius + 1):
        for y in range(-radius, radius + 1):
            alpha = [0] * n
            alpha[ax] = x
            alpha[ay] = y
            M = matroid_at(nu, tuple(alpha))
            key = M.masks
            if key not in colors:
                colors[key] = _PALETTE[len(colors) % len(_PALETTE)]
            px = _PAD + (x + radius) * _CELL
            py = _PAD + (radius - y) * _CELL
            squares.append(
                f'<rect x="{px}" y="{py}" width="{_CELL}" height="{_CELL}" '
                f'fill="{colors[key]}" stroke="#ffffff" stroke-width="1">'
                f'<title>alpha[{ground[ax]!r}]={x}, alpha[{ground[ay]!r}]={y}: '
                f'{len(key)} bases</title></rect>')

    dots = []
    for cell in zero_dimensional_cells(nu):
        if all(cell[i] == 0 for i in range(n) if i not in (ax, ay)) and \
           abs(cell[ax]) <= radius and abs(cell[ay]) <= radius:
            px = _PAD + (cell[ax] + radius) * _CELL + _CELL // 2
            py = _PAD + (radius - cell[ay]) * _CELL + _CELL // 2
            dots.append(f'<circle cx="{px}" cy="{py}" r="5" fill="#000000"/>')

    size = 2 * _PAD + span * _CELL
    label_x = f'<text x="{size // 2}" y="{size - 10}" text-anchor="middle" ' \
              f'font-size="13">alpha[{ground[ax]}]</text>'
    label_y = f'<text x="14" y="{size // 2}" text-anchor="middle" font-size="13" ' \
              f'transform="rotate(-90 14 {size // 2})">alpha[{ground[ay]}]</text>'
    body = "\n".join(squares + dots + [label_x, label_y])
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">\n'
        f'<rect width="{size}" height="{size}" fill="#fafafa"/>\n'
        f'{body}\n</svg>\n'
    )

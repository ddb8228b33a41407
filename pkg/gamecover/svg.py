"""
Deterministic SVG drawings of the half planes induced by the difference
columns of a 3-strategy player.
"""
from __future__ import annotations
from typing import List, Sequence, Tuple
from fractions import Fraction

from . import config, exceptions
from .indifference import DifferenceMatrix
from .utils import format_decimal, format_rational

Point = Tuple[Fraction, Fraction]

PREAMBLE = """\
<?xml version="1.0" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN"
"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">
<svg width="%(size)s" height="%(size)s" viewBox="0 0 %(size)s %(size)s" version="1.1"
    xmlns="http://www.w3.org/2000/svg">
<rect x="0" y="0" width="%(size)s" height="%(size)s" style="fill:#ffffff"/>
"""

POSTAMBLE = """\
</svg>
"""

MARKER = (
    '<marker id="head-%(color)s" markerWidth="10" markerHeight="10" refX="9" refY="5" '
    'orient="auto"><path d="M0,0 L10,5 L0,10 z" style="fill:%(color)s"/></marker>'
)


class SVG:
    """
    A fixed-size document; coordinates are exact rationals in canvas units.
    """

    def __init__(self, size: int):
        self.size = size
        self.defs: List[str] = []
        self.commands: List[str] = []

    def marker(self, color: str) -> None:
        entry = MARKER % {'color': color}
        if entry not in self.defs:
            self.defs.append(entry)

    def line(self, start: Point, end: Point, color: str = '#000000', width: str = "1", extra: str = "") -> None:
        self.commands.append(
            '<line x1="%s" y1="%s" x2="%s" y2="%s" style="stroke:%s;stroke-width:%s"%s/>' % (
                format_decimal(start[0]), format_decimal(start[1]),
                format_decimal(end[0]), format_decimal(end[1]),
                color, width, extra,
            )
        )

    def polygon(self, points: Sequence[Point], color: str, opacity: str) -> None:
        self.commands.append(
            '<polygon points="%s" style="fill:%s;fill-opacity:%s;stroke:none"/>' % (
                ' '.join('%s,%s' % (format_decimal(x), format_decimal(y)) for x, y in points),
                color,
                opacity,
            )
        )

    def to_string(self) -> str:
        parts = [PREAMBLE % {'size': self.size}]
        if self.defs:
            parts.append('<defs>\n' + '\n'.join(self.defs) + '\n</defs>\n')
        parts.extend(item + '\n' for item in self.commands)
        parts.append(POSTAMBLE)
        return ''.join(parts)

    def save(self, filename: str) -> None:
        with open(filename, 'w', encoding='utf-8', newline='\n') as f:
            f.write(self.to_string())


def clip_half_plane(polygon: Sequence[Point], normal: Point) -> List[Point]:
    """
    Part of a convex polygon where v . normal <= 0, computed exactly.
    """
    def side(p: Point) -> Fraction:
        return p[0] * normal[0] + p[1] * normal[1]

    clipped: List[Point] = []
    for k, current in enumerate(polygon):
        following = polygon[(k + 1) % len(polygon)]
        f_current, f_following = side(current), side(following)
        if f_current <= 0:
            clipped.append(current)
        if (f_current < 0 < f_following) or (f_following < 0 < f_current):
            t = f_current / (f_current - f_following)
            clipped.append((current[0] + t * (following[0] - current[0]),
                            current[1] + t * (following[1] - current[1])))
    return clipped


def half_space_figure(D: DifferenceMatrix) -> SVG:
    """
    Axes, one arrow per column d of D and the shaded half plane {v : v . d <= 0}
    of each, on a square canvas centered at the origin. The longest
    component is drawn at 250 units from the center.
    """
    if len(D.rows) != 2:
        raise exceptions.DimensionMismatchException(
            f"half plane diagrams need two difference rows, got {len(D.rows)}")
    size = config.get_svg_canvas_size()
    colors = config.get_svg_arrow_colors()
    opacity = config.get_svg_fill_opacity()
    center = Fraction(size, 2)
    columns = [D.column(j) for j in range(D.m)]
    largest = max((abs(v) for column in columns for v in column), default=Fraction(0))
    scale = Fraction(250) / largest if largest else Fraction(1)

    def to_canvas(p: Point) -> Point:
        return center + scale * p[0], center - scale * p[1]

    reach = center / scale
    square = [(-reach, -reach), (reach, -reach), (reach, reach), (-reach, reach)]

    svg = SVG(size)
    for j, d in enumerate(columns):
        color = colors[j % len(colors)]
        region = clip_half_plane(square, (d[0], d[1]))
        if len(region) >= 3:
            svg.polygon([to_canvas(p) for p in region], color, opacity)
    svg.line((Fraction(0), center), (Fraction(size), center))
    svg.line((center, Fraction(0)), (center, Fraction(size)))
    for j, d in enumerate(columns):
        color = colors[j % len(colors)]
        svg.marker(color)
        data = ' data-d="%s,%s" marker-end="url(#head-%s)"' % (
            format_rational(d[0]), format_rational(d[1]), color)
        svg.line((center, center), to_canvas((d[0], d[1])), color, "2", data)
    return svg


def half_space_diagram(D: DifferenceMatrix) -> str:
    return half_space_figure(D).to_string()

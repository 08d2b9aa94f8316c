"""Slope-set algebra: Newton/Hodge polygons as sorted multisets of rationals.

A polygon is the graph of the convex piecewise-linear function through
(0, 0) whose successive increments are the sorted slopes.  Concatenation,
truncation, comparison and terminal points all act on the slope multiset;
vertices are derived on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import INFINITE


@dataclass(frozen=True)
class ValUnit:
    """Valuation normalization tag; prevents silent mixing of polygon scales."""

    kind: str
    p: int | None = None
    n: int | None = None
    q: int | None = None

    @classmethod
    def pi_adic(cls, p: int, n: int) -> ValUnit:
        return cls("pi-adic", p=p, n=n)

    @classmethod
    def q_adic(cls, q: int) -> ValUnit:
        return cls("q-adic", q=q)

    @classmethod
    def abstract(cls) -> ValUnit:
        return cls("abstract")

    def __str__(self) -> str:
        if self.kind == "pi-adic":
            return f"pi-adic(p={self.p},n={self.n})"
        if self.kind == "q-adic":
            return f"q-adic(q={self.q})"
        return "abstract"


ABSTRACT = ValUnit.abstract()


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"slope must be rational, got {type(x).__name__}")


@dataclass(frozen=True)
class SlopePolygon:
    """Finite multiset of rational slopes, sorted ascending, plus a unit tag.

    ``infinite`` counts slopes at +infinity (e.g. zero columns of a matrix);
    they are reported separately and excluded from all vertex arithmetic.
    """

    slopes: tuple[Fraction, ...]
    unit: ValUnit
    infinite: int = 0

    @classmethod
    def from_slopes(cls, slopes, unit: ValUnit, infinite: int = 0) -> SlopePolygon:
        return cls(tuple(sorted(_as_fraction(s) for s in slopes)), unit, infinite)

    @classmethod
    def from_point_valuations(cls, vals, unit: ValUnit) -> SlopePolygon:
        """Polygon of the lower convex hull of {(i, vals[i])}, skipping INFINITE.

        vals[0] must be 0 (series normalized to constant term 1).  The slope
        count equals the largest index with finite valuation.
        """
        points: list[tuple[int, Fraction]] = []
        for i, v in enumerate(vals):
            if v is INFINITE or v is None:
                continue
            points.append((i, _as_fraction(v)))
        if not points or points[0] != (0, Fraction(0)):
            raise ValueError("valuations must start with v(c_0) = 0")
        hull = _lower_hull(points)
        slopes: list[Fraction] = []
        for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
            s = Fraction(y1 - y0, x1 - x0)
            slopes.extend([s] * (x1 - x0))
        return cls(tuple(slopes), unit)

    def __len__(self) -> int:
        return len(self.slopes)

    def __str__(self) -> str:
        body = ", ".join(str(s) for s in self.slopes)
        tail = f" (+{self.infinite} infinite)" if self.infinite else ""
        return f"{{{body}}} [{str(self.unit)}]{tail}"

    def _check_unit(self, other: SlopePolygon) -> None:
        if self.unit != other.unit:
            raise ValueError(f"unit mismatch: {self.unit} vs {other.unit}")

    def concat(self, other: SlopePolygon) -> SlopePolygon:
        self._check_unit(other)
        return SlopePolygon.from_slopes(
            self.slopes + other.slopes, self.unit, self.infinite + other.infinite
        )

    def truncate_below(self, r) -> SlopePolygon:
        """Keep exactly the slopes < r (infinite slopes are dropped)."""
        r = _as_fraction(r)
        return SlopePolygon(tuple(s for s in self.slopes if s < r), self.unit)

    def scale(self, factor, unit: ValUnit | None = None) -> SlopePolygon:
        """Multiply every slope by a positive factor; retags the unit.

        The result carries ``unit`` if given, else the abstract tag: scaling
        is exactly the explicit conversion step between normalizations.
        """
        factor = _as_fraction(factor)
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return SlopePolygon(
            tuple(s * factor for s in self.slopes),
            unit if unit is not None else ABSTRACT,
            self.infinite,
        )

    def vertices(self) -> list[tuple[int, Fraction]]:
        out = [(0, Fraction(0))]
        acc = Fraction(0)
        for i, s in enumerate(self.slopes):
            acc += s
            out.append((i + 1, acc))
        return out

    def terminal(self) -> tuple[int, Fraction]:
        return (len(self.slopes), sum(self.slopes, Fraction(0)))

    def y_at(self, i: int) -> Fraction:
        if not 0 <= i <= len(self.slopes):
            raise ValueError("index outside polygon range")
        return sum(self.slopes[:i], Fraction(0))

    def lies_on_or_above(self, other: SlopePolygon) -> bool:
        """Pointwise >= comparison on the common x-range (breakpoints suffice)."""
        self._check_unit(other)
        m = min(len(self.slopes), len(other.slopes))
        return all(self.y_at(i) >= other.y_at(i) for i in range(m + 1))

    def shares_terminal_point(self, other: SlopePolygon) -> bool:
        self._check_unit(other)
        return self.terminal() == other.terminal()

    def to_csv(self) -> str:
        lines = ["index,x,y_num,y_den"]
        for i, (x, y) in enumerate(self.vertices()):
            lines.append(f"{i},{x},{y.numerator},{y.denominator}")
        return "\n".join(lines) + "\n"


def _lower_hull(points: list[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    """Lower convex hull of points with strictly increasing x."""
    hull: list[tuple[int, Fraction]] = []
    for pt in points:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            # Drop middle point when it is on or above segment (x0,y0)-(pt).
            if (y1 - y0) * (pt[0] - x0) >= (pt[1] - y0) * (x1 - x0):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def render_svg(polygons: list[tuple[str, SlopePolygon]], width: int = 480, height: int = 360) -> str:
    """Render one or more polygons on shared axes as a standalone SVG document."""
    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"]
    all_vertices = [poly.vertices() for _, poly in polygons]
    xmax = max((v[-1][0] for v in all_vertices), default=1) or 1
    ymax = max((max(float(y) for _, y in v) for v in all_vertices), default=1.0) or 1.0
    pad = 40.0

    def sx(x: float) -> float:
        return pad + x / xmax * (width - 2 * pad)

    def sy(y: float) -> float:
        return height - pad - y / ymax * (height - 2 * pad)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
    ]
    for idx, (label, poly) in enumerate(polygons):
        color = colors[idx % len(colors)]
        verts = poly.vertices()
        pts = " ".join(f"{sx(x):.2f},{sy(float(y)):.2f}" for x, y in verts)
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        for x, y in verts:
            parts.append(f'<circle cx="{sx(x):.2f}" cy="{sy(float(y)):.2f}" r="2.5" fill="{color}"/>')
            parts.append(
                f'<text x="{sx(x) + 4:.2f}" y="{sy(float(y)) - 4:.2f}" font-size="9" '
                f'fill="{color}">({x},{y})</text>'
            )
        parts.append(
            f'<text x="{pad + 4}" y="{pad + 14 * (idx + 1)}" font-size="11" fill="{color}">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

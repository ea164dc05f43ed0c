"""SVG drawings of real line arrangements.

Lines are dehomogenized in an affine chart, clipped to a rectangular window
around the circled points, and drawn as chords.  All incidence decisions are
made exactly; floating point only enters when turning the exact affine data
into pixel positions.
"""
from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .arrangement import Arrangement, IncidenceCensus, census
from .projective import dot, is_number_field
from .scalars import nf_approx

SVG_NS = "http://www.w3.org/2000/svg"


class RenderError(ValueError):
    pass


@dataclass(frozen=True)
class RenderSpec:
    width: int = 600
    height: int = 600
    margin: int = 20
    eps: Fraction = Fraction(1, 10**12)
    radius: float = 4.0
    chart: int = 2  # index of the homogeneous coordinate set to 1
    min_multiplicity: int = 4
    stroke: str = "black"

    def __post_init__(self):
        if Fraction(self.eps) <= 0:
            raise ValueError("eps must be positive")
        if self.width <= 2 * self.margin or self.height <= 2 * self.margin:
            raise ValueError("viewport leaves no drawing area inside the margins")
        if self.chart not in (0, 1, 2):
            raise ValueError("chart must be 0, 1 or 2")


@dataclass
class Drawing:
    svg: str
    chart: tuple
    segments: list = dc_field(default_factory=list)  # ((x1, y1), (x2, y2)) per line, pixels
    circles: list = dc_field(default_factory=list)  # (cx, cy, census index)
    max_incidence_error: float = 0.0  # in units of the viewport size

    def write(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.svg)


def _candidate_charts(first: int) -> list[tuple]:
    axes = [tuple(int(i == j) for j in range(3)) for i in range(3)]
    order = [axes[first]] + [a for i, a in enumerate(axes) if i != first]
    return order + [(1, 1, 1), (1, 2, 3), (3, -2, 1), (2, 5, -3)]


def _completion(h: Sequence[int]) -> tuple:
    """Forms u, v completing h to a basis, and the columns U, V, H of the inverse.

    A point p has affine coordinates (u.p / h.p, v.p / h.p); the affine point
    (X, Y) is the homogeneous point X*U + Y*V + H, so a line l becomes
    (l.U) X + (l.V) Y + (l.H) = 0.
    """
    axes = [tuple(int(i == j) for j in range(3)) for i in range(3)]
    for a in range(3):
        for b in range(a + 1, 3):
            rows = [axes[a], axes[b], tuple(h)]
            det = _det3(rows)
            if det:
                # column c of the inverse is row c of the cofactor matrix over det
                cols = tuple(tuple(Fraction(_minor(rows, c, r) * (-1) ** (r + c), det) for r in range(3)) for c in range(3))
                return (axes[a], axes[b]) + cols
    raise ValueError(f"chart {h} is the zero form")


def _minor(m, i, j) -> int:
    r = [row for k, row in enumerate(m) if k != i]
    c = [[x for k, x in enumerate(row) if k != j] for row in r]
    return c[0][0] * c[1][1] - c[0][1] * c[1][0]


def _det3(m) -> int:
    return sum(m[0][j] * _minor(m, 0, j) * (-1) ** j for j in range(3))


def _approx(x, eps: Fraction) -> float:
    lo, hi = nf_approx(x, eps)
    return float((lo + hi) / 2)


def _fmt(x: float) -> str:
    # enough digits that rounding stays far below the incidence tolerance
    return f"{x:.10f}"


def _chart_ok(A: Arrangement, pts, h) -> bool:
    K = A.field
    hv = [K(c) for c in h]
    for l in A.lines:
        # l is the line at infinity iff it is proportional to h
        if all(l.coords[i] * hv[j] == l.coords[j] * hv[i] for i in range(3) for j in range(3)):
            return False
    return all(dot(p.point.coords, hv) for p in pts)


def _clip(a: float, b: float, c: float, box) -> tuple | None:
    """Chord of the line aX + bY + c = 0 through the box (x0, y0, x1, y1)."""
    x0, y0, x1, y1 = box
    hits = []
    if b:
        for x in (x0, x1):
            y = -(a * x + c) / b
            if y0 - 1e-12 <= y <= y1 + 1e-12:
                hits.append((x, y))
    if a:
        for y in (y0, y1):
            x = -(b * y + c) / a
            if x0 - 1e-12 <= x <= x1 + 1e-12:
                hits.append((x, y))
    if len(hits) < 2:
        return None
    best = max(((p, q) for p in hits for q in hits), key=lambda pq: math.dist(*pq))
    return best if best[0] != best[1] else None


def render_svg(A: Arrangement, spec: RenderSpec | None = None, cen: IncidenceCensus | None = None) -> Drawing:
    spec = spec or RenderSpec()
    if len(A) == 0:
        raise RenderError("empty arrangement")
    K = A.field
    if not is_number_field(K) or not K.selector.is_real:
        raise RenderError("complex embedding not renderable: the field has no selected real embedding")
    eps = Fraction(spec.eps)
    if cen is None:
        cen = census(A) if len(A) > 1 else IncidenceCensus(len(A), ())
    marked = [i for i, p in enumerate(cen.points) if p.multiplicity >= spec.min_multiplicity]

    h = next((h for h in _candidate_charts(spec.chart) if _chart_ok(A, [cen.points[i] for i in marked], h)), None)
    if h is None:
        raise RenderError("no affine chart keeps every line and marked point finite")
    u, v, U, V, H = _completion(h)
    hv, uv, vv = ([K(c) for c in f] for f in (h, u, v))

    def affine_point(p):
        w = dot(p, hv)
        return _approx(dot(p, uv) / w, eps), _approx(dot(p, vv) / w, eps)

    lines = [[_approx(dot(l.coords, [K(x) for x in col]), eps) for col in (U, V, H)] for l in A.lines]
    centers = [affine_point(cen.points[i].point.coords) for i in marked]

    if centers:
        xs, ys = [c[0] for c in centers], [c[1] for c in centers]
        box = [min(xs), min(ys), max(xs), max(ys)]
    else:
        box = [-1.0, -1.0, 1.0, 1.0]
    cx, cy = (box[0] + box[2]) / 2, (box[1] + box[3]) / 2
    for a, b, c in lines:
        # take in the foot of the perpendicular from the centre so every line crosses the window
        s = (a * cx + b * cy + c) / (a * a + b * b)
        box = [min(box[0], cx - a * s), min(box[1], cy - b * s), max(box[2], cx - a * s), max(box[3], cy - b * s)]
    cx, cy = (box[0] + box[2]) / 2, (box[1] + box[3]) / 2
    span = 1.16 * max(box[2] - box[0], box[3] - box[1], 1e-9)
    box = [cx - span / 2, cy - span / 2, cx + span / 2, cy + span / 2]
    inner_w, inner_h = spec.width - 2 * spec.margin, spec.height - 2 * spec.margin
    scale = min(inner_w, inner_h) / span

    def px(x: float, y: float) -> tuple[float, float]:
        return (
            spec.margin + (inner_w - span * scale) / 2 + (x - box[0]) * scale,
            spec.height - spec.margin - (inner_h - span * scale) / 2 - (y - box[1]) * scale,
        )

    root = ET.Element("svg", xmlns=SVG_NS, version="1.1", width=str(spec.width), height=str(spec.height),
                      viewBox=f"0 0 {spec.width} {spec.height}")
    ET.SubElement(root, "rect", x="0", y="0", width=str(spec.width), height=str(spec.height), fill="white")
    g_lines = ET.SubElement(root, "g", stroke=spec.stroke, fill="none")
    g_lines.set("stroke-width", "1")
    segments = []
    for i, (a, b, c) in enumerate(lines):
        chord = _clip(a, b, c, box)
        if chord is None:
            raise RenderError(f"line {i} misses the viewport")
        ends = [_fmt(t) for t in px(*chord[0]) + px(*chord[1])]
        x1, y1, x2, y2 = map(float, ends)
        segments.append(((x1, y1), (x2, y2)))
        ET.SubElement(g_lines, "line", id=f"l{i}", x1=ends[0], y1=ends[1], x2=ends[2], y2=ends[3])

    g_pts = ET.SubElement(root, "g", stroke=spec.stroke, fill="white")
    circles = []
    worst = 0.0
    size = float(min(spec.width, spec.height))
    for idx, (x, y) in zip(marked, centers):
        sx, sy = (_fmt(t) for t in px(x, y))
        X, Y = float(sx), float(sy)
        circles.append((X, Y, idx))
        ET.SubElement(g_pts, "circle", id=f"p{idx}", cx=sx, cy=sy, r=f"{spec.radius:g}")
        for li in cen.points[idx].lines:
            (x1, y1), (x2, y2) = segments[li]
            d = abs((x2 - x1) * (y1 - Y) - (x1 - X) * (y2 - y1)) / math.hypot(x2 - x1, y2 - y1)
            worst = max(worst, d / size)
    if worst >= 10 * float(eps):
        raise RenderError(f"rendered incidence off by {worst:.3g} of the viewport")
    ET.indent(root)
    text = '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"
    return Drawing(text, tuple(h), segments, circles, worst)

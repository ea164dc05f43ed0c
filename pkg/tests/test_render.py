import math
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from arrangements.arrangement import Arrangement, census
from arrangements.render import RenderError, RenderSpec, render_svg
from arrangements.scalars import QQ

NS = {"s": "http://www.w3.org/2000/svg"}


def parsed(svg):
    root = ET.fromstring(svg.split("\n", 1)[1])
    lines = {
        e.get("id"): tuple(float(e.get(k)) for k in ("x1", "y1", "x2", "y2")) for e in root.iterfind(".//s:line", NS)
    }
    circles = {e.get("id"): (float(e.get("cx")), float(e.get("cy"))) for e in root.iterfind(".//s:circle", NS)}
    return root, lines, circles


def distance(seg, p):
    x1, y1, x2, y2 = seg
    return abs((x2 - x1) * (y1 - p[1]) - (x1 - p[0]) * (y2 - y1)) / math.hypot(x2 - x1, y2 - y1)


def test_22_4_drawing(a22_pos, tmp_path):
    spec = RenderSpec()
    d = render_svg(a22_pos, spec)
    assert len(d.segments) == 22 and len(d.circles) == 22
    assert d.max_incidence_error < 10 * float(spec.eps)
    path = tmp_path / "a22.svg"
    d.write(path)
    root, lines, circles = parsed(path.read_text())
    assert root.get("width") == "600" and len(lines) == 22 and len(circles) == 22
    # recheck incidences from the file text alone
    cen = census(a22_pos)
    for cid, c in circles.items():
        p = cen.points[int(cid[1:])]
        assert p.multiplicity == 4
        for li in p.lines:
            assert distance(lines[f"l{li}"], c) / 600 < 10 * float(spec.eps)
    # every circle lies inside the canvas
    assert all(0 <= x <= 600 and 0 <= y <= 600 for x, y in circles.values())


def test_26_4_drawing(a26):
    d = render_svg(a26)
    assert len(d.segments) == 26 and len(d.circles) == 26


def test_complex_field_refused(a23):
    with pytest.raises(RenderError, match="complex embedding"):
        render_svg(a23)


def test_chart_fallback_for_line_at_infinity():
    A = Arrangement.from_coords(QQ, [[0, 0, 1]])
    d = render_svg(A)
    assert d.chart != (0, 0, 1)
    assert len(d.segments) == 1 and not d.circles


def test_pencil_marks_its_centre():
    A = Arrangement.from_coords(QQ, [[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, -3, 0], [1, 1, 1]])
    d = render_svg(A)
    assert len(d.circles) == 1
    _, lines, circles = parsed(d.svg)
    (c,) = circles.values()
    assert all(distance(lines[f"l{i}"], c) < 1e-6 for i in range(4))


def test_empty_and_bad_specs():
    with pytest.raises(RenderError):
        render_svg(Arrangement(QQ, ()))
    with pytest.raises(ValueError):
        RenderSpec(eps=Fraction(0))
    with pytest.raises(ValueError):
        RenderSpec(width=30, margin=20)
    with pytest.raises(ValueError):
        RenderSpec(chart=3)

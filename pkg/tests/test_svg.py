from __future__ import annotations

import random
import xml.etree.ElementTree as ET
from fractions import Fraction

from conftest import brute_force_crossings, random_diagram
from hypothesis import given, settings
from hypothesis import strategies as st

from cobcalc.planar import CobordismDiagram, PLCurve, Point2, detect_crossings
from cobcalc.svg import render_svg
from cobcalc.words import cable, surgery

NS = {"s": "http://www.w3.org/2000/svg"}


def rebuild(svg: str):
    """Strands and crossing points recovered from the data-* attributes."""
    root = ET.fromstring(svg)
    strands = []
    for el in root.iterfind(".//*[@class='strand']", NS):
        pts = []
        for tok in el.get("data-points").split():
            x, y = tok.strip("()").split(",")
            pts.append(Point2(Fraction(x), Fraction(y)))
        curve = PLCurve(
            tuple(pts),
            el.get("data-head") or None,
            el.get("data-tail") or None,
            closed=el.get("data-closed") == "1",
        )
        strands.append((curve, el.get("data-label")))
    crossings = {
        Point2(Fraction(c.get("data-x")), Fraction(c.get("data-y")))
        for c in root.iterfind(".//s:circle[@class='crossing']", NS)
    }
    return CobordismDiagram.build(strands), crossings


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_svg_crossings_match_oracle(seed):
    d = random_diagram(random.Random(seed))
    back, marked = rebuild(render_svg(d))
    assert [lab for _, lab in back.strands] == [lab for _, lab in d.strands]
    assert marked == {c.point for c in detect_crossings(d)} == brute_force_crossings(back)


def test_svg_deterministic():
    d = random_diagram(random.Random(7))
    assert render_svg(d, "t") == render_svg(d, "t")


def test_svg_annotations(demo):
    sx, sy = surgery(demo, "A", "B", ["x"]), surgery(demo, "A", "B", ["y"])
    svg = render_svg(cable(sx, sy, ["z"]).diagram)
    root = ET.fromstring(svg)
    notes = [t.text for t in root.iterfind(".//s:text[@class='annotation']", NS)]
    assert "mark (P+,P-) z" in notes
    red = [c for c in root.iterfind(".//s:circle[@class='crossing']", NS) if c.get("fill") == "red"]
    assert len(red) == len(notes)

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from conftest import brute_force_crossings, random_diagram, shapely_faces, shapely_shadow
from hypothesis import given, settings
from hypothesis import strategies as st

from cobcalc.constructions import identity_diagram
from cobcalc.errors import DegenerateIntersection, InvalidDiagram, NotSimple, OverlappingSegments, ParseError
from cobcalc.planar import (
    P,
    CobordismDiagram,
    PLCurve,
    detect_crossings,
    diagram_from_text,
    diagram_to_text,
    invert,
    same_up_to_translation,
    shadow,
    translate,
)

seeds = st.integers(0, 10**6)


def line(y, x0=0, x1=4, label="L"):
    return (PLCurve((P(x0, y), P(x1, y)), "left", "right"), label)


def eye() -> CobordismDiagram:
    # a horizontal strand cutting a 2 x 1 rectangle into areas 3/2 and 1/2
    rect = PLCurve((P(0, Fraction(-1, 4)), P(2, Fraction(-1, 4)), P(2, Fraction(3, 4)), P(0, Fraction(3, 4))), closed=True)
    return CobordismDiagram.build([line(0, -1, 3, "A"), (rect, "B")])


def test_parallel_strands_do_not_cross():
    d = CobordismDiagram.build([line(0), line(1, label="M")])
    assert detect_crossings(d) == []
    assert shadow(d) == 0


def test_symmetric_x():
    d = CobordismDiagram.build(
        [(PLCurve((P(0, -1), P(2, 1))), "L"), (PLCurve((P(0, 1), P(2, -1))), "M")]
    )
    (c,) = detect_crossings(d)
    assert c.point == P(1, 0)
    assert c.strands == (0, 1)


def test_identity_shadow_zero():
    assert shadow(identity_diagram("L")) == 0


def test_unit_square_loop():
    sq = PLCurve((P(0, 0), P(1, 0), P(1, 1), P(0, 1)), closed=True)
    assert shadow(CobordismDiagram.build([(sq, "L")])) == 1


def test_eye():
    d = eye()
    assert shadow(d) == 2
    areas = sorted(f.area for f in shapely_faces(d))
    assert areas == pytest.approx([0.5, 1.5], abs=1e-12)


def test_two_rays_fence_no_area():
    # a U-turn between two left rays bounds no region
    u = PLCurve((P(0, 0), P(2, 0), P(2, 1), P(0, 1)), "left", "left")
    assert shadow(CobordismDiagram.build([(u, "L")])) == 0


def test_touching_is_rejected():
    a = PLCurve((P(0, 0), P(1, 1), P(2, 0)))
    b = PLCurve((P(0, 2), P(1, 1), P(2, 2)))
    with pytest.raises(DegenerateIntersection):
        CobordismDiagram.build([(a, "L"), (b, "M")])


def test_overlap_is_rejected():
    with pytest.raises(OverlappingSegments):
        CobordismDiagram.build([line(0), (PLCurve((P(1, 0), P(2, 0))), "M")])


def test_end_height_must_be_integer():
    with pytest.raises(InvalidDiagram):
        PLCurve((P(0, Fraction(1, 2)), P(1, 0)), "left")


def test_duplicate_end_heights_rejected():
    with pytest.raises(InvalidDiagram):
        CobordismDiagram.build([line(0), (PLCurve((P(5, 0), P(6, 3))), "M"), (PLCurve((P(-3, 3), P(-2, 0)), None, "right"), "N")])


def test_invert_not_simple():
    d = CobordismDiagram.build([line(0), line(1, label="M")])
    with pytest.raises(NotSimple):
        invert(d)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_crossings_match_brute_force(seed):
    d = random_diagram(random.Random(seed), max_strands=12)
    assert {c.point for c in detect_crossings(d)} == brute_force_crossings(d)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_crossing_order_is_lexicographic(seed):
    pts = [c.point for c in detect_crossings(random_diagram(random.Random(seed)))]
    assert pts == sorted(pts)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_shadow_matches_face_oracle(seed):
    d = random_diagram(random.Random(seed))
    s = shadow(d)
    assert s >= 0
    assert float(s) == pytest.approx(shapely_shadow(d), rel=1e-9, abs=1e-9)
    assert (s == 0) == (not shapely_faces(d))


@settings(max_examples=40, deadline=None)
@given(seeds, st.fractions(-20, 20, max_denominator=9))
def test_translation_invariance(seed, dx):
    d = random_diagram(random.Random(seed))
    t = translate(d, dx)
    assert shadow(t) == shadow(d)
    assert len(detect_crossings(t)) == len(detect_crossings(d))
    assert t.ends() == d.ends()
    assert same_up_to_translation(d, t)


def test_translate_zero():
    d = eye()
    assert translate(d, 0) == d


def simple_diagram(rng: random.Random) -> CobordismDiagram:
    while True:
        d = random_diagram(rng, max_strands=4)
        if d.is_simple():
            return d


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_invert_involution_and_shadow(seed):
    d = simple_diagram(random.Random(seed))
    i = invert(d)
    assert shadow(i) == shadow(d)
    assert [lab for _, lab in i.pos_ends] == [lab for _, lab in d.neg_ends]
    assert [lab for _, lab in i.neg_ends] == [lab for _, lab in d.pos_ends]
    assert same_up_to_translation(invert(i), d)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_ends_match_rays(seed):
    d = random_diagram(random.Random(seed))
    pos, neg = d.ends()
    assert sorted(pos) == d.ray_heights("right")
    assert sorted(neg) == d.ray_heights("left")


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_text_round_trip(seed):
    d = random_diagram(random.Random(seed))
    text = diagram_to_text(d)
    back = diagram_from_text(text)
    assert back == d
    assert diagram_to_text(back) == text


def test_annotation_round_trip():
    from cobcalc.demo import demo_presentation
    from cobcalc.words import surgery

    d = surgery(demo_presentation(), "A", "B", ["x", "y"], Fraction(1, 4)).diagram
    assert d.annotations
    text = diagram_to_text(d)
    assert diagram_from_text(text) == d


@pytest.mark.parametrize(
    "text, line_no",
    [
        ("[diagram]\nstrand L : (0,0) (1,0) ; left=0 right=0\nwobble\n", 3),
        ("[diagram]\nstrand L : (0,0) (1,x) ;\n", 2),
        ("[diagram]\nstrand L : (0,0) (1,0) ; left=3\n", 2),
        ("[diagram]\nstrand L : (0,0) (1,0) ;\nmark 7 (P-,P+) x\n", 3),
    ],
)
def test_parse_errors_carry_line(text, line_no):
    with pytest.raises(ParseError) as e:
        diagram_from_text(text)
    assert e.value.line == line_no

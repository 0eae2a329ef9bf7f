from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

import pytest
from conftest import random_atom, random_word
from hypothesis import given, settings
from hypothesis import strategies as st

from cobcalc.demo import demo_presentation, random_presentation
from cobcalc.errors import ActionViolation, BadIndex, EndMismatch, IncompatibleSurgeries, ParseError, TooFewEnds, TooManyEnds, UnknownIntersection
from cobcalc.objects import EMPTY, direct_sum, surgery_object
from cobcalc.planar import shadow
from cobcalc.words import (
    Word,
    compose,
    compose_at_leg,
    distinguished_triangle,
    gen,
    identity,
    insert_void,
    parse_word,
    rotate,
    surgery,
    surgery_sum,
    to_sexpr,
)


@lru_cache(maxsize=None)
def pres(seed: int):
    return demo_presentation() if seed < 0 else random_presentation(seed)


def diagram_matches_word(w: Word) -> bool:
    # void ends carry no strand
    d = w.diagram
    pos, neg = d.ends()
    src = [w.source] if w.source != "0" else []
    return list(pos.values()) == src and [neg[h] for h in sorted(neg)] == [e for e in w.ends if e != "0"]


def test_identity(demo):
    w = identity("A")
    assert w.source == w.target == "A"
    assert w.shadow() == 0
    assert len(w.diagram.strands) == 1


def test_identity_of_empty_object():
    w = identity(EMPTY)
    assert w.diagram.strands == ()


def test_compose_checks_ends(demo):
    with pytest.raises(EndMismatch):
        compose(gen(demo, "g1"), gen(demo, "g1"))


def test_compose_with_identity_is_zero_area_extension(demo):
    g = gen(demo, "g2")
    w = compose(identity(g.target), g)
    assert w.ends == g.ends and w.shadow() == g.shadow()


def test_compose_of_surgeries_end_list(demo):
    s1 = surgery(demo, "A", "B", ["x"])
    s2 = surgery(demo, "B", "C", ["p_s"])
    w = compose(s2, s1)
    assert w.ends == ("[A#x#B]", "[B#p_s#C]", "C")
    assert diagram_matches_word(w)


def test_compose_at_leg(demo):
    s = surgery(demo, "A", "B", ["x"])
    k = gen(demo, "g2")
    with pytest.raises(EndMismatch):
        compose_at_leg(s, 0, k)
    with pytest.raises(BadIndex):
        compose_at_leg(s, 5, identity("B"))
    w = compose_at_leg(rotate(s, 1), 0, k)
    assert w.n_ends == s.n_ends - 1 + len(k.ends)
    assert w.ends == ("C", "B", "[A#x#B]")
    assert w.shadow() == s.shadow() + k.shadow()
    assert compose_at_leg(s, 1, identity("B")).ends == s.ends


def test_rotation_examples(demo):
    s = surgery(demo, "A", "B", ["x"])
    assert rotate(rotate(s, 1), -1) == s
    assert rotate(s, 3) == s
    r = rotate(s, 1)
    # the source becomes the bottom negative end, the top end becomes the source
    assert (r.source, r.ends) == ("B", ("A", "[A#x#B]"))
    assert r.shadow() == s.shadow()
    assert diagram_matches_word(r)


def test_rotation_needs_two_ends():
    with pytest.raises(TooFewEnds):
        rotate(Word("gen", ("g",), "A", ()), 1)


def test_distinguished_triangle(demo):
    s = surgery(demo, "A", "B", ["x"])
    u, ru, rinv = distinguished_triangle(s)
    assert (u.source, u.target) == ("A", "B")
    assert (ru.source, ru.target) == ("B", "[A#x#B]")
    assert (rinv.source, rinv.target) == ("[A#x#B]", "A")
    assert tuple(rotate(w, 1) for w in (u, ru, rinv)) == (ru, rotate(u, 2), u)
    with pytest.raises(TooFewEnds):
        distinguished_triangle(gen(demo, "g1"))
    with pytest.raises(TooManyEnds):
        distinguished_triangle(compose_at_leg(s, 1, rotate(gen(demo, "g2"), 1)))


def test_void_end_triangle():
    w = insert_void(identity("A"))
    u, ru, rinv = distinguished_triangle(w)
    assert u.ends == ("0", "A")
    assert ru.source == "A" and rinv.source == "0"


def test_surgery_object_examples(demo):
    A, B = demo.obj("A"), demo.obj("B")
    plain = surgery_object(A, None, B, None, ())
    assert not plain.marking and plain.components == A.components + B.components
    one = surgery_object(A, None, B, None, demo.points_by_id(A, B, ["x"]))
    assert len(one.marking) == 1 and len(one.double_points) == 1
    with pytest.raises(ActionViolation):
        surgery_object(A, None, B, None, demo.points_by_id(A, B, ["z"]))


def test_surgery_marking_is_union(demo):
    A, B = demo.obj("A"), demo.obj("B")
    AB = surgery_object(A, None, B, None, demo.points_by_id(A, B, ["x"]))
    C = demo.obj("C")
    pts = demo.points(AB, C)
    big = surgery_object(AB, None, C, None, pts[:1])
    assert len(big.marking) == len(AB.marking) + 1


def test_surgery_morphism(demo):
    s = surgery(demo, "A", "B", ["x"])
    assert s.shadow() == 0
    assert s.ends == ("[A#x#B]", "B")
    assert diagram_matches_word(s)
    marks = [a for _, a in s.diagram.annotations if a.kind == "mark"]
    assert marks and all(a.order == ("P-", "P+") for a in marks)
    s2 = surgery(demo, "A", "B", ["x", "y"], Fraction(1, 4))
    assert 0 < s2.shadow() <= Fraction(1, 2)
    with pytest.raises(UnknownIntersection):
        surgery(demo, "A", "B", ["nope"])
    with pytest.raises(ActionViolation):
        surgery(demo, "A", "B", ["z"])


def test_surgery_sum(demo):
    sx = surgery(demo, "A", "B", ["x"])
    sxy = surgery(demo, "A", "B", ["x", "y"])
    empty = surgery(demo, "A", "B", [])
    assert surgery_sum(demo, sx, sx) == empty
    assert surgery_sum(demo, sx, empty) == sx
    assert surgery_sum(demo, sx, surgery(demo, "A", "B", ["y"])) == sxy
    with pytest.raises(IncompatibleSurgeries):
        surgery_sum(demo, sx, surgery(demo, "A", "B", ["x"], 1))


def test_surgery_space_is_power_set(demo):
    from itertools import combinations

    ids = ["x", "y"]
    words = {surgery(demo, "A", "B", list(c)) for r in range(3) for c in combinations(ids, r)}
    assert len(words) == 4
    for a in words:
        for b in words:
            assert surgery_sum(demo, a, b) in words


def test_direct_sum(demo):
    A, B, C = (demo.obj(x) for x in "ABC")
    assert direct_sum(A, EMPTY) == A
    ab_c = direct_sum(direct_sum(A, B), C)
    a_bc = direct_sum(A, direct_sum(B, C))
    assert ab_c.components == a_bc.components
    assert len(ab_c.double_points) == len(A.double_points) + len(B.double_points) + len(C.double_points)


def test_parse_word_errors(demo):
    for text, col in (("(compose (gen g1)", 1), ("(frob A)", 1), ("(rot (gen g1) x)", 15)):
        with pytest.raises(ParseError) as e:
            parse_word(text, demo)
        assert e.value.line == 1 and e.value.column == col


@settings(max_examples=60, deadline=None)
@given(st.integers(-1, 15), st.integers(0, 10**6), st.integers(2, 6))
def test_sexpr_round_trip(pseed, seed, n):
    p = pres(pseed)
    w = random_word(random.Random(seed), p, n)
    if w is None:
        return
    text = to_sexpr(w)
    back = parse_word(text, p)
    assert back == w and to_sexpr(back) == text


@settings(max_examples=40, deadline=None)
@given(st.integers(-1, 15), st.integers(0, 10**6))
def test_shadow_additive(pseed, seed):
    p = pres(pseed)
    rng = random.Random(seed)
    v1 = random_word(rng, p, rng.randint(2, 4))
    if v1 is None or v1.target not in p.objects:
        return
    v2 = random_atom(rng, p, v1.target)
    assert compose(v2, v1).shadow() == shadow(v1.diagram) + shadow(v2.diagram)


@settings(max_examples=40, deadline=None)
@given(st.integers(-1, 15), st.integers(0, 10**6), st.integers(2, 5))
def test_realised_ends_match(pseed, seed, n):
    w = random_word(random.Random(seed), pres(pseed), n)
    if w is None:
        return
    assert diagram_matches_word(w)
    assert diagram_matches_word(rotate(w, 1))

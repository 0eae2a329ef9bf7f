from __future__ import annotations

import random

import pytest
from conftest import random_octahedron, random_square, random_word
from hypothesis import given, settings
from hypothesis import strategies as st

from cobcalc.cabling import braid_ends, cabling_equivalent, check_axioms, naturality_square, octahedron
from cobcalc.demo import demo_presentation, random_presentation
from cobcalc.errors import CobError, NotCommuting, ProfileMismatch
from cobcalc.planar import detect_crossings
from cobcalc.theta import theta
from cobcalc.words import cable, compose, compose_at_leg, gen, identity, rotate, surgery


def braid_markings(w):
    out = []
    while w.op == "braid":
        out.append(w.args[1])
        w = w.args[0]
    return out


def test_cable_ends(demo):
    s = surgery(demo, "A", "B", ["x"])
    w = cable(s, s)
    assert w.source == "[A#x#B]" and w.ends == ("[A#x#B]",)
    with pytest.raises(ProfileMismatch):
        cable(s, identity("A"))


def test_self_cable_has_bare_crossing(demo):
    s = surgery(demo, "A", "B", ["x"])
    d = cable(s, s).diagram
    n_inner = 2 * len(detect_crossings(s.diagram))
    assert len(detect_crossings(d)) == n_inner + 1
    # the cabling crossing P carries no marking
    assert all(a.order == ("P-", "P+") and a.points == ("x",) for _, a in d.annotations)


def test_cable_marking_at_p(demo):
    sx, sy = surgery(demo, "A", "B", ["x"]), surgery(demo, "A", "B", ["y"])
    d = cable(sx, sy, ["z"]).diagram
    at_p = [a for _, a in d.annotations if a.order == ("P+", "P-")]
    assert [a.points for a in at_p] == [("z",)]


def test_equivalence_examples(demo):
    sx, sy, s0 = (surgery(demo, "A", "B", c) for c in (["x"], ["y"], []))
    c = cabling_equivalent(sx, sy, demo)
    assert c.verdict and c.witness == ("z",) and c.verify()
    assert str(c) == "equivalent witness={z}"
    assert c.cable is not None and c.cable.op == "cable"
    same = cabling_equivalent(sx, sx, demo)
    assert same.verdict and same.witness == () and same.verify()
    no = cabling_equivalent(sx, s0, demo)
    assert not no.verdict and no.verify() and no.label == "inequivalent"


def test_equivalence_needs_same_profile(demo):
    assert not cabling_equivalent(gen(demo, "g1"), identity("A"), demo).verdict


def test_braid_single_end(demo):
    g = gen(demo, "g1")
    b, L = braid_ends(g, demo)
    assert b == g and L.label == "B"


def test_braid_three_ends(demo):
    s = surgery(demo, "A", "B", ["x"])
    w = compose_at_leg(s, 1, rotate(gen(demo, "g2"), 1))
    assert len(w.ends) == 3
    b, L = braid_ends(w, demo)
    assert b.ends == (L.label,) and b.source == "A"
    marks = braid_markings(b)
    assert len(marks) == 2
    ends = [demo.obj(e) for e in w.ends]
    assert len(L.double_points) == sum(len(e.double_points) for e in ends) + sum(len(m) for m in marks)
    assert len(L.marking) == sum(len(e.marking) for e in ends) + sum(len(m) for m in marks)
    assert demo.is_iso(theta(b, demo))


def test_braid_of_surgery_is_iso(demo):
    for c in (["x"], ["y"], []):
        b, _ = braid_ends(surgery(demo, "A", "B", c), demo)
        assert demo.is_iso(theta(b, demo))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 40), st.integers(0, 10**6))
def test_braid_two_ends_random(pseed, seed):
    # two negative ends: the braided word is always an isomorphism
    p = random_presentation(pseed)
    w = random_word(random.Random(seed), p, 3)
    if w is None:
        return
    try:
        b, L = braid_ends(w, p)
    except CobError:
        return
    assert b.ends == (L.label,)
    assert p.is_iso(theta(b, p))


def test_check_axioms_demo(demo):
    rep = check_axioms(demo)
    assert rep.ok
    assert rep.counts["ax3"][0] > 0 and rep.counts["ax3"][1] == 0
    assert any("ax3" in ln and "g1" in ln for ln in rep.lines)


def test_axiom3_inverse_pair(demo):
    g = gen(demo, "g1")
    assert theta(compose(rotate(g, 1), g), demo) == demo.identity_class("A")


def test_naturality_self_square(demo):
    s = surgery(demo, "A", "B", ["x"])
    res = naturality_square(identity("A"), s, identity("B"), s, demo)
    assert res.ok and res.marking == ()


def test_naturality_not_commuting(demo):
    sx, s0 = surgery(demo, "A", "B", ["x"]), surgery(demo, "A", "B", [])
    with pytest.raises(NotCommuting):
        naturality_square(identity("A"), sx, identity("B"), s0, demo)


def test_octahedron_demo():
    p = demo_presentation()
    s = surgery(p, "B", "A", ["x*", "y*"])
    res = octahedron(s, surgery(p, "B", "C", []), surgery(p, "A", "C", []), p)
    assert res.ok


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 40), st.integers(0, 10**6))
def test_random_squares_and_octahedra(pseed, seed):
    p = random_presentation(pseed)
    rng = random.Random(seed)
    sq = random_square(rng, p)
    if sq is not None:
        assert naturality_square(*sq, p=p).ok
    oc = random_octahedron(rng, p)
    if oc is not None:
        assert octahedron(*oc, p=p).ok

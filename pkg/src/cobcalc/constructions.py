"""Diagram-level constructions: splicing, rotation, union, surgery, cabling,
braiding.

Each function takes realised diagrams plus the end labels of the result and
returns a new validated diagram.  Layouts are chosen so that no new bounded
face appears unless the construction asks for one (handles, cable loops,
braids); the comments describe which coordinates are free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import EndMismatch, InvalidDiagram, ProfileMismatch
from .planar import (
    LEFT,
    RIGHT,
    Annotation,
    CobordismDiagram,
    P,
    PLCurve,
    Point2,
    rat,
    shift,
)

HANDLE_WIDTH = Fraction(1, 10)


def _rays(d: CobordismDiagram, direction: str) -> list[tuple[int, int, str]]:
    """(height, strand index, 'head'|'tail') for every ray in ``direction``."""
    out = []
    for si, (c, _) in enumerate(d.strands):
        for which, dr, h in c.ends():
            if dr == direction:
                out.append((h, si, which))
    return sorted(out)


def _end_vertex(c: PLCurve, which: str) -> Point2:
    return c.vertices[0] if which == "head" else c.vertices[-1]


def _as_tail(c: PLCurve, which: str) -> PLCurve:
    return c if which == "tail" else c.reversed()


def _bend(c: PLCurve, which: str, path: Sequence[Point2], new_dir: str | None) -> PLCurve:
    """Replace the ray at ``which`` by a polyline through ``path`` (listed
    outwards from the end vertex) followed by a ray in ``new_dir``."""
    c = _as_tail(c, which)
    out = PLCurve(c.vertices + tuple(path), c.head, new_dir, False)
    return out if which == "tail" else out.reversed()


def _join(a: PLCurve, wa: str, b: PLCurve, wb: str, path: Sequence[Point2]) -> PLCurve:
    """Connect the end ``wa`` of ``a`` to the end ``wb`` of ``b`` through ``path``."""
    a = _as_tail(a, wa)
    b = b if wb == "head" else b.reversed()
    return PLCurve(a.vertices + tuple(path) + b.vertices, a.head, b.tail, False)


def _close(c: PLCurve, w1: str, w2: str, path: Sequence[Point2]) -> PLCurve:
    """Join two ends of the same curve (path runs from end w1 to end w2)."""
    c = _as_tail(c, w1)
    return PLCurve(c.vertices + tuple(path), None, None, True)


def _finish(
    strands: list,
    pos_labels: Sequence[str],
    neg_labels: Sequence[str],
    annotations: dict | None = None,
    pivots=(),
) -> CobordismDiagram:
    return _finish_lift(strands, pos_labels, neg_labels, annotations, pivots)[0]


def _finish_lift(strands, pos_labels, neg_labels, annotations=None, pivots=()) -> tuple[CobordismDiagram, int]:
    """Assign end labels by height and lift so every end height is >= 0;
    also returns the lift."""
    tmp = CobordismDiagram(tuple((c, lab) for c, lab in strands), (), (), (), frozenset(pivots))
    pos = [h for h, _, _ in _rays(tmp, RIGHT)]
    neg = [h for h, _, _ in _rays(tmp, LEFT)]
    if len(pos) != len(pos_labels) or len(neg) != len(neg_labels):
        raise EndMismatch(
            f"construction produced {len(pos)}/{len(neg)} ends, expected {len(pos_labels)}/{len(neg_labels)}"
        )
    low = min(pos + neg, default=0)
    dy = -low if low < 0 else 0
    d = CobordismDiagram(
        tuple((c.translated(0, dy), lab) for c, lab in strands),
        tuple((h + dy, lab) for h, lab in zip(pos, pos_labels)),
        tuple((h + dy, lab) for h, lab in zip(neg, neg_labels)),
        tuple((p.shifted(0, dy), a) for p, a in (annotations or {}).items()),
        frozenset(p.shifted(0, dy) for p in pivots),
    )
    d.validate()
    return d, dy


def _labels(d: CobordismDiagram) -> tuple[list[str], list[str]]:
    return [lab for _, lab in d.pos_ends], [lab for _, lab in d.neg_ends]


def _box(d: CobordismDiagram):
    b = d.bbox()
    if b is None:
        return None
    return tuple(Fraction(v) for v in b)


# ---------------------------------------------------------------------------
# identity, union, splice


def identity_diagram(label: str) -> CobordismDiagram:
    """R x L: one horizontal line at height 0."""
    if label == "0":
        return CobordismDiagram()
    return CobordismDiagram.build([(PLCurve((P(0, 0),), LEFT, RIGHT), label)])


def union_diagram(d1: CobordismDiagram, d2: CobordismDiagram) -> CobordismDiagram:
    """Place ``d2`` (no positive end) strictly below ``d1``."""
    if d2.pos_ends:
        raise EndMismatch("the lower summand of a union must have a void source")
    b1, b2 = _box(d1), _box(d2)
    if b1 is None:
        return d2
    if b2 is None:
        return d1
    dy = math.ceil(b2[3]) + 1 - math.floor(b1[1])
    top = shift(d1, 0, dy)
    strands = list(d2.strands) + list(top.strands)
    ann = dict(d2.annotations)
    ann.update(dict(top.annotations))
    pos1, neg1 = _labels(d1)
    _, neg2 = _labels(d2)
    return _finish(strands, pos1, neg2 + neg1, ann, d2.pivots | top.pivots)


def splice_diagram(v: CobordismDiagram, leg: int | None, k: CobordismDiagram, cut: int | None = None) -> CobordismDiagram:
    """Glue the positive end of ``k`` to the negative end of ``v`` of rank
    ``leg`` (0 = lowest non-void end).  For a void leg pass ``leg=None`` and
    ``cut`` = number of non-void ends below it; ``k`` must then have no
    positive end.

    ``k`` is moved up and to the left of ``v``; the ends of ``v`` above the
    leg are bent upwards just left of ``v`` so that they pass over ``k``.  A
    corridor at x = xc joins the leg to k's positive end.  No new bounded
    region appears, so shadows add.
    """
    pos_v, neg_v = _labels(v)
    pos_k, neg_k = _labels(k)
    if leg is None and pos_k:
        raise EndMismatch("a void leg only accepts a word with a void source")
    if leg is not None and not pos_k:
        raise EndMismatch("cannot glue a void source onto a non-void end")
    bv, bk = _box(v), _box(k)
    if bv is None:
        return k
    if bk is None:
        if leg is not None:
            raise EndMismatch("cannot glue an empty diagram onto a non-void end")
        return v
    vneg = _rays(v, LEFT)
    if leg is None:
        cut = len(vneg) if cut is None else cut
        above = vneg[cut:]
    else:
        if not 0 <= leg < len(vneg):
            raise EndMismatch(f"no negative end of rank {leg}")
        above = vneg[leg + 1 :]
        cut = leg
    u = len(above)
    x0 = math.floor(bv[0])
    xc = Fraction(x0 - 2 - u)
    cs = [Fraction(x0 - 1 - (u - 1 - j)) for j in range(u)]
    dx = xc - 1 - math.ceil(bk[2])
    dy = math.ceil(bv[3]) + 1 - math.floor(bk[1])
    kk = shift(k, dx, dy)
    bkk = _box(kk)
    strands_v = [list(s) for s in v.strands]
    strands_k = [list(s) for s in kk.strands]
    # bend the upper legs of v
    for j, (h, si, which) in enumerate(above):
        H = math.ceil(bkk[3]) + 1 + j
        c = strands_v[si][0]
        strands_v[si][0] = _bend(c, which, [Point2(cs[j], Fraction(h)), Point2(cs[j], Fraction(H))], LEFT)
    strands = strands_v + strands_k
    if leg is not None:
        h, si, which = vneg[leg]
        (g, sk, wk), = _rays(kk, RIGHT)
        a = strands_v[si][0]
        b = strands_k[sk][0]
        path = [Point2(xc, Fraction(h)), Point2(xc, Fraction(g))]
        # corridor: from v's leg end to k's positive end vertex
        joined = _join(a, which, b, wk, path)
        strands_v[si][0] = joined
        strands = strands_v + [s for i, s in enumerate(strands_k) if i != sk]
    ann = dict(v.annotations)
    ann.update(dict(kk.annotations))
    # resulting negative labels: v's ends below the leg, k's ends, v's ends above
    neg_labels = neg_v[:cut] + neg_k + neg_v[cut + (0 if leg is None else 1) :]
    return _finish([tuple(s) for s in strands], pos_v, neg_labels, ann, v.pivots | kk.pivots)


# ---------------------------------------------------------------------------
# rotation


def rotate_diagram(d: CobordismDiagram, src_label: str | None, top_void: bool) -> CobordismDiagram:
    """One rotation step: the top negative end becomes the positive end and
    the positive end becomes the bottom negative end.

    ``top_void`` says the word's top end is void (nothing to bend up);
    ``src_label`` is the old source label (None if void).  The top ray is
    bent up around the left side to height ymax+1 and continues to the
    right; the source ray is bent down around the right side to ymin-1 and
    continues to the left.  Both detours run outside the bounding box, so
    the shadow is unchanged.
    """
    pos, neg = _labels(d)
    b = _box(d)
    if b is None:
        return d
    if b[1] < 1:
        # keep the detour below the diagram at a non-negative height
        d = shift(d, 0, 1 - math.floor(b[1]))
        b = _box(d)
    X0 = Fraction(math.floor(b[0]) - 1)
    X1 = Fraction(math.ceil(b[2]) + 1)
    Ytop = Fraction(math.ceil(b[3]) + 1)
    Ybot = Fraction(math.floor(b[1]) - 1)
    strands = [list(s) for s in d.strands]
    new_pos: list[str] = []
    new_neg = list(neg)
    if not top_void:
        h, si, which = _rays(d, LEFT)[-1]
        strands[si][0] = _bend(strands[si][0], which, [Point2(X0, Fraction(h)), Point2(X0, Ytop)], RIGHT)
        new_pos = [new_neg.pop()]
    if src_label is not None:
        (h, si, which), = _rays(d, RIGHT)
        # the same strand may just have been modified; find the ray again
        c = strands[si][0]
        for w2, dr, hh in c.ends():
            if dr == RIGHT and hh == h:
                which = w2
        strands[si][0] = _bend(c, which, [Point2(X1, Fraction(h)), Point2(X1, Ybot)], LEFT)
        new_neg = [pos[0]] + new_neg
    return _finish([tuple(s) for s in strands], new_pos, new_neg, dict(d.annotations), d.pivots)


# ---------------------------------------------------------------------------
# surgery


def surgery_diagram(L: str, Lp: str, target: str, points: Sequence[str], eps=0) -> CobordismDiagram:
    """S_{L,L';c,eps}: L -> (L#L', L').

    Strand L is a horizontal line (positive end L, negative end relabelled
    L#L').  Strand L' comes in at height 1 and dives through the line at
    P = (3, 0), where the marking is recorded; it ends freely below.  For
    eps > 0 and a non-empty marking a rhombus of area eps is drawn at P.
    """
    eps = rat(eps)
    if eps < 0:
        raise InvalidDiagram("handle size must be non-negative")
    reach = 2 * eps + 5
    px = Fraction(3)
    a = PLCurve((Point2(px - reach, 0), Point2(px + reach, 0)), LEFT, RIGHT)
    tail = Point2(px + reach, -reach)
    b = PLCurve((P(px - reach, 1), P(2, 1), tail), LEFT, None)
    strands = [(a, L), (b, Lp)]
    ann = {}
    if points:
        ann[Point2(px, 0)] = Annotation("mark", ("P-", "P+"), tuple(points))
        if eps > 0:
            r, s = HANDLE_WIDTH, eps
            rh = PLCurve(
                (Point2(px + 2 * s, s), Point2(px - r, 2 * r), Point2(px - 2 * s, -s), Point2(px + r, -2 * r)),
                closed=True,
            )
            strands.append((rh, L))
    return _finish(strands, [L], [target, Lp], ann)


# ---------------------------------------------------------------------------
# cabling


@dataclass(frozen=True)
class CableLayout:
    diagram: CobordismDiagram
    offset_v: tuple[Fraction, int]
    offset_vp: tuple[Fraction, int]
    crossing: Point2


def cable_layout(
    v: CobordismDiagram,
    vp: CobordismDiagram,
    new_source: str | None,
    neg_labels: Sequence[str],
    points: Sequence[str] = (),
    eps=0,
) -> CableLayout:
    """Cabling of ``v`` and ``vp`` (same source L, same top end L').

    ``vp`` is placed up and to the left of ``v``.  The positive end of ``v``
    goes right, up over everything and comes down just right of ``vp`` into
    its positive end (the L-path).  The top negative end of ``vp`` goes left,
    up, right over the first path and down into the top negative end of
    ``v`` (the L'-path).  The two paths cross once at P, which carries the
    negative surgery along ``points``.  The lowest end of ``v`` is bent
    below everything and becomes the new positive end.
    """
    eps = rat(eps)
    bv, bp = _box(v), _box(vp)
    if bv is None or bp is None:
        raise ProfileMismatch("cannot cable empty diagrams")
    vpos, vneg = _rays(v, RIGHT), _rays(v, LEFT)
    ppos, pneg = _rays(vp, RIGHT), _rays(vp, LEFT)
    if len(vpos) != 1 or len(ppos) != 1 or not vneg or not pneg:
        raise ProfileMismatch("both words need a source and a non-void top end")
    gap = math.ceil(2 * eps) + 2
    # lift v first so that the detour below it stays at non-negative heights
    pre = max(0, gap - math.floor(bv[1]))
    if pre:
        v = shift(v, 0, pre)
        bv = _box(v)
        vpos, vneg = _rays(v, RIGHT), _rays(v, LEFT)
    # horizontal layout: [vp] XL1 XL2 XB [v]
    x0 = math.floor(bv[0])
    XB = Fraction(x0 - gap)
    XL2 = XB - gap
    XL1 = XL2 - gap
    dxp = XL1 - gap - math.ceil(bp[2])
    dyp = math.ceil(bv[3]) + gap - math.floor(bp[1])
    q = shift(vp, dxp, dyp)
    bq = _box(q)
    X0 = Fraction(math.floor(bq[0]) - gap)
    XR = Fraction(max(math.ceil(bv[2]), math.ceil(bq[2])) + gap)
    Y2 = Fraction(math.ceil(max(bv[3], bq[3])) + gap)
    Y1 = Y2 + gap
    Ybot = Fraction(math.floor(min(bv[1], bq[1])) - gap)
    sv = [list(s) for s in v.strands]
    sq = [list(s) for s in q.strands]
    n = len(sv)
    allc = sv + sq
    owner = list(range(len(allc)))

    def ref(i):
        while owner[i] != i:
            i = owner[i]
        return i

    # L1 end of v bent below: becomes the new source
    hb, bi, bw = vneg[0]
    has_lower = len(vneg) >= 2
    if new_source is not None:
        if not has_lower:
            raise ProfileMismatch("the first word has no lower end to become the source")
        allc[bi][0] = _bend(allc[bi][0], bw, [Point2(XB, Fraction(hb)), Point2(XB, Ybot)], RIGHT)

    def locate(si: int, direction: str, h: int) -> str:
        for w, dr, hh in allc[si][0].ends():
            if dr == direction and hh == h:
                return w
        raise InvalidDiagram("lost track of an end while cabling")

    hs, si_s, _ = vpos[0]
    gs, qi_s, _ = _rays(q, RIGHT)[0]
    qi_s += n
    l_path = [Point2(XR, Fraction(hs)), Point2(XR, Y1), Point2(XL1, Y1), Point2(XL1, Fraction(gs))]
    ws = locate(si_s, RIGHT, hs)
    wq = locate(qi_s, RIGHT, gs)
    joined = _join(allc[si_s][0], ws, allc[qi_s][0], wq, l_path)
    if si_s == qi_s:
        raise InvalidDiagram("unexpected shared strand")
    allc[si_s][0] = joined
    allc[qi_s] = None
    owner[qi_s] = si_s
    ht, ti, _ = vneg[-1]
    gt, qti, _ = _rays(q, LEFT)[-1]
    qti += n
    a_i, b_i = ref(qti), ref(ti)
    lp_path = [Point2(X0, Fraction(gt)), Point2(X0, Y2), Point2(XL2, Y2), Point2(XL2, Fraction(ht))]
    wa = locate(a_i, LEFT, gt)
    wb = locate(b_i, LEFT, ht)
    if a_i == b_i:
        allc[a_i][0] = _close(allc[a_i][0], wa, wb, lp_path)
    else:
        allc[a_i][0] = _join(allc[a_i][0], wa, allc[b_i][0], wb, lp_path)
        allc[b_i] = None
        owner[b_i] = a_i
    strands = [tuple(s) for s in allc if s is not None]
    P0 = Point2(XL1, Y2)
    ann = dict(v.annotations)
    ann.update(dict(q.annotations))
    if points:
        ann[P0] = Annotation("mark", ("P+", "P-"), tuple(points))
        if eps > 0:
            r, s = HANDLE_WIDTH, eps
            rh = PLCurve(
                (P0.shifted(2 * s, s), P0.shifted(-r, 2 * r), P0.shifted(-2 * s, -s), P0.shifted(r, -2 * r)),
                closed=True,
            )
            strands.append((rh, strands[0][1]))
    d, lift = _finish_lift(strands, [new_source] if new_source is not None else [], list(neg_labels), ann, v.pivots | q.pivots)
    return CableLayout(d, (Fraction(0), pre + lift), (dxp, dyp + lift), P0.shifted(0, lift))


def contains_translate(big: CobordismDiagram, small: CobordismDiagram, offset: tuple) -> bool:
    """Every strand of ``small``, moved by ``offset``, appears as a contiguous
    run of vertices (in either direction) of some strand of ``big``."""
    dx, dy = offset
    for c, _ in small.strands:
        seq = tuple(p.shifted(dx, dy) for p in c.vertices)
        hit = False
        for cb, _ in big.strands:
            for vs in (cb.vertices, tuple(reversed(cb.vertices))):
                n = len(seq)
                if c.closed and cb.closed:
                    # closed curves may start anywhere
                    if len(vs) == n and any(vs[i:] + vs[:i] == seq for i in range(n)):
                        hit = True
                elif any(vs[i : i + n] == seq for i in range(len(vs) - n + 1)):
                    hit = True
            if hit:
                break
        if not hit:
            return False
    return True


# ---------------------------------------------------------------------------
# braiding


def braid_diagram(d: CobordismDiagram, merged_label: str, points: Sequence[str]) -> CobordismDiagram:
    """Merge the two lowest negative ends: the lowest is bent left and up
    across the ray of the second one (surgery at the crossing) and stops just
    above it; the second end carries the merged object."""
    pos, neg = _labels(d)
    rays = _rays(d, LEFT)
    if len(rays) < 2:
        raise EndMismatch("braiding needs two non-void negative ends")
    b = _box(d)
    (hb, bi, bw), (ht, _, _) = rays[0], rays[1]
    X1 = Fraction(math.floor(b[0]) - 1)
    top = Fraction(ht) + Fraction(1, 2)
    strands = [list(s) for s in d.strands]
    strands[bi][0] = _bend(strands[bi][0], bw, [Point2(X1, Fraction(hb)), Point2(X1, top)], None)
    ann = dict(d.annotations)
    if points:
        ann[Point2(X1, Fraction(ht))] = Annotation("mark", ("P-", "P+"), tuple(points))
    return _finish([tuple(s) for s in strands], pos, [merged_label] + neg[2:], ann, d.pivots)


def generator_diagram(source: str | None, ends: Sequence[str], area=0) -> CobordismDiagram:
    """A standard diagram for a declared generator: the source runs straight
    into the top end, lower ends are short dangling strands, and a closed
    square of the requested area sits above everything."""
    area = rat(area)
    strands = []
    m = len(ends)
    if m == 0:
        raise EndMismatch("a generator needs a negative end")
    for h, lab in enumerate(ends[:-1]):
        strands.append((PLCurve((P(0, h), P(1, h)), LEFT, None), lab))
    top = m - 1
    if source is not None:
        strands.append((PLCurve((P(0, top), P(2, top)), LEFT, RIGHT), source))
    else:
        strands.append((PLCurve((P(0, top), P(1, top)), LEFT, None), ends[-1]))
    if area > 0:
        y = Fraction(top + 1)
        strands.append(
            (PLCurve((Point2(3, y), Point2(3 + area, y), Point2(3 + area, y + 1), Point2(3, y + 1)), closed=True), ends[-1])
        )
    return _finish(strands, [source] if source is not None else [], list(ends))

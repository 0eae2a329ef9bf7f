from __future__ import annotations

import random
from fractions import Fraction

import pytest

from cobcalc.errors import InvalidDiagram
from cobcalc.planar import CobordismDiagram, PLCurve, Point2


def _coord(rng: random.Random, lo: int, hi: int) -> Fraction:
    # odd denominators keep vertices off each other's lines almost surely
    return Fraction(rng.randint(lo * 7, hi * 7), 7) + Fraction(rng.randint(1, 12), 97)


def random_curve(rng: random.Random, used_left: set, used_right: set) -> PLCurve:
    kind = rng.random()
    n = rng.randint(2, 5)
    if kind < 0.3:
        pts = [Point2(_coord(rng, 0, 6), _coord(rng, 0, 6)) for _ in range(max(n, 3))]
        return PLCurve(tuple(pts), closed=True)
    pts = [Point2(_coord(rng, 0, 6), _coord(rng, 0, 6)) for _ in range(n)]
    head = tail = None
    if kind < 0.75:
        h = rng.choice([k for k in range(13) if k not in used_left])
        used_left.add(h)
        pts[0] = Point2(pts[0].x, h)
        head = "left"
    if kind > 0.5:
        h = rng.choice([k for k in range(13) if k not in used_right])
        used_right.add(h)
        pts[-1] = Point2(pts[-1].x, h)
        tail = "right"
    return PLCurve(tuple(pts), head, tail)


def random_diagram(rng: random.Random, max_strands: int = 6) -> CobordismDiagram:
    """A valid random diagram; degenerate samples are redrawn."""
    while True:
        used_l: set = set()
        used_r: set = set()
        try:
            strands = [(random_curve(rng, used_l, used_r), f"L{i}") for i in range(rng.randint(1, max_strands))]
            return CobordismDiagram.build(strands)
        except InvalidDiagram:
            continue


# ---------------------------------------------------------------------------
# oracles


def segment_list(d: CobordismDiagram, reach: int = 50):
    """Every segment of every strand, rays cut at |x| = reach beyond the box."""
    box = d.bbox()
    xl, xr = box[0] - reach, box[2] + reach
    out = []
    for si, (c, _) in enumerate(d.strands):
        vs = list(c.vertices)
        segs = list(zip(vs, vs[1:]))
        if c.closed:
            segs.append((vs[-1], vs[0]))
        if c.head:
            segs.insert(0, (Point2(xl if c.head == "left" else xr, vs[0].y), vs[0]))
        if c.tail:
            segs.append((vs[-1], Point2(xl if c.tail == "left" else xr, vs[-1].y)))
        out.append((si, segs))
    return out


def _cross(o, a, b):
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def brute_force_crossings(d: CobordismDiagram) -> set:
    """All pairwise segment intersections, exact, excluding the shared
    vertex of consecutive segments of one strand."""
    found = set()
    flat = []
    for si, segs in segment_list(d):
        n = len(segs)
        closed = d.strands[si][0].closed
        for k, s in enumerate(segs):
            flat.append((si, k, n, closed, s))
    for i in range(len(flat)):
        for j in range(i + 1, len(flat)):
            si, ki, n, closed, (a, b) = flat[i]
            sj, kj, _, _, (c, e) = flat[j]
            if si == sj and (abs(ki - kj) == 1 or (closed and {ki, kj} == {0, n - 1})):
                continue
            d1, d2 = _cross(a, b, c), _cross(a, b, e)
            d3, d4 = _cross(c, e, a), _cross(c, e, b)
            if d1 * d2 < 0 and d3 * d4 < 0:
                t = d3 / (d3 - d4)
                found.add(Point2(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)))
    return found


def shapely_faces(d: CobordismDiagram):
    """Bounded faces of the arrangement via shapely noding + polygonize."""
    from shapely.geometry import LineString, MultiLineString
    from shapely.ops import polygonize, unary_union

    lines = [
        LineString([(float(a.x), float(a.y)), (float(b.x), float(b.y))])
        for _, segs in segment_list(d)
        for a, b in segs
    ]
    if not lines:
        return []
    noded = unary_union(MultiLineString(lines))
    return list(polygonize(noded))


def shapely_shadow(d: CobordismDiagram) -> float:
    return sum(f.area for f in shapely_faces(d))


_HALTON: dict = {}


def _halton(n: int, seed: int):
    from scipy.stats import qmc

    if (n, seed) not in _HALTON:
        _HALTON[(n, seed)] = qmc.Halton(d=2, seed=seed).random(n)
    return _HALTON[(n, seed)]


def monte_carlo_shadow(d: CobordismDiagram, n: int = 100_000, seed: int = 0) -> float:
    """Scrambled-Halton estimate of the shadow.

    Points are spread over the faces in proportion to the area of each
    face's minimum rotated rectangle, and sampled inside that rectangle, so
    thin slivers are not lost in a large bounding box.
    """
    import numpy as np
    import shapely
    faces = shapely_faces(d)
    if not faces:
        return 0.0
    rects = [shapely.minimum_rotated_rectangle(f) for f in faces]
    total = sum(r.area for r in rects)
    est = 0.0
    for f, r in zip(faces, rects):
        k = max(256, int(n * r.area / total))
        c = np.asarray(r.exterior.coords)[:4]
        u = _halton(n, seed)[:k] if k <= n else _halton(k, seed)
        pts = c[0] + np.outer(u[:, 0], c[1] - c[0]) + np.outer(u[:, 1], c[3] - c[0])
        shapely.prepare(f)
        est += float(np.mean(shapely.contains_xy(f, pts[:, 0], pts[:, 1]))) * r.area
    return est


@pytest.fixture
def demo():
    from cobcalc.demo import demo_presentation

    return demo_presentation()


# ---------------------------------------------------------------------------
# random words


def _legal_points(p, X, Y, rng, k=2):
    pts = [q.id for q in p.points(p.obj(X), p.obj(Y)) if q.f_src > q.f_dst]
    rng.shuffle(pts)
    return sorted(pts[: rng.randint(0, min(k, len(pts)))])


def random_atom(rng: random.Random, p, source: str | None = None):
    """A generator rotation, an identity or a surgery word (from ``source``)."""
    from cobcalc.words import gen, identity, rotate, surgery

    base = [o for o in p.objects]
    src = source if source is not None else rng.choice(base)
    options = []
    for name in sorted(p.generators):
        g = gen(p, name)
        for k in range(g.n_ends):
            r = rotate(g, k)
            if r.source == src:
                options.append(r)
    others = [o for o in base if o != src]
    if others and rng.random() < 0.6:
        other = rng.choice(others)
        options.append(surgery(p, src, other, _legal_points(p, src, other, rng)))
    if not options or rng.random() < 0.1:
        return identity(src)
    return rng.choice(options)


def random_word(rng: random.Random, p, n_ends: int, tries: int = 50):
    """A random word with exactly ``n_ends`` ends (source included), built
    by splicing atoms onto legs; None if the budget runs out."""
    from cobcalc.objects import EMPTY_LABEL
    from cobcalc.words import compose, compose_at_leg, insert_void

    w = random_atom(rng, p)
    for _ in range(tries):
        if w.n_ends == n_ends:
            return w
        if w.n_ends > n_ends:
            w = random_atom(rng, p)
            continue
        legs = [i for i, e in enumerate(w.ends) if e != EMPTY_LABEL and e in p.objects]
        r = rng.random()
        if r < 0.1:
            w = insert_void(w)
        elif not legs or r < 0.3:
            k = random_atom(rng, p, w.target) if w.target in p.objects else None
            if k is not None:
                w = compose(k, w)
        else:
            i = rng.choice(legs)
            w = compose_at_leg(w, i, random_atom(rng, p, w.ends[i]))
    return w if w.n_ends == n_ends else None


def random_marking(rng: random.Random, p, X, Y):
    """Labels of a legal cycle representing a random class in H(X, Y), or None."""
    from cobcalc.cabling import legal_representative

    hom = p.hom(X, Y)
    rep = 0
    for z in hom.complex.homology().representatives:
        if rng.random() < 0.5:
            rep ^= z
    r = legal_representative(p, X, Y, rep)
    return None if r is None else hom.labels(r)


def _simple_from(rng: random.Random, p, L):
    from cobcalc.words import gen, identity, rotate

    opts = [identity(L)]
    for name in sorted(p.generators):
        g = gen(p, name)
        if g.n_ends == 2:
            opts += [r for r in (g, rotate(g, 1)) if r.source == L]
    return rng.choice(opts)


def random_square(rng: random.Random, p):
    """(v, s, v', s') with s, s' surgeries and s' a legal representative
    of inv(v) s v'; None when the draw has no such square."""
    from cobcalc.cabling import legal_representative
    from cobcalc.theta import theta
    from cobcalc.words import surgery

    objs = list(p.objects)
    L, M = rng.choice(objs), rng.choice(objs)
    if L == M:
        return None
    c = random_marking(rng, p, L, M)
    if c is None:
        return None
    s = surgery(p, L, M, c)
    v, vp = _simple_from(rng, p, L), _simple_from(rng, p, M)
    if v.target == vp.target:
        return None
    inv = p.inverse(theta(v, p))
    if inv is None:
        return None
    target = inv.then(theta(s, p)).then(theta(vp, p))
    r = legal_representative(p, v.target, vp.target, target.rep)
    if r is None:
        return None
    return v, s, vp, surgery(p, v.target, vp.target, p.hom(v.target, vp.target).labels(r))


def random_octahedron(rng: random.Random, p):
    """(s, s', v') surgeries L -> M, L -> M', M -> M' with [s'] = [s][v']."""
    from cobcalc.cabling import legal_representative
    from cobcalc.theta import theta
    from cobcalc.words import surgery

    objs = list(p.objects)
    if len(objs) < 3:
        return None
    L, M, Mp = rng.sample(objs, 3)
    c, c2 = random_marking(rng, p, L, M), random_marking(rng, p, M, Mp)
    if c is None or c2 is None:
        return None
    s, vp = surgery(p, L, M, c), surgery(p, M, Mp, c2)
    r = legal_representative(p, L, Mp, theta(s, p).then(theta(vp, p)).rep)
    if r is None:
        return None
    return s, surgery(p, L, Mp, p.hom(L, Mp).labels(r)), vp

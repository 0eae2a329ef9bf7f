"""Exact planar PL diagrams: strands with horizontal ends, crossings, shadow.

Coordinates are ``fractions.Fraction``.  A strand is a polyline whose first
vertex ("head") and last vertex ("tail") may each carry a horizontal ray
going to the left or to the right; the ray height is the vertex's y value
and must be a non-negative integer.  Right rays are positive ends, left rays
are negative ends.

Rays are handled by clipping them one unit outside the bounding box of all
finite vertices: beyond that box nothing but parallel rays exists, so no
crossing or face is lost.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DegenerateIntersection, InvalidDiagram, NotSimple, OverlappingSegments

LEFT = "left"
RIGHT = "right"


def rat(v) -> Fraction:
    """Coerce ints, Fractions and ``'p/q'`` strings to Fraction (floats refused)."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool) or isinstance(v, float):
        raise TypeError("geometry is exact; pass ints, Fractions or 'p/q' strings")
    if isinstance(v, (int, str)):
        return Fraction(v)
    raise TypeError(f"cannot use {type(v).__name__} as a coordinate")


def fmt_rat(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, order=True)
class Point2:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", rat(self.x))
        object.__setattr__(self, "y", rat(self.y))

    def shifted(self, dx, dy=0) -> "Point2":
        return Point2(self.x + dx, self.y + dy)

    def __str__(self) -> str:
        return f"({fmt_rat(self.x)},{fmt_rat(self.y)})"


def P(x, y) -> Point2:
    return Point2(rat(x), rat(y))


@dataclass(frozen=True)
class PLCurve:
    """Polyline with optional horizontal rays at its two extremities.

    ``head`` / ``tail`` give the direction (``"left"``/``"right"``) of the ray
    leaving the first / last vertex, or None for a free endpoint.  A closed
    curve has no rays and an implicit segment from the last vertex back to
    the first.
    """

    vertices: tuple[Point2, ...]
    head: str | None = None
    tail: str | None = None
    closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        vs = self.vertices
        if not vs:
            raise InvalidDiagram("a curve needs at least one vertex")
        for a, b in zip(vs, vs[1:]):
            if a == b:
                raise InvalidDiagram(f"repeated consecutive vertex {a}")
        for end in (self.head, self.tail):
            if end not in (None, LEFT, RIGHT):
                raise InvalidDiagram(f"bad ray direction {end!r}")
        if self.closed:
            if self.head or self.tail:
                raise InvalidDiagram("a closed curve cannot have ends")
            if len(vs) < 3:
                raise InvalidDiagram("a closed curve needs three vertices")
            if vs[0] == vs[-1]:
                raise InvalidDiagram("closed curves list each vertex once")
        for v, end in ((vs[0], self.head), (vs[-1], self.tail)):
            if end is not None and (v.y.denominator != 1 or v.y < 0):
                raise InvalidDiagram(f"end height {v.y} is not a non-negative integer")
        if len(vs) == 1 and self.head is not None and self.head == self.tail:
            raise OverlappingSegments("two rays in the same direction from one vertex")

    @property
    def left_end(self) -> int | None:
        """Height of the ray going to -infinity (first one found), if any."""
        hs = self.end_heights(LEFT)
        return hs[0] if hs else None

    @property
    def right_end(self) -> int | None:
        hs = self.end_heights(RIGHT)
        return hs[0] if hs else None

    def ends(self) -> list[tuple[str, str, int]]:
        """(which, direction, height) for each ray; which is 'head' or 'tail'."""
        out = []
        if self.head:
            out.append(("head", self.head, int(self.vertices[0].y)))
        if self.tail:
            out.append(("tail", self.tail, int(self.vertices[-1].y)))
        return out

    def end_heights(self, direction: str) -> list[int]:
        return [h for _, d, h in self.ends() if d == direction]

    def translated(self, dx, dy=0) -> "PLCurve":
        return PLCurve(tuple(v.shifted(dx, dy) for v in self.vertices), self.head, self.tail, self.closed)

    def reversed(self) -> "PLCurve":
        if self.closed:
            return PLCurve(tuple(reversed(self.vertices)), closed=True)
        return PLCurve(tuple(reversed(self.vertices)), self.tail, self.head)


@dataclass(frozen=True)
class Annotation:
    """Decoration of a crossing: a surgery marking or a handle.

    ``kind`` is ``"mark"`` (``order`` is ``("P-","P+")`` for a positive
    surgery, ``("P+","P-")`` for a negative one, ``points`` the surgered
    intersection ids) or ``"handle"`` (``area`` = epsilon).
    """

    kind: str
    order: tuple[str, str] = ("P-", "P+")
    points: tuple[str, ...] = ()
    area: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind not in ("mark", "handle"):
            raise InvalidDiagram(f"unknown annotation kind {self.kind!r}")
        if self.order not in (("P-", "P+"), ("P+", "P-")):
            raise InvalidDiagram(f"bad marking order {self.order}")
        object.__setattr__(self, "area", rat(self.area))
        if self.area < 0:
            raise InvalidDiagram("handle area must be non-negative")


@dataclass(frozen=True)
class Crossing:
    point: Point2
    strands: tuple[int, int]
    segments: tuple[int, int]


@dataclass(frozen=True)
class Segment:
    strand: int
    index: int
    p: Point2
    q: Point2
    ray: bool = False


@dataclass(frozen=True)
class CobordismDiagram:
    """Planar projection of a cobordism.

    ``pos_ends`` / ``neg_ends`` map heights of right / left rays to object
    labels and are stored as sorted tuples of pairs.  Annotations are keyed
    by crossing point.
    """

    strands: tuple[tuple[PLCurve, str], ...] = ()
    pos_ends: tuple[tuple[int, str], ...] = ()
    neg_ends: tuple[tuple[int, str], ...] = ()
    annotations: tuple[tuple[Point2, Annotation], ...] = ()
    pivots: frozenset = frozenset()
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "strands", tuple((c, str(lab)) for c, lab in self.strands))
        object.__setattr__(self, "pos_ends", tuple(sorted(dict(self.pos_ends).items())))
        object.__setattr__(self, "neg_ends", tuple(sorted(dict(self.neg_ends).items())))
        object.__setattr__(self, "annotations", tuple(sorted(dict(self.annotations).items())))
        object.__setattr__(self, "pivots", frozenset(self.pivots))

    @classmethod
    def build(
        cls,
        strands: Sequence[tuple[PLCurve, str]],
        pos_labels: Mapping[int, str] | None = None,
        neg_labels: Mapping[int, str] | None = None,
        annotations: Mapping[Point2, Annotation] | None = None,
        pivots: Iterable[Point2] = (),
        validate: bool = True,
    ) -> "CobordismDiagram":
        """Make a diagram whose end maps default to the strand labels."""
        pos = {}
        neg = {}
        for curve, lab in strands:
            for _, d, h in curve.ends():
                (pos if d == RIGHT else neg)[h] = lab
        if pos_labels:
            pos.update(pos_labels)
        if neg_labels:
            neg.update(neg_labels)
        d = cls(tuple(strands), tuple(pos.items()), tuple(neg.items()), tuple((annotations or {}).items()), frozenset(pivots))
        if validate:
            d.validate()
        return d

    # -- basic queries -------------------------------------------------
    def vertices(self) -> list[Point2]:
        return [v for c, _ in self.strands for v in c.vertices]

    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction] | None:
        pts = self.vertices() + list(self.pivots)
        if not pts:
            return None
        xs = [p.x for p in pts]
        ys = [p.y for p in pts]
        return min(xs), min(ys), max(xs), max(ys)

    def ends(self) -> tuple[dict[int, str], dict[int, str]]:
        """(positive, negative) height -> label maps."""
        return dict(self.pos_ends), dict(self.neg_ends)

    def ray_heights(self, direction: str) -> list[int]:
        return sorted(h for c, _ in self.strands for h in c.end_heights(direction))

    def is_simple(self) -> bool:
        return len(self.pos_ends) == 1 and len(self.neg_ends) == 1

    def annotation_map(self) -> dict[Point2, Annotation]:
        return dict(self.annotations)

    # -- geometry -------------------------------------------------------
    def clip_bounds(self) -> tuple[Fraction, Fraction]:
        box = self.bbox()
        if box is None:
            return Fraction(-1), Fraction(1)
        return Fraction(math.floor(box[0]) - 1), Fraction(math.ceil(box[2]) + 1)

    def segments(self) -> list[Segment]:
        cached = self._cache.get("segments")
        if cached is not None:
            return cached
        xl, xr = self.clip_bounds()
        out = []
        for si, (c, _) in enumerate(self.strands):
            vs = c.vertices
            idx = 0

            def far(v: Point2, d: str) -> Point2:
                return Point2(xl if d == LEFT else xr, v.y)

            if c.head:
                out.append(Segment(si, idx, far(vs[0], c.head), vs[0], True))
                idx += 1
            for a, b in zip(vs, vs[1:]):
                out.append(Segment(si, idx, a, b))
                idx += 1
            if c.closed:
                out.append(Segment(si, idx, vs[-1], vs[0]))
                idx += 1
            if c.tail:
                out.append(Segment(si, idx, vs[-1], far(vs[-1], c.tail), True))
                idx += 1
        self._cache["segments"] = out
        return out

    def validate(self) -> None:
        """Raise if the diagram violates the structural invariants."""
        if self._cache.get("valid"):
            return
        for direction, table, name in ((RIGHT, self.pos_ends, "pos_ends"), (LEFT, self.neg_ends, "neg_ends")):
            hs = self.ray_heights(direction)
            if len(set(hs)) != len(hs):
                raise InvalidDiagram(f"two {direction} ends at the same height")
            if sorted(hs) != [h for h, _ in table]:
                raise InvalidDiagram(f"{name} do not match the strands' {direction} ends")
        crossings = detect_crossings(self)
        points = {c.point for c in crossings}
        for p, _ in self.annotations:
            if p not in points:
                raise InvalidDiagram(f"annotation at {p} is not on a crossing")
        for pv in self.pivots:
            for s in self.segments():
                if _on_segment(s.p, s.q, pv):
                    raise InvalidDiagram(f"pivot {pv} lies on strand {s.strand}")
        self._cache["valid"] = True


def _orient(a: Point2, b: Point2, c: Point2) -> int:
    v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    return (v > 0) - (v < 0)


def _on_segment(a: Point2, b: Point2, p: Point2) -> bool:
    return (
        _orient(a, b, p) == 0
        and min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


def _adjacent(s: Segment, t: Segment, nseg: Mapping[int, int], closed: Mapping[int, bool]) -> bool:
    if s.strand != t.strand:
        return False
    i, j = sorted((s.index, t.index))
    if j - i == 1:
        return True
    return closed[s.strand] and i == 0 and j == nseg[s.strand] - 1


def intersect_segments(s: Segment, t: Segment, adjacent: bool = False) -> Point2 | None:
    """Proper crossing point of two segments, None if disjoint.

    Raises OverlappingSegments for collinear overlap and
    DegenerateIntersection for touching (a vertex on the other segment).
    Adjacent segments of one strand must only share their common vertex.
    """
    a, b, c, d = s.p, s.q, t.p, t.q
    d1, d2 = _orient(a, b, c), _orient(a, b, d)
    d3, d4 = _orient(c, d, a), _orient(c, d, b)
    if d1 == d2 == d3 == d4 == 0:
        # collinear: project on the dominant axis
        if a.x != b.x or c.x != d.x:
            lo1, hi1 = sorted((a.x, b.x))
            lo2, hi2 = sorted((c.x, d.x))
        else:
            lo1, hi1 = sorted((a.y, b.y))
            lo2, hi2 = sorted((c.y, d.y))
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if lo < hi:
            raise OverlappingSegments(f"strands {s.strand} and {t.strand} overlap along a segment")
        if lo == hi and not adjacent:
            raise DegenerateIntersection(f"strands {s.strand} and {t.strand} touch at an endpoint")
        return None
    if adjacent:
        return None
    if d1 * d2 < 0 and d3 * d4 < 0:
        # proper crossing
        den = (b.x - a.x) * (d.y - c.y) - (b.y - a.y) * (d.x - c.x)
        tnum = (c.x - a.x) * (d.y - c.y) - (c.y - a.y) * (d.x - c.x)
        u = tnum / den
        return Point2(a.x + u * (b.x - a.x), a.y + u * (b.y - a.y))
    if (d1 == 0 and _on_segment(a, b, c)) or (d2 == 0 and _on_segment(a, b, d)) or (
        d3 == 0 and _on_segment(c, d, a)
    ) or (d4 == 0 and _on_segment(c, d, b)):
        raise DegenerateIntersection(
            f"strands {s.strand} and {t.strand} touch without crossing transversally"
        )
    return None


def _strand_meta(d: CobordismDiagram):
    segs = d.segments()
    nseg: dict[int, int] = {}
    for s in segs:
        nseg[s.strand] = nseg.get(s.strand, 0) + 1
    closed = {i: c.closed for i, (c, _) in enumerate(d.strands)}
    return segs, nseg, closed


def detect_crossings(d: CobordismDiagram) -> list[Crossing]:
    """All transverse crossings, sorted lexicographically by point.

    Broad phase is a sort-and-sweep over x-intervals; candidate pairs are
    tested exactly.  A crossing of two segments of the same strand is a
    self-crossing and is reported with equal strand indices.
    """
    cached = d._cache.get("crossings")
    if cached is not None:
        return cached
    segs, nseg, closed = _strand_meta(d)
    order = sorted(range(len(segs)), key=lambda i: min(segs[i].p.x, segs[i].q.x))
    active: list[int] = []
    found = []
    for i in order:
        s = segs[i]
        sx0 = min(s.p.x, s.q.x)
        active = [j for j in active if max(segs[j].p.x, segs[j].q.x) >= sx0]
        sy0, sy1 = sorted((s.p.y, s.q.y))
        for j in active:
            t = segs[j]
            ty0, ty1 = sorted((t.p.y, t.q.y))
            if ty1 < sy0 or sy1 < ty0:
                continue
            adj = _adjacent(s, t, nseg, closed)
            pt = intersect_segments(s, t, adjacent=adj)
            if pt is not None:
                a, b = sorted(((s.strand, s.index), (t.strand, t.index)))
                found.append(Crossing(pt, (a[0], b[0]), (a[1], b[1])))
        active.append(i)
    found.sort(key=lambda c: (c.point, c.strands, c.segments))
    d._cache["crossings"] = found
    return found


def crossing_ids(d: CobordismDiagram) -> dict[Point2, int]:
    return {c.point: i for i, c in enumerate(detect_crossings(d))}


# ---------------------------------------------------------------------------
# shadow


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def arrangement_edges(d: CobordismDiagram) -> list[tuple[Point2, Point2]]:
    """Segments (rays clipped) split at every crossing point."""
    segs = d.segments()
    cuts: dict[tuple[int, int], list[Point2]] = {}
    key = {(s.strand, s.index): s for s in segs}
    for c in detect_crossings(d):
        for st, ix in zip(c.strands, c.segments):
            cuts.setdefault((st, ix), []).append(c.point)
    edges = []
    for k, s in key.items():
        pts = [s.p, s.q] + cuts.get(k, [])
        pts = sorted(set(pts), key=lambda p: (p.x, p.y) if s.p <= s.q else (-p.x, -p.y))
        for a, b in zip(pts, pts[1:]):
            edges.append((a, b) if a <= b else (b, a))
    return edges


def shadow(d: CobordismDiagram) -> Fraction:
    """Area of the union of the bounded faces of the arrangement (exact).

    Vertical slab decomposition: the plane is cut at the x-coordinate of every
    arrangement vertex; inside a slab the spanning edges are totally ordered,
    consecutive pairs bound trapezoids.  Trapezoids in neighbouring slabs are
    merged whenever they share an open interval of the slab line not covered
    by a vertical edge.  Whatever is not merged with the outside is shadow.
    """
    cached = d._cache.get("shadow")
    if cached is not None:
        return cached
    d.validate()
    edges = arrangement_edges(d)
    if not edges:
        d._cache["shadow"] = Fraction(0)
        return Fraction(0)
    xs = sorted({p.x for e in edges for p in e})
    xindex = {x: i for i, x in enumerate(xs)}
    slabs: list[list[tuple[Fraction, Fraction]]] = [[] for _ in range(len(xs) - 1)]
    verticals: dict[Fraction, list[tuple[Fraction, Fraction]]] = {}
    for a, b in edges:
        if a.x == b.x:
            verticals.setdefault(a.x, []).append(tuple(sorted((a.y, b.y))))
            continue
        i0, i1 = xindex[a.x], xindex[b.x]
        slope = (b.y - a.y) / (b.x - a.x)
        for k in range(i0, i1):
            yl = a.y + slope * (xs[k] - a.x)
            yr = a.y + slope * (xs[k + 1] - a.x)
            slabs[k].append((yl, yr))
    # order edges inside each slab by their midpoint height
    for k, lst in enumerate(slabs):
        lst.sort(key=lambda e: e[0] + e[1])
    offsets = [0]
    for lst in slabs:
        offsets.append(offsets[-1] + max(len(lst) - 1, 0))
    outside = offsets[-1]
    dsu = _DSU(outside + 1)
    areas: list[Fraction] = []
    for k, lst in enumerate(slabs):
        w = xs[k + 1] - xs[k]
        for j in range(len(lst) - 1):
            lo, hi = lst[j], lst[j + 1]
            areas.append(w * ((hi[0] - lo[0]) + (hi[1] - lo[1])) / 2)

    def region(k: int, ys: list[Fraction], y: Fraction) -> int:
        if k < 0 or k >= len(slabs):
            return outside
        i = bisect.bisect_left(ys, y)
        if i == 0 or i == len(ys):
            return outside
        return offsets[k] + i - 1

    for k, x in enumerate(xs):
        left_ys = [e[1] for e in slabs[k - 1]] if k >= 1 else []
        right_ys = [e[0] for e in slabs[k]] if k < len(slabs) else []
        vert = verticals.get(x, [])
        cuts = sorted(set(left_ys) | set(right_ys) | {y for v in vert for y in v})
        if not cuts:
            continue
        reps = [cuts[0] - 1] + [(a + b) / 2 for a, b in zip(cuts, cuts[1:])] + [cuts[-1] + 1]
        for y in reps:
            if any(lo < y < hi for lo, hi in vert):
                continue
            dsu.union(region(k - 1, left_ys, y), region(k, right_ys, y))
    root_out = dsu.find(outside)
    total = sum((a for i, a in enumerate(areas) if dsu.find(i) != root_out), Fraction(0))
    d._cache["shadow"] = total
    return total


# ---------------------------------------------------------------------------
# rigid motions


def shift(d: CobordismDiagram, dx, dy: int = 0) -> CobordismDiagram:
    """Translate by (dx, dy); ``dy`` must be an integer so heights stay integral."""
    dx = rat(dx)
    if rat(dy).denominator != 1:
        raise InvalidDiagram("vertical shifts must be integral")
    dy = int(dy)
    return CobordismDiagram(
        tuple((c.translated(dx, dy), lab) for c, lab in d.strands),
        tuple((h + dy, lab) for h, lab in d.pos_ends),
        tuple((h + dy, lab) for h, lab in d.neg_ends),
        tuple((p.shifted(dx, dy), a) for p, a in d.annotations),
        frozenset(p.shifted(dx, dy) for p in d.pivots),
    )


def translate(d: CobordismDiagram, dx) -> CobordismDiagram:
    """Horizontal translation by the rational ``dx``."""
    return shift(d, dx, 0)


def _flip(direction: str | None) -> str | None:
    return {LEFT: RIGHT, RIGHT: LEFT, None: None}[direction]


def invert(d: CobordismDiagram) -> CobordismDiagram:
    """Rotate a simple diagram by 180 degrees; ends are re-normalised so the
    lowest end sits at its old lowest height."""
    if not d.is_simple():
        raise NotSimple("inversion needs exactly one positive and one negative end")
    hs = [h for h, _ in d.pos_ends + d.neg_ends]
    top = max(hs)
    low = min(hs)
    dy = top + low

    def rot(p: Point2) -> Point2:
        return Point2(-p.x, dy - p.y)

    strands = []
    for c, lab in d.strands:
        strands.append((PLCurve(tuple(rot(v) for v in c.vertices), _flip(c.head), _flip(c.tail), c.closed), lab))
    return CobordismDiagram(
        tuple(strands),
        tuple((dy - h, lab) for h, lab in d.neg_ends),
        tuple((dy - h, lab) for h, lab in d.pos_ends),
        tuple((rot(p), a) for p, a in d.annotations),
        frozenset(rot(p) for p in d.pivots),
    )


def same_up_to_translation(a: CobordismDiagram, b: CobordismDiagram) -> bool:
    """True if ``b`` is a horizontal translate of ``a``."""
    ba, bb = a.bbox(), b.bbox()
    if ba is None or bb is None:
        return ba == bb and a.pos_ends == b.pos_ends and a.neg_ends == b.neg_ends
    return shift(a, bb[0] - ba[0], 0) == b if ba[1] == bb[1] else False


# ---------------------------------------------------------------------------
# text form


def _parse_point(tok: str, line: int):
    from .errors import ParseError

    t = tok.strip()
    if not (t.startswith("(") and t.endswith(")")):
        raise ParseError(f"expected a point, got {tok!r}", line)
    try:
        x, y = t[1:-1].split(",")
        return Point2(Fraction(x.strip()), Fraction(y.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad point {tok!r}", line) from exc


def diagram_to_text(d: CobordismDiagram, name: str | None = None) -> str:
    """Serialise to the ``[diagram]`` section format (stable byte output)."""
    lines = [f"[diagram {name}]" if name else "[diagram]"]
    for c, lab in d.strands:
        pts = " ".join(str(v) for v in c.vertices)
        flags = []
        if c.closed:
            flags.append("closed")
        if c.head:
            flags.append(f"{c.head}={int(c.vertices[0].y)}" if c.head == LEFT else f"right@head={int(c.vertices[0].y)}")
        if c.tail:
            flags.append(f"{c.tail}={int(c.vertices[-1].y)}" if c.tail == RIGHT else f"left@tail={int(c.vertices[-1].y)}")
        lines.append(f"strand {lab} : {pts} ;" + ("" if not flags else " " + " ".join(flags)))
    for h, lab in d.pos_ends:
        lines.append(f"pos {h} {lab}")
    for h, lab in d.neg_ends:
        lines.append(f"neg {h} {lab}")
    ids = crossing_ids(d) if d.annotations else {}
    for p, a in d.annotations:
        cid = ids.get(p, p)
        if a.kind == "mark":
            pts = " ".join(a.points)
            lines.append(f"mark {cid} ({a.order[0]},{a.order[1]})" + (f" {pts}" if pts else ""))
        else:
            lines.append(f"handle {cid} area={fmt_rat(a.area)}")
    for p in sorted(d.pivots):
        lines.append(f"pivot {p}")
    return "\n".join(lines) + "\n"


def diagram_from_lines(lines: Sequence[tuple[int, str]]) -> CobordismDiagram:
    """Parse the body lines (after the header) of a ``[diagram]`` section."""
    from .errors import ParseError

    strands = []
    pos: dict[int, str] = {}
    neg: dict[int, str] = {}
    raw_annotations = []
    pivots = []
    for lineno, text in lines:
        s = text.strip()
        if not s or s.startswith("#"):
            continue
        kw = s.split(None, 1)[0]
        if kw == "strand":
            try:
                head_part, rest = s[len("strand"):].split(":", 1)
                pts_part, flag_part = rest.split(";", 1)
            except ValueError as exc:
                raise ParseError("strand line needs 'strand <label> : points ; flags'", lineno) from exc
            label = head_part.strip()
            if not label:
                raise ParseError("strand without label", lineno)
            toks = pts_part.replace(") (", ")|(").split("|") if pts_part.strip() else []
            verts = tuple(_parse_point(t, lineno) for t in toks)
            head = tail = None
            closed = False
            for flag in flag_part.split():
                if flag == "closed":
                    closed = True
                    continue
                if "=" not in flag:
                    raise ParseError(f"unknown strand flag {flag!r}", lineno)
                k, v = flag.split("=", 1)
                try:
                    h = int(v)
                except ValueError as exc:
                    raise ParseError(f"bad end height {v!r}", lineno) from exc
                if k in ("left", "right@head"):
                    head = LEFT if k == "left" else RIGHT
                    ref = verts[0] if verts else None
                elif k in ("right", "left@tail"):
                    tail = RIGHT if k == "right" else LEFT
                    ref = verts[-1] if verts else None
                else:
                    raise ParseError(f"unknown strand flag {flag!r}", lineno)
                if ref is None or ref.y != h:
                    raise ParseError(f"end height {h} does not match the end vertex", lineno)
            try:
                strands.append((PLCurve(verts, head, tail, closed), label))
            except InvalidDiagram as exc:
                raise ParseError(str(exc), lineno) from exc
        elif kw in ("pos", "neg"):
            parts = s.split()
            if len(parts) != 3:
                raise ParseError(f"expected '{kw} <height> <object>'", lineno)
            try:
                h = int(parts[1])
            except ValueError as exc:
                raise ParseError("bad height", lineno) from exc
            (pos if kw == "pos" else neg)[h] = parts[2]
        elif kw == "mark":
            parts = s.split()
            if len(parts) < 3:
                raise ParseError("expected 'mark <crossing-id> (P-,P+) [points]'", lineno)
            order = tuple(parts[2].strip("()").split(","))
            raw_annotations.append((lineno, parts[1], ("mark", order, tuple(parts[3:]))))
        elif kw == "handle":
            parts = s.split()
            if len(parts) != 3 or not parts[2].startswith("area="):
                raise ParseError("expected 'handle <crossing-id> area=<p/q>'", lineno)
            try:
                area = Fraction(parts[2][5:])
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError("bad area", lineno) from exc
            raw_annotations.append((lineno, parts[1], ("handle", area)))
        elif kw == "pivot":
            pivots.append(_parse_point(s.split(None, 1)[1], lineno))
        else:
            raise ParseError(f"unknown diagram line {kw!r}", lineno)
    auto_pos: dict[int, str] = {}
    auto_neg: dict[int, str] = {}
    for c, lab in strands:
        for _, dr, h in c.ends():
            (auto_pos if dr == RIGHT else auto_neg)[h] = lab
    auto_pos.update(pos)
    auto_neg.update(neg)
    base = CobordismDiagram(tuple(strands), tuple(auto_pos.items()), tuple(auto_neg.items()), (), frozenset(pivots))
    annotations = {}
    if raw_annotations:
        crossings = detect_crossings(base)
        for lineno, cid, data in raw_annotations:
            try:
                point = crossings[int(cid)].point
            except (ValueError, IndexError) as exc:
                raise ParseError(f"no crossing with id {cid}", lineno) from exc
            if data[0] == "mark":
                try:
                    annotations[point] = Annotation("mark", order=data[1], points=data[2])
                except InvalidDiagram as exc:
                    raise ParseError(str(exc), lineno) from exc
            else:
                annotations[point] = Annotation("handle", area=data[1])
    d = CobordismDiagram(base.strands, base.pos_ends, base.neg_ends, tuple(annotations.items()), base.pivots)
    d.validate()
    return d


def diagram_from_text(text: str) -> CobordismDiagram:
    from .errors import ParseError

    lines = text.splitlines()
    body = []
    seen_header = False
    for i, raw in enumerate(lines, start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        if s.startswith("["):
            if seen_header:
                raise ParseError("only one [diagram] section expected", i)
            if not s.startswith("[diagram"):
                raise ParseError(f"unexpected section {s}", i)
            seen_header = True
            continue
        body.append((i, raw))
    if not seen_header:
        raise ParseError("missing [diagram] header", 1)
    return diagram_from_lines(body)


__all__ = [
    "LEFT",
    "RIGHT",
    "Point2",
    "P",
    "PLCurve",
    "Annotation",
    "Crossing",
    "Segment",
    "CobordismDiagram",
    "rat",
    "fmt_rat",
    "detect_crossings",
    "crossing_ids",
    "intersect_segments",
    "arrangement_edges",
    "shadow",
    "shift",
    "translate",
    "invert",
    "same_up_to_translation",
    "diagram_to_text",
    "diagram_from_text",
    "diagram_from_lines",
]

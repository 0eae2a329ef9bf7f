"""Marked objects, intersection data and 0-size surgery objects.

An object is a formal disjoint union of *components* (base objects of a
presentation).  Double points carry the primitive values at their two
branches; ``branches`` records which components the two branches live on.
Double points joining two different components come from surgeries, and
the marked ones among them are what the algebraic layer turns into the
twisting differential of an iterated cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ActionViolation, InvalidPresentation, UnknownIntersection
from .planar import rat

EMPTY_LABEL = "0"


@dataclass(frozen=True, order=True)
class DoublePointRecord:
    id: str
    f_minus: Fraction
    f_plus: Fraction
    branches: tuple[int, int] = (0, 0)
    point: str = ""

    def __post_init__(self):
        object.__setattr__(self, "f_minus", rat(self.f_minus))
        object.__setattr__(self, "f_plus", rat(self.f_plus))
        if self.f_minus == self.f_plus:
            raise InvalidPresentation(f"double point {self.id}: primitive values at P- and P+ coincide")
        if not self.point:
            object.__setattr__(self, "point", self.id)

    @property
    def action_negative(self) -> bool:
        return self.f_plus < self.f_minus


@dataclass(frozen=True)
class IntersectionPoint:
    """A generator of CF(X, Y): intersection point ``point`` between
    component ``branches[0]`` of X and component ``branches[1]`` of Y."""

    id: str
    point: str
    branches: tuple[int, int]
    f_src: Fraction
    f_dst: Fraction


def point_id(point: str, i: int, k: int, composite: bool) -> str:
    return f"{point}@{i}.{k}" if composite else point


@dataclass(frozen=True)
class MarkedObject:
    label: str
    double_points: frozenset = frozenset()
    marking: frozenset = frozenset()
    components: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "double_points", frozenset(self.double_points))
        object.__setattr__(self, "marking", frozenset(self.marking))
        object.__setattr__(self, "components", tuple(self.components))
        ids = {r.id for r in self.double_points}
        if len(ids) != len(self.double_points):
            raise InvalidPresentation(f"object {self.label}: duplicate double point ids")
        if not self.marking <= ids:
            raise InvalidPresentation(f"object {self.label}: marking is not a set of double points")
        for r in self.double_points:
            if r.id in self.marking and not r.action_negative:
                raise ActionViolation(f"object {self.label}: marked double point {r.id} is not action-negative")

    @property
    def is_empty(self) -> bool:
        return not self.components

    @property
    def is_base(self) -> bool:
        return len(self.components) == 1

    def record(self, rid: str) -> DoublePointRecord:
        for r in self.double_points:
            if r.id == rid:
                return r
        raise KeyError(rid)

    def twisting(self) -> dict[tuple[int, int], list[str]]:
        """Marked double points between distinct components, grouped by
        (source component, target component)."""
        out: dict[tuple[int, int], list[str]] = {}
        for r in sorted(self.double_points):
            if r.id in self.marking and r.branches[0] != r.branches[1]:
                out.setdefault(r.branches, []).append(r.point)
        return out

    def __str__(self) -> str:
        return self.label


EMPTY = MarkedObject(EMPTY_LABEL)


def base_object(label: str, double_points: Iterable[DoublePointRecord] = (), marking: Iterable[str] = ()) -> MarkedObject:
    if not label or any(ch in label for ch in "[]#+(){} \t,@") or label == EMPTY_LABEL:
        raise InvalidPresentation(f"bad base object label {label!r}")
    return MarkedObject(label, frozenset(double_points), frozenset(marking), (label,))


def _shifted(obj: MarkedObject, offset: int) -> tuple[set, set]:
    """Double points of ``obj`` re-keyed as components of a larger union."""
    recs = set()
    remap = {}
    for r in obj.double_points:
        i, j = r.branches[0] + offset, r.branches[1] + offset
        new = DoublePointRecord(point_id(r.point, i, j, True), r.f_minus, r.f_plus, (i, j), r.point)
        remap[r.id] = new.id
        recs.add(new)
    return recs, remap


def _marking_suffix(obj: MarkedObject, c: frozenset) -> str:
    if c == obj.marking:
        return obj.label
    return f"{obj.label}{{{','.join(sorted(c))}}}"


def surgery_object(
    L1: MarkedObject,
    c1: Iterable[str] | None,
    L2: MarkedObject,
    c2: Iterable[str] | None,
    c: Iterable[IntersectionPoint] = (),
    strict_minmax: bool = False,
) -> MarkedObject:
    """0-size surgery ``L1 #_c L2``: the disjoint union with the points of
    ``c`` adjoined as marked double points (P- on L1, P+ on L2).

    ``c1``/``c2`` are markings of the two pieces (None keeps their own).
    Every point must satisfy f_L1(x) > f_L2(x); with ``strict_minmax`` the
    stronger min/max separation over the whole of ``c`` is required.
    """
    c = sorted(c, key=lambda p: p.id)
    c1 = L1.marking if c1 is None else frozenset(c1)
    c2 = L2.marking if c2 is None else frozenset(c2)
    for obj, ck in ((L1, c1), (L2, c2)):
        ids = {r.id for r in obj.double_points}
        if not ck <= ids:
            raise InvalidPresentation(f"marking {sorted(ck)} is not contained in the double points of {obj.label}")
    if L1.is_empty or L2.is_empty:
        if c:
            raise UnknownIntersection("the empty object has no intersection points")
        keep, ck = (L2, c2) if L1.is_empty else (L1, c1)
        if ck == keep.marking:
            return keep
        return MarkedObject(_marking_suffix(keep, ck), keep.double_points, ck, keep.components)
    for x in c:
        if not (x.f_src > x.f_dst):
            raise ActionViolation(
                f"surgery point {x.id}: f_L1 = {x.f_src} is not above f_L2 = {x.f_dst}"
            )
    if strict_minmax and c:
        if not min(x.f_src for x in c) > max(x.f_dst for x in c):
            raise ActionViolation("surgery points violate min(f_L1) > max(f_L2)")
    n1 = len(L1.components)
    recs1, map1 = _shifted(L1, 0)
    recs2, map2 = _shifted(L2, n1)
    recs = recs1 | recs2
    marking = {map1[r] for r in c1} | {map2[r] for r in c2}
    seen = set()
    for x in c:
        i, k = x.branches
        if x.id in seen:
            raise InvalidPresentation(f"point {x.id} listed twice")
        seen.add(x.id)
        r = DoublePointRecord(point_id(x.point, i, n1 + k, True), x.f_src, x.f_dst, (i, n1 + k), x.point)
        recs.add(r)
        marking.add(r.id)
    left = _marking_suffix(L1, c1)
    right = _marking_suffix(L2, c2)
    if c:
        label = f"[{left}#{','.join(x.id for x in c)}#{right}]"
    else:
        label = f"[{left}+{right}]"
    return MarkedObject(label, frozenset(recs), frozenset(marking), L1.components + L2.components)


def direct_sum(L: MarkedObject, Lp: MarkedObject) -> MarkedObject:
    """Disjoint union; the empty object is neutral."""
    return surgery_object(L, None, Lp, None, ())


class IntersectionTable:
    """Intersection points and primitive values for ordered pairs of base
    objects; extended to unions component-wise."""

    def __init__(self, data: Mapping[tuple[str, str], Mapping[str, tuple]] | None = None):
        self._data: dict[tuple[str, str], dict[str, tuple[Fraction, Fraction]]] = {}
        for pair, pts in (data or {}).items():
            self._data[pair] = {k: (rat(a), rat(b)) for k, (a, b) in pts.items()}

    def pairs(self) -> list[tuple[str, str]]:
        return sorted(self._data)

    def base_points(self, a: str, b: str) -> dict[str, tuple[Fraction, Fraction]]:
        return dict(self._data.get((a, b), {}))

    def set_points(self, a: str, b: str, pts: Mapping[str, tuple]) -> None:
        self._data[(a, b)] = {k: (rat(x), rat(y)) for k, (x, y) in pts.items()}

    def points(self, X: MarkedObject, Y: MarkedObject, order: Sequence[str] | None = None) -> list[IntersectionPoint]:
        """Generators of CF(X, Y) in hom-basis order.

        ``order`` optionally gives the basis order of each base pair (the hom
        complex order); otherwise points are sorted by name.
        """
        composite = not (X.is_base and Y.is_base)
        out = []
        for i, a in enumerate(X.components):
            for k, b in enumerate(Y.components):
                pts = self._data.get((a, b), {})
                for name in pts if order is None else order(a, b):
                    fa, fb = pts[name]
                    out.append(IntersectionPoint(point_id(name, i, k, composite), name, (i, k), fa, fb))
        return out

    def lookup(self, X: MarkedObject, Y: MarkedObject, ids: Iterable[str], order=None) -> list[IntersectionPoint]:
        table = {p.id: p for p in self.points(X, Y, order)}
        out = []
        for pid in ids:
            if pid not in table:
                raise UnknownIntersection(f"{pid} is not an intersection point of {X.label} and {Y.label}")
            out.append(table[pid])
        return out

    def is_symmetric(self) -> bool:
        """Whether (L, L') and (L', L) list the same point names."""
        return all(set(self._data.get((b, a), {})) == set(v) for (a, b), v in self._data.items())


__all__ = [
    "DoublePointRecord",
    "IntersectionPoint",
    "MarkedObject",
    "IntersectionTable",
    "EMPTY",
    "EMPTY_LABEL",
    "base_object",
    "surgery_object",
    "direct_sum",
    "point_id",
]

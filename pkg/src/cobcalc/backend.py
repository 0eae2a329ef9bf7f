"""Finite dg presentations over GF(2) and the hom spaces between objects.

Base objects come with hom complexes CF(L, L'), a strictly associative and
unital composition ``mu2`` (diagrammatic order: ``mu2(a, b)`` is "a then b",
CF(N,L) x CF(L,L') -> CF(N,L')), and intersection data.  Composite objects
(surgeries, disjoint unions) are one-sided twisted complexes over the base
objects: the marked surgery points form a strictly upper-triangular
differential ``delta``, and

    Hom(X, Y) = (+)_{i,k} CF(X_i, Y_k),   D f = mu1 f + mu2(delta_X, f) + mu2(f, delta_Y).

So ``L1 #_c L2`` is the cone of ``c : L1 -> L2`` and no higher products are
needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InvalidPresentation, MarkingNotCycle, UnknownObject, ParseError
from .gf2 import ChainComplexGF2, GF2Matrix, Span, bits, row_space, rank_of
from .objects import (
    EMPTY,
    EMPTY_LABEL,
    IntersectionPoint,
    IntersectionTable,
    MarkedObject,
    surgery_object,
)
from .planar import CobordismDiagram


@dataclass(frozen=True)
class GeneratorDecl:
    """A generating cobordism: its ends, diagram and algebraic data.

    ``ends`` lists the negative ends bottom to top (``"0"`` for a void end).
    ``cycle`` is the assigned Theta-cycle in Hom(source, top end) as a list
    of basis labels; ``inverse`` (simple generators) a cycle in
    Hom(top, source); ``triangle`` (3-ended generators) the cycles of the
    rotated maps top -> middle and middle -> source.
    """

    name: str
    source: str
    ends: tuple[str, ...]
    diagram: CobordismDiagram
    cycle: tuple[str, ...] | None = None
    inverse: tuple[str, ...] | None = None
    triangle: tuple[tuple[str, ...], tuple[str, ...]] | None = None

    @property
    def target(self) -> str:
        return self.ends[-1] if self.ends else EMPTY_LABEL


@dataclass(frozen=True)
class TriangleDecl:
    """Declared exact triangle A -f-> B -g-> C -h-> A (maps as basis labels)."""

    a: str
    b: str
    c: str
    f: tuple[str, ...]
    g: tuple[str, ...] | None = None
    h: tuple[str, ...] | None = None


class HomSpace:
    """Hom(X, Y) between twisted objects, with its twisted differential."""

    def __init__(self, p: "CategoryPresentation", X: MarkedObject, Y: MarkedObject):
        self.p = p
        self.X = X
        self.Y = Y
        self.blocks: dict[tuple[int, int], tuple[int, int]] = {}
        labels: list[str] = []
        composite = not (X.is_base and Y.is_base)
        off = 0
        for i, a in enumerate(X.components):
            for k, b in enumerate(Y.components):
                base = p.base_hom(a, b)
                self.blocks[(i, k)] = (off, base.dim)
                labels.extend(f"{x}@{i}.{k}" if composite else x for x in base.basis)
                off += base.dim
        self.dim = off
        self._index = {lab: n for n, lab in enumerate(labels)}
        dX = p.twisting(X)
        dY = p.twisting(Y)
        images = []
        for (i, k), (o, n) in self.blocks.items():
            a, b = X.components[i], Y.components[k]
            base = p.base_hom(a, b)
            for t in range(n):
                e = 1 << t
                v = self.embed(i, k, base.differential(e))
                # mu2(delta_X, f): delta_{j i} then f_{i k}
                for (j, i2), dv in dX.items():
                    if i2 == i:
                        v ^= self.embed(j, k, p.base_mu2(X.components[j], a, b, dv, e))
                # mu2(f, delta_Y): f_{i k} then delta_{k m}
                for (k2, m), dv in dY.items():
                    if k2 == k:
                        v ^= self.embed(i, m, p.base_mu2(a, b, Y.components[m], e, dv))
                images.append(v)
        self.complex = ChainComplexGF2.from_images(tuple(labels), images)

    @property
    def basis(self) -> tuple[str, ...]:
        return self.complex.basis

    def embed(self, i: int, k: int, v: int) -> int:
        return v << self.blocks[(i, k)][0]

    def block(self, v: int, i: int, k: int) -> int:
        o, n = self.blocks[(i, k)]
        return (v >> o) & ((1 << n) - 1)

    def vector(self, labels: Iterable[str]) -> int:
        v = 0
        for lab in labels:
            if lab not in self._index:
                raise InvalidPresentation(f"{lab} is not a generator of Hom({self.X.label}, {self.Y.label})")
            v ^= 1 << self._index[lab]
        return v

    def labels(self, v: int) -> list[str]:
        return [self.basis[i] for i in bits(v)]

    def D(self, v: int) -> int:
        return self.complex.differential(v)


@dataclass(frozen=True, eq=False)
class HomologyClass:
    """Class of the cycle ``rep`` in H(Hom(source, target))."""

    source: MarkedObject
    target: MarkedObject
    rep: int
    space: HomSpace = field(repr=False)

    def __post_init__(self):
        if not self.space.complex.is_cycle(self.rep):
            raise MarkingNotCycle(
                f"{self.space.labels(self.rep)} is not a cycle in Hom({self.source.label}, {self.target.label})"
            )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomologyClass):
            return NotImplemented
        return (
            self.source.label == other.source.label
            and self.target.label == other.target.label
            and self.space.complex.same_class(self.rep, other.rep)
        )

    def __hash__(self) -> int:
        return hash((self.source.label, self.target.label, self.coordinates()))

    def coordinates(self) -> int:
        return self.space.complex.class_coordinates(self.rep)

    def is_zero(self) -> bool:
        return self.space.complex.is_boundary(self.rep)

    def labels(self) -> list[str]:
        return self.space.labels(self.rep)

    def then(self, other: "HomologyClass") -> "HomologyClass":
        """Composite "self, then other" (mu2 on representatives)."""
        p = self.space.p
        if self.target.label != other.source.label:
            raise InvalidPresentation("classes are not composable")
        return p.cls(self.source, other.target, p.mu2(self.source, self.target, other.target, self.rep, other.rep))

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        return HomologyClass(self.source, self.target, self.rep ^ other.rep, self.space)

    def __repr__(self) -> str:
        return f"[{'+'.join(self.labels()) or '0'}]:{self.source.label}->{self.target.label}"


@dataclass(frozen=True)
class QuotientSpace:
    """GF(2) span of objects modulo relations, canonically reduced."""

    objects: tuple[str, ...]
    relations: tuple[int, ...]
    dim: int
    basis: tuple[str, ...]

    def relation_labels(self) -> list[list[str]]:
        return [[self.objects[i] for i in bits(r)] for r in self.relations]


class CategoryPresentation:
    """A finite presentation; immutable after construction."""

    def __init__(
        self,
        objects: Mapping[str, MarkedObject],
        homs: Mapping[tuple[str, str], ChainComplexGF2],
        mu2: Mapping[tuple[str, str, str], Sequence[Sequence[int]]],
        units: Mapping[str, int],
        table: IntersectionTable,
        generators: Mapping[str, GeneratorDecl] | None = None,
        triangles: Sequence[TriangleDecl] = (),
        nullcobs: Sequence[tuple[str, ...]] = (),
        deltas: Mapping[tuple[str, str], Fraction] | None = None,
        validate: bool = True,
    ):
        self.objects = dict(sorted(objects.items()))
        self.homs = dict(homs)
        self.mu2_tables = {k: tuple(tuple(r) for r in v) for k, v in mu2.items()}
        self.units = dict(units)
        self.table = table
        self.generators = dict(generators or {})
        self.triangles = tuple(triangles)
        self.nullcobs = tuple(tuple(t) for t in nullcobs)
        self.deltas = dict(deltas or {})
        self._homspaces: dict[tuple[str, str], HomSpace] = {}
        self._twist: dict[str, dict] = {}
        self._objcache: dict[str, MarkedObject] = {}
        self._mu2rows: dict = {}
        if validate:
            self.validate()

    # -- base data ------------------------------------------------------
    def base_hom(self, a: str, b: str) -> ChainComplexGF2:
        try:
            return self.homs[(a, b)]
        except KeyError:
            raise UnknownObject(f"no hom complex for ({a}, {b})") from None

    def base_mu2(self, a: str, b: str, c: str, u: int, v: int) -> int:
        key = (a, b, c)
        rows = self._mu2rows.get(key)
        if rows is None:
            tab = self.mu2_tables[key]
            n = self.base_hom(b, c).dim
            rows = [GF2Matrix.from_columns(list(row), self.base_hom(a, c).dim) if n else None for row in tab]
            self._mu2rows[key] = rows
        out = 0
        for i in bits(u):
            m = rows[i]
            if m is not None:
                out ^= m.apply(v)
        return out

    def validate(self) -> None:
        labels = list(self.objects)
        for a in labels:
            obj = self.objects[a]
            if not obj.is_base or obj.components != (a,):
                raise InvalidPresentation(f"object {a} must be a base object")
            for b in labels:
                if (a, b) not in self.homs:
                    raise InvalidPresentation(f"missing hom complex ({a}, {b})")
                pts = self.table.base_points(a, b)
                if set(pts) != set(self.homs[(a, b)].basis):
                    raise InvalidPresentation(f"intersection points of ({a}, {b}) do not match the hom basis")
                clash = set(pts) & {r.point for r in obj.double_points}
                if clash:
                    raise InvalidPresentation(f"points {sorted(clash)} are also double points of {a}")
        tensors = {}
        for a in labels:
            for b in labels:
                for c in labels:
                    key = (a, b, c)
                    if key not in self.mu2_tables:
                        raise InvalidPresentation(f"missing mu2 table {key}")
                    tab = self.mu2_tables[key]
                    nab, nbc, nac = self.homs[(a, b)].dim, self.homs[(b, c)].dim, self.homs[(a, c)].dim
                    if len(tab) != nab or any(len(r) != nbc for r in tab):
                        raise InvalidPresentation(f"mu2 table {key} has the wrong shape")
                    T = np.zeros((nab, nbc, nac), dtype=np.int64)
                    for i, row in enumerate(tab):
                        for j, val in enumerate(row):
                            if val >> nac:
                                raise InvalidPresentation(f"mu2 table {key} has out-of-range entries")
                            for k in bits(val):
                                T[i, j, k] = 1
                    tensors[key] = T
        dmat = {}
        for (a, b), C in self.homs.items():
            n = C.dim
            M = np.zeros((n, n), dtype=np.int64)
            for j, col in enumerate(C.d.columns()):
                for i in bits(col):
                    M[i, j] = 1
            dmat[(a, b)] = M
        # Leibniz: d mu2(x,y) = mu2(dx,y) + mu2(x,dy), checked on all basis pairs
        for (a, b, c), T in tensors.items():
            lhs = np.einsum("ijk,lk->ijl", T, dmat[(a, c)])
            rhs = np.einsum("mi,mjl->ijl", dmat[(a, b)], T) + np.einsum("nj,inl->ijl", dmat[(b, c)], T)
            if np.any((lhs - rhs) % 2):
                raise InvalidPresentation(f"mu2 on ({a}, {b}, {c}) is not a chain map")
        # strict associativity on all basis triples
        for a in labels:
            for b in labels:
                for c in labels:
                    for d in labels:
                        left = np.einsum("ijk,klm->ijlm", tensors[(a, b, c)], tensors[(a, c, d)])
                        right = np.einsum("jlk,ikm->ijlm", tensors[(b, c, d)], tensors[(a, b, d)])
                        if np.any((left - right) % 2):
                            raise InvalidPresentation(f"mu2 is not associative on ({a}, {b}, {c}, {d})")
        # strict units
        for a in labels:
            if a not in self.units:
                raise InvalidPresentation(f"missing unit for {a}")
            e = self.units[a]
            if self.homs[(a, a)].differential(e):
                raise InvalidPresentation(f"unit of {a} is not a cycle")
            for b in labels:
                for t in range(self.homs[(a, b)].dim):
                    x = 1 << t
                    if self.base_mu2(a, a, b, e, x) != x:
                        raise InvalidPresentation(f"unit of {a} is not a left unit")
                for t in range(self.homs[(b, a)].dim):
                    x = 1 << t
                    if self.base_mu2(b, a, a, x, e) != x:
                        raise InvalidPresentation(f"unit of {a} is not a right unit")
        for g in self.generators.values():
            try:
                self._check_generator(g)
            except MarkingNotCycle as e:
                raise InvalidPresentation(f"generator {g.name}: {e}") from None
        for t in self.triangles:
            self.check_triangle(t)

    def _check_generator(self, g: GeneratorDecl) -> None:
        src = self.obj(g.source)
        ends = [self.obj(e) for e in g.ends]
        if not ends:
            raise InvalidPresentation(f"generator {g.name} needs at least one negative end")
        pos = [lab for _, lab in g.diagram.pos_ends]
        neg = [lab for _, lab in g.diagram.neg_ends]
        want_pos = [] if src.is_empty else [src.label]
        want_neg = [e.label for e in ends if not e.is_empty]
        if pos != want_pos or neg != want_neg:
            raise InvalidPresentation(
                f"generator {g.name}: diagram ends {pos} / {neg} do not match {want_pos} / {want_neg}"
            )
        tgt = ends[-1]
        if g.cycle is not None:
            self.cls(src, tgt, self.hom(src, tgt).vector(g.cycle))
        if g.inverse is not None:
            if len(ends) != 1:
                raise InvalidPresentation(f"generator {g.name}: only simple generators carry an inverse")
            self.cls(tgt, src, self.hom(tgt, src).vector(g.inverse))
        if g.triangle is not None:
            if len(ends) != 2:
                raise InvalidPresentation(f"generator {g.name}: triangle data needs exactly three ends")
            mid = ends[0]
            self.cls(tgt, mid, self.hom(tgt, mid).vector(g.triangle[0]))
            self.cls(mid, src, self.hom(mid, src).vector(g.triangle[1]))

    # -- objects ----------------------------------------------------------
    def obj(self, label: str | MarkedObject) -> MarkedObject:
        """Resolve a label (base, ``0``, ``[X+Y]`` or ``[X#ids#Y]``)."""
        if isinstance(label, MarkedObject):
            return label
        hit = self._objcache.get(label)
        if hit is not None:
            return hit
        obj, pos = self._parse_obj(label, 0)
        if pos != len(label):
            raise ParseError(f"trailing characters in object label {label!r}", None, pos + 1)
        self._objcache[label] = obj
        return obj

    def _parse_obj(self, s: str, i: int) -> tuple[MarkedObject, int]:
        if i >= len(s):
            raise ParseError(f"unexpected end of object label {s!r}")
        if s[i] == "[":
            left, i = self._parse_obj(s, i + 1)
            if i >= len(s) or s[i] not in "+#":
                raise ParseError(f"expected '+' or '#' in {s!r}", None, i + 1)
            if s[i] == "+":
                right, i = self._parse_obj(s, i + 1)
                pts: list[IntersectionPoint] = []
            else:
                j = s.find("#", i + 1)
                if j < 0:
                    raise ParseError(f"expected a second '#' in {s!r}", None, i + 1)
                ids = [x for x in s[i + 1 : j].split(",") if x]
                right, i = self._parse_obj(s, j + 1)
                pts = self.points_by_id(left, right, ids)
            if i >= len(s) or s[i] != "]":
                raise ParseError(f"expected ']' in {s!r}", None, i + 1)
            return surgery_object(left, None, right, None, pts), i + 1
        j = i
        while j < len(s) and s[j] not in "[]#+,":
            j += 1
        name = s[i:j]
        if name == EMPTY_LABEL:
            return EMPTY, j
        if name not in self.objects:
            raise UnknownObject(f"unknown object {name!r}")
        return self.objects[name], j

    def points(self, X: MarkedObject, Y: MarkedObject) -> list[IntersectionPoint]:
        """Intersection points of X and Y in hom-basis order."""
        return self.table.points(X, Y, order=lambda a, b: self.base_hom(a, b).basis)

    def points_by_id(self, X: MarkedObject, Y: MarkedObject, ids: Iterable[str]) -> list[IntersectionPoint]:
        return self.table.lookup(X, Y, ids, order=lambda a, b: self.base_hom(a, b).basis)

    def twisting(self, X: MarkedObject) -> dict[tuple[int, int], int]:
        """The twisting differential of X as base vectors, checked to satisfy
        mu1(delta) + mu2(delta, delta) = 0."""
        hit = self._twist.get(X.label)
        if hit is not None:
            return hit
        comps = X.components
        delta = {}
        for (i, j), names in X.twisting().items():
            base = self.base_hom(comps[i], comps[j])
            delta[(i, j)] = base.vector(names)
            if i >= j:
                raise MarkingNotCycle(f"object {X.label}: twisting is not one-sided")
        for (i, j) in {(i, j) for i in range(len(comps)) for j in range(len(comps))}:
            v = self.base_hom(comps[i], comps[j]).differential(delta.get((i, j), 0))
            for (i2, l), dv in delta.items():
                if i2 == i and (l, j) in delta:
                    v ^= self.base_mu2(comps[i], comps[l], comps[j], dv, delta[(l, j)])
            if v:
                raise MarkingNotCycle(f"object {X.label}: the marking is not a cycle (Maurer-Cartan fails)")
        self._twist[X.label] = delta
        return delta

    # -- homs -------------------------------------------------------------
    def hom(self, X, Y) -> HomSpace:
        X, Y = self.obj(X), self.obj(Y)
        key = (X.label, Y.label)
        sp = self._homspaces.get(key)
        if sp is None:
            sp = HomSpace(self, X, Y)
            self._homspaces[key] = sp
        return sp

    def cls(self, X, Y, rep: int) -> HomologyClass:
        X, Y = self.obj(X), self.obj(Y)
        return HomologyClass(X, Y, rep, self.hom(X, Y))

    def unit(self, X) -> int:
        X = self.obj(X)
        sp = self.hom(X, X)
        v = 0
        for i, a in enumerate(X.components):
            v ^= sp.embed(i, i, self.units[a])
        return v

    def identity_class(self, X) -> HomologyClass:
        X = self.obj(X)
        return self.cls(X, X, self.unit(X))

    def mu2(self, X, Y, Z, f: int, g: int) -> int:
        """Composite of f: X -> Y then g: Y -> Z on twisted objects."""
        X, Y, Z = self.obj(X), self.obj(Y), self.obj(Z)
        sf, sg, sh = self.hom(X, Y), self.hom(Y, Z), self.hom(X, Z)
        out = 0
        for (i, k) in sf.blocks:
            fv = sf.block(f, i, k)
            if not fv:
                continue
            for m in range(len(Z.components)):
                gv = sg.block(g, k, m)
                if gv:
                    out ^= sh.embed(i, m, self.base_mu2(X.components[i], Y.components[k], Z.components[m], fv, gv))
        return out

    def inverse(self, a: HomologyClass) -> HomologyClass | None:
        """Two-sided inverse class of ``a``, or None if ``a`` is not an iso."""
        X, Y = a.source, a.target
        back = self.hom(Y, X).complex
        cyc = back.homology().representatives
        cx = self.hom(X, X).complex
        cy = self.hom(Y, Y).complex
        nx = cx.homology().dim
        s = Span()
        for t, z in enumerate(cyc):
            left = cx.class_coordinates(self.mu2(X, Y, X, a.rep, z))
            right = cy.class_coordinates(self.mu2(Y, X, Y, z, a.rep))
            s.add(left | (right << nx), 1 << t)
        goal = cx.class_coordinates(self.unit(X)) | (cy.class_coordinates(self.unit(Y)) << nx)
        rest, tag = s.reduce(goal)
        if rest:
            return None
        rep = 0
        for t in bits(tag):
            rep ^= cyc[t]
        return self.cls(Y, X, rep)

    def is_zero_object(self, X) -> bool:
        """X is zero in the homotopy category iff its unit is a boundary."""
        X = self.obj(X)
        if X.is_empty:
            return True
        return self.hom(X, X).complex.is_boundary(self.unit(X))

    def is_iso(self, a: HomologyClass) -> bool:
        return self.inverse(a) is not None

    def isomorphic(self, X, Y, limit: int = 12) -> bool:
        """Whether X and Y are isomorphic (searches H(X,Y) up to 2**limit classes)."""
        X, Y = self.obj(X), self.obj(Y)
        if self.is_zero_object(X) or self.is_zero_object(Y):
            return self.is_zero_object(X) and self.is_zero_object(Y)
        reps = self.hom(X, Y).complex.homology().representatives
        if len(reps) > limit:
            raise InvalidPresentation("homology too large for an exhaustive isomorphism search")
        for mask in range(1, 1 << len(reps)):
            rep = 0
            for t in bits(mask):
                rep ^= reps[t]
            if self.is_iso(self.cls(X, Y, rep)):
                return True
        return False

    # -- triangles and Grothendieck-type groups ---------------------------
    def check_triangle(self, t: TriangleDecl) -> None:
        """Consecutive composites must be boundaries and C must be a cone of f."""
        A, B, C = self.obj(t.a), self.obj(t.b), self.obj(t.c)
        f = self.cls(A, B, self.hom(A, B).vector(t.f))
        if t.g is None or t.h is None:
            return
        g = self.cls(B, C, self.hom(B, C).vector(t.g))
        h = self.cls(C, A, self.hom(C, A).vector(t.h))
        for x, y in ((f, g), (g, h), (h, f)):
            if not x.then(y).is_zero():
                raise InvalidPresentation(f"triangle {t.a},{t.b},{t.c}: a consecutive composite is not null-homotopic")
        cone = surgery_object(A, None, B, None, self.points_by_id(A, B, t.f)) if t.f else surgery_object(A, None, B, None, ())
        if not self.isomorphic(cone, C):
            raise InvalidPresentation(f"triangle {t.a},{t.b},{t.c}: third object is not isomorphic to the cone")

    def surgery_triangles(self) -> list[tuple[str, str, str]]:
        """(L1, L2, L1#L2) for every composite object used by the presentation."""
        seen: dict[str, tuple[str, str, str]] = {}

        def visit(label: str) -> None:
            obj = self.obj(label)
            if obj.is_base or obj.is_empty or obj.label in seen:
                return
            s = obj.label
            depth = 0
            for i, ch in enumerate(s):
                if ch == "[":
                    depth += 1
                elif ch == "]":
                    depth -= 1
                elif ch in "+#" and depth == 1:
                    left = s[1:i]
                    if ch == "+":
                        right = s[i + 1 : -1]
                    else:
                        j = s.index("#", i + 1)
                        right = s[j + 1 : -1]
                    seen[s] = (self.obj(left).label, self.obj(right).label, s)
                    visit(left)
                    visit(right)
                    return

        for lab in self.mentioned_objects():
            visit(lab)
        return [seen[k] for k in sorted(seen)]

    def mentioned_objects(self) -> list[str]:
        labs = set(self.objects)
        for g in self.generators.values():
            labs.add(g.source)
            labs.update(g.ends)
        for t in self.triangles:
            labs.update((t.a, t.b, t.c))
        for tup in self.nullcobs:
            labs.update(tup)
        labs.discard(EMPTY_LABEL)
        return sorted(self.obj(x).label for x in labs)

    def k0_relations(self) -> list[tuple[str, ...]]:
        rels = [tuple(self.obj(x).label for x in (t.a, t.b, t.c)) for t in self.triangles]
        rels += self.surgery_triangles()
        for g in sorted(self.generators.values(), key=lambda g: g.name):
            if len(g.ends) == 1 and g.inverse is not None:
                rels.append((g.source, g.ends[0], EMPTY_LABEL))
            elif len(g.ends) == 2 and g.triangle is not None:
                rels.append((g.source, g.ends[1], g.ends[0]))
        return rels

    def omega_relations(self) -> list[tuple[str, ...]]:
        rels = [tuple(self.obj(x).label for x in t) for t in self.nullcobs]
        rels += self.surgery_triangles()
        for g in sorted(self.generators.values(), key=lambda g: g.name):
            rels.append((g.source,) + tuple(g.ends))
        return rels

    def _quotient(self, relations: Sequence[Sequence[str]]) -> QuotientSpace:
        labs = set(self.mentioned_objects())
        for r in relations:
            labs.update(self.obj(x).label for x in r)
        labs.discard(EMPTY_LABEL)
        objects = tuple(sorted(labs))
        index = {x: i for i, x in enumerate(objects)}
        vecs = []
        for r in relations:
            v = 0
            for x in r:
                lab = self.obj(x).label
                if lab != EMPTY_LABEL:
                    v ^= 1 << index[lab]
            vecs.append(v)
        rows = row_space(vecs)
        pivots = {r.bit_length() - 1 for r in rows}
        basis = tuple(x for i, x in enumerate(objects) if i not in pivots)
        return QuotientSpace(objects, rows, len(objects) - len(rows), basis)

    def k0(self) -> QuotientSpace:
        return self._quotient(self.k0_relations())

    def omega(self) -> QuotientSpace:
        return self._quotient(self.omega_relations())


def k0(p: CategoryPresentation) -> QuotientSpace:
    """Objects modulo A + B + C for every exact triangle."""
    return p.k0()


def omega(p: CategoryPresentation) -> QuotientSpace:
    """Objects modulo L1 + ... + Lm for every null-cobordant tuple."""
    return p.omega()


__all__ = [
    "GeneratorDecl",
    "TriangleDecl",
    "HomSpace",
    "HomologyClass",
    "QuotientSpace",
    "CategoryPresentation",
    "k0",
    "omega",
]

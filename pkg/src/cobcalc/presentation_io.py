"""Text format for presentations.

Sections (blank lines and ``#`` comments are ignored)::

    [objects]            one base object per line: ``A`` or ``A d1:3:1 d2:1:2*``
                         (double point id:f_minus:f_plus, ``*`` = marked)
    [complex L L']       ``basis: x y z`` then one bit-string row per line
    [points L L']        ``x 3 1`` (f_L(x), f_L'(x)) per point
    [mu2 L L' L'']       ``a b = c1 c2`` for every nonzero product
    [unit L]             the unit's basis labels on one line
    [generator g]        ``source:``, ``ends:``, ``cycle: (..)``,
                         ``inverse: (..)``, ``triangle: (..) (..)``, ``diagram: name``
    [diagram name]       the planar diagram format
    [triangle]           ``A B C (f) [(g) (h)]`` per line
    [nullcob]            one tuple of objects per line
    [delta]              ``A B 1/4`` per line

``write_presentation`` emits a canonical order, so write -> read -> write
is byte-stable.  Unknown sections are errors.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .backend import CategoryPresentation, GeneratorDecl, TriangleDecl
from .errors import CobError, ParseError
from .gf2 import ChainComplexGF2, GF2Matrix
from .objects import DoublePointRecord, IntersectionTable, base_object
from .planar import diagram_from_lines, diagram_to_text, fmt_rat

SECTIONS = ("objects", "complex", "points", "mu2", "unit", "generator", "diagram", "triangle", "nullcob", "delta")


def _list(labels) -> str:
    return "(" + " ".join(labels) + ")"


def write_presentation(p: CategoryPresentation) -> str:
    out: list[str] = ["[objects]"]
    for a, obj in p.objects.items():
        recs = " ".join(
            f"{r.id}:{fmt_rat(r.f_minus)}:{fmt_rat(r.f_plus)}" + ("*" if r.id in obj.marking else "")
            for r in sorted(obj.double_points)
        )
        out.append(f"{a} {recs}".rstrip())
    labels = list(p.objects)
    for a in labels:
        for b in labels:
            C = p.homs[(a, b)]
            out += ["", f"[complex {a} {b}]", "basis: " + " ".join(C.basis)]
            out += C.d.to_bitstrings()
            pts = p.table.base_points(a, b)
            if pts:
                out += ["", f"[points {a} {b}]"]
                for name in C.basis:
                    fa, fb = pts[name]
                    out.append(f"{name} {fmt_rat(fa)} {fmt_rat(fb)}")
    for a in labels:
        for b in labels:
            for c in labels:
                tab = p.mu2_tables[(a, b, c)]
                Bab, Bbc, Bac = p.homs[(a, b)].basis, p.homs[(b, c)].basis, p.homs[(a, c)].basis
                rows = []
                for i, row in enumerate(tab):
                    for j, val in enumerate(row):
                        if val:
                            res = " ".join(Bac[k] for k in range(len(Bac)) if val >> k & 1)
                            rows.append(f"{Bab[i]} {Bbc[j]} = {res}")
                if rows:
                    out += ["", f"[mu2 {a} {b} {c}]"] + rows
    for a in labels:
        C = p.homs[(a, a)]
        out += ["", f"[unit {a}]", " ".join(C.labels(p.units[a]))]
    for name in sorted(p.generators):
        g = p.generators[name]
        out += ["", f"[generator {name}]", f"source: {g.source}", "ends: " + " ".join(g.ends)]
        if g.cycle is not None:
            out.append("cycle: " + _list(g.cycle))
        if g.inverse is not None:
            out.append("inverse: " + _list(g.inverse))
        if g.triangle is not None:
            out.append("triangle: " + _list(g.triangle[0]) + " " + _list(g.triangle[1]))
        out.append(f"diagram: {name}")
        out += ["", diagram_to_text(g.diagram, name).rstrip("\n")]
    if p.triangles:
        out += ["", "[triangle]"]
        for t in p.triangles:
            extra = "" if t.g is None else " " + _list(t.g) + " " + _list(t.h)
            out.append(f"{t.a} {t.b} {t.c} {_list(t.f)}{extra}")
    if p.nullcobs:
        out += ["", "[nullcob]"] + [" ".join(t) for t in p.nullcobs]
    if p.deltas:
        out += ["", "[delta]"] + [f"{a} {b} {fmt_rat(Fraction(v))}" for (a, b), v in sorted(p.deltas.items())]
    return "\n".join(out) + "\n"


_HEADER = re.compile(r"^\[([a-z0-9]+)((?:\s+\S+)*)\]$")
_LISTS = re.compile(r"\(([^()]*)\)")


def _sections(text: str):
    cur = None
    for n, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        if s.startswith("["):
            m = _HEADER.match(s)
            if not m:
                raise ParseError(f"malformed section header {s!r}", n, 1)
            kind, args = m.group(1), m.group(2).split()
            if kind not in SECTIONS:
                raise ParseError(f"unknown section [{kind}]", n, 1)
            cur = (kind, args, n, [])
            yield cur
            continue
        if cur is None:
            raise ParseError("content before the first section", n, 1)
        cur[3].append((n, raw))


def _lists(s: str, n: int, count: int) -> list[tuple[str, ...]]:
    found = _LISTS.findall(s)
    rest = _LISTS.sub("", s).strip()
    if len(found) != count or rest:
        raise ParseError(f"expected {count} parenthesised list(s)", n, 1)
    return [tuple(x.split()) for x in found]


def _frac(tok: str, n: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {tok!r}", n, 1) from None


def read_presentation(text: str, validate: bool = True) -> CategoryPresentation:
    """Parse the presentation format; engine errors propagate unchanged."""
    objects = {}
    homs = {}
    points: dict = {}
    mu2_rows: dict = {}
    units_raw: dict = {}
    gens_raw = []
    diagrams = {}
    triangles = []
    nullcobs = []
    deltas = {}
    for kind, args, hn, body in list(_sections(text)):
        def need(k):
            if len(args) != k:
                raise ParseError(f"[{kind}] takes {k} argument(s)", hn, 1)

        if kind == "objects":
            need(0)
            for n, raw in body:
                toks = raw.split()
                recs, marked = [], []
                for t in toks[1:]:
                    parts = t.rstrip("*").split(":")
                    if len(parts) != 3:
                        raise ParseError(f"bad double point {t!r}", n, 1)
                    recs.append(DoublePointRecord(parts[0], _frac(parts[1], n), _frac(parts[2], n)))
                    if t.endswith("*"):
                        marked.append(parts[0])
                objects[toks[0]] = base_object(toks[0], recs, marked)
        elif kind == "complex":
            need(2)
            if not body or not body[0][1].strip().startswith("basis:"):
                raise ParseError("complex section must start with 'basis:'", hn, 1)
            basis = tuple(body[0][1].split(":", 1)[1].split())
            rows = [r.strip() for _, r in body[1:]]
            if len(rows) != len(basis):
                raise ParseError(f"expected {len(basis)} differential rows", hn, 1)
            try:
                d = GF2Matrix.from_bitstrings(rows, len(basis)) if basis else GF2Matrix.zeros(0, 0)
                homs[tuple(args)] = ChainComplexGF2(basis, d)
            except ValueError as e:
                raise ParseError(str(e), hn, 1) from None
        elif kind == "points":
            need(2)
            pts = {}
            for n, raw in body:
                toks = raw.split()
                if len(toks) != 3:
                    raise ParseError("expected '<point> <f_L> <f_L'>'", n, 1)
                pts[toks[0]] = (_frac(toks[1], n), _frac(toks[2], n))
            points[tuple(args)] = pts
        elif kind == "mu2":
            need(3)
            rows = []
            for n, raw in body:
                if "=" not in raw:
                    raise ParseError("expected 'a b = c ...'", n, 1)
                lhs, rhs = raw.split("=", 1)
                ab = lhs.split()
                if len(ab) != 2:
                    raise ParseError("expected two factors", n, 1)
                rows.append((n, ab[0], ab[1], rhs.split()))
            mu2_rows[tuple(args)] = rows
        elif kind == "unit":
            need(1)
            units_raw[args[0]] = (hn, [t for _, r in body for t in r.split()])
        elif kind == "generator":
            need(1)
            fields = {}
            for n, raw in body:
                if ":" not in raw:
                    raise ParseError("expected 'key: value'", n, 1)
                k, v = raw.split(":", 1)
                fields[k.strip()] = (n, v.strip())
            gens_raw.append((args[0], hn, fields))
        elif kind == "diagram":
            need(1)
            diagrams[args[0]] = diagram_from_lines(body)
        elif kind == "triangle":
            need(0)
            for n, raw in body:
                head = raw.split("(", 1)[0].split()
                if len(head) != 3:
                    raise ParseError("expected 'A B C (f) [(g) (h)]'", n, 1)
                tail = raw[raw.index("(") :] if "(" in raw else ""
                found = _LISTS.findall(tail)
                if len(found) not in (1, 3):
                    raise ParseError("expected one or three maps", n, 1)
                ls = [tuple(x.split()) for x in found]
                triangles.append(TriangleDecl(*head, ls[0], *(ls[1:] if len(ls) == 3 else (None, None))))
        elif kind == "nullcob":
            need(0)
            nullcobs += [tuple(r.split()) for _, r in body]
        elif kind == "delta":
            need(0)
            for n, raw in body:
                toks = raw.split()
                if len(toks) != 3:
                    raise ParseError("expected 'A B <rational>'", n, 1)
                deltas[(toks[0], toks[1])] = _frac(toks[2], n)
    mu2 = {}
    for key, rows in mu2_rows.items():
        a, b, c = key
        try:
            Bab, Bbc, Bac = homs[(a, b)], homs[(b, c)], homs[(a, c)]
        except KeyError:
            raise ParseError(f"[mu2 {a} {b} {c}] refers to a missing complex") from None
        tab = [[0] * Bbc.dim for _ in range(Bab.dim)]
        for n, x, y, res in rows:
            try:
                tab[Bab.index(x)][Bbc.index(y)] = Bac.vector(res)
            except ValueError:
                raise ParseError(f"unknown basis label in mu2 entry", n, 1) from None
        mu2[key] = tab
    for a in objects:
        for b in objects:
            for c in objects:
                if (a, b, c) not in mu2 and all(k in homs for k in ((a, b), (b, c))):
                    mu2[(a, b, c)] = [[0] * homs[(b, c)].dim for _ in range(homs[(a, b)].dim)]
    units = {}
    for a, (n, labs) in units_raw.items():
        try:
            units[a] = homs[(a, a)].vector(labs)
        except (KeyError, ValueError):
            raise ParseError(f"bad unit for {a}", n, 1) from None
    table = IntersectionTable({k: v for k, v in points.items()})
    for k, C in homs.items():
        if k not in points and C.dim == 0:
            table.set_points(*k, {})
    gens = {}
    for name, hn, f in gens_raw:
        def get(key, required=True):
            if key not in f:
                if required:
                    raise ParseError(f"generator {name} needs '{key}:'", hn, 1)
                return None
            return f[key]

        src = get("source")[1]
        ends = tuple(get("ends")[1].split())
        dname = get("diagram")[1]
        if dname not in diagrams:
            raise ParseError(f"generator {name}: no [diagram {dname}] section", hn, 1)
        cyc = get("cycle", False)
        inv = get("inverse", False)
        tri = get("triangle", False)
        gens[name] = GeneratorDecl(
            name,
            src,
            ends,
            diagrams[dname],
            _lists(cyc[1], cyc[0], 1)[0] if cyc else None,
            _lists(inv[1], inv[0], 1)[0] if inv else None,
            tuple(_lists(tri[1], tri[0], 2)) if tri else None,
        )
    return CategoryPresentation(objects, homs, mu2, units, table, gens, triangles, nullcobs, deltas, validate=validate)


def load_presentation(path: str, validate: bool = True) -> CategoryPresentation:
    with open(path, encoding="utf-8") as fh:
        return read_presentation(fh.read(), validate)


__all__ = ["write_presentation", "read_presentation", "load_presentation", "SECTIONS", "CobError"]

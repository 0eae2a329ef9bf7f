"""Morphism words: structured expressions over generators, with their
source/end bookkeeping and realised diagrams.

Ends are listed bottom to top; the last entry is the target.  ``"0"`` marks
a void end.  Rotations are normalised (steps mod number of ends, nested
rotations merged, ``rot w 0`` is ``w``), so rotation identities hold as
plain structural equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Sequence

from . import constructions as geo
from .errors import BadIndex, EndMismatch, IncompatibleSurgeries, ParseError, ProfileMismatch, TooFewEnds, TooManyEnds
from .objects import EMPTY_LABEL, surgery_object
from .planar import CobordismDiagram, rat

if TYPE_CHECKING:
    from .backend import CategoryPresentation


@dataclass(frozen=True)
class Word:
    op: str
    args: tuple
    source: str
    ends: tuple[str, ...]
    payload: object = field(default=None, compare=False, repr=False, hash=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def target(self) -> str:
        return self.ends[-1]

    @property
    def n_ends(self) -> int:
        """Total number of ends, the source included."""
        return len(self.ends) + 1

    def end_cycle(self) -> tuple[str, ...]:
        return (self.source,) + self.ends

    @property
    def diagram(self) -> CobordismDiagram:
        d = self._cache.get("diagram")
        if d is None:
            d = _realise(self)
            self._cache["diagram"] = d
        return d

    def shadow(self) -> Fraction:
        from .planar import shadow

        return shadow(self.diagram)

    def __str__(self) -> str:
        return to_sexpr(self)


def _void(label: str) -> bool:
    return label == EMPTY_LABEL


def _rank(ends: Sequence[str], i: int) -> int:
    return sum(1 for e in ends[:i] if not _void(e))


def _realise(w: Word) -> CobordismDiagram:
    op = w.op
    if op == "id":
        return geo.identity_diagram(w.source)
    if op == "gen":
        return w.payload
    if op in ("leg", "compose"):
        v, i, k = as_leg(w)
        if _void(v.ends[i]):
            return geo.splice_diagram(v.diagram, None, k.diagram, cut=_rank(v.ends, i))
        return geo.splice_diagram(v.diagram, _rank(v.ends, i), k.diagram)
    if op == "rot":
        base, k = w.args
        d = base.diagram
        src, ends = base.source, base.ends
        for _ in range(k):
            d = geo.rotate_diagram(d, None if _void(src) else src, _void(ends[-1]))
            src, ends = ends[-1], (src,) + ends[:-1]
        return d
    if op == "surgery":
        L, Lp, c, eps = w.args
        return geo.surgery_diagram(L, Lp, w.ends[0], c, eps)
    if op == "union":
        return geo.union_diagram(w.args[0].diagram, w.args[1].diagram)
    if op == "cable":
        return cable_layout(w).diagram
    if op == "braid":
        inner, c = w.args
        return geo.braid_diagram(inner.diagram, w.ends[0], c)
    raise ValueError(f"unknown word operation {op}")


def cable_layout(w: Word) -> geo.CableLayout:
    hit = w._cache.get("layout")
    if hit is None:
        v, vp, c, eps = w.args
        src = None if _void(w.source) else w.source
        hit = geo.cable_layout(v.diagram, vp.diagram, src, [e for e in w.ends if not _void(e)], c, eps)
        w._cache["layout"] = hit
    return hit


# ---------------------------------------------------------------------------
# constructors


def _label(x) -> str:
    return x if isinstance(x, str) else x.label


def identity(L) -> Word:
    L = _label(L)
    return Word("id", (L,), L, (L,))


def gen(p: "CategoryPresentation", name: str) -> Word:
    try:
        g = p.generators[name]
    except KeyError:
        raise ParseError(f"unknown generator {name!r}") from None
    src = p.obj(g.source).label
    ends = tuple(p.obj(e).label for e in g.ends)
    return Word("gen", (name,), src, ends, payload=g.diagram)


def compose(v2: Word, v1: Word) -> Word:
    """v2 after v1: the target of v1 is glued to the source of v2."""
    if v1.target != v2.source:
        raise EndMismatch(f"cannot compose: target {v1.target} of the first word is not the source {v2.source}")
    return Word("compose", (v2, v1), v1.source, v1.ends[:-1] + v2.ends)


def as_leg(w: Word) -> tuple[Word, int, Word]:
    """(v, i, k) for a composition node; compose(v2, v1) is v1 with v2 glued at its top end."""
    if w.op == "compose":
        v2, v1 = w.args
        return v1, len(v1.ends) - 1, v2
    if w.op == "leg":
        return w.args
    raise ValueError("not a composition")


def compose_at_leg(v: Word, i: int, k: Word) -> Word:
    """Glue k below the i-th negative end of v; k's ends replace that end."""
    if not isinstance(i, int) or not 0 <= i < len(v.ends):
        raise BadIndex(f"leg index {i} out of range for {len(v.ends)} negative ends")
    if v.ends[i] != k.source:
        raise EndMismatch(f"leg {i} carries {v.ends[i]}, the glued word starts at {k.source}")
    ends = v.ends[:i] + k.ends + v.ends[i + 1 :]
    return Word("leg", (v, i, k), v.source, ends)


def rotate(v: Word, steps: int = 1) -> Word:
    n = v.n_ends
    if n < 2:
        raise TooFewEnds("rotation needs at least two ends")
    if v.op == "rot":
        base, k0 = v.args
        return rotate(base, k0 + steps)
    k = steps % n
    if k == 0:
        return v
    cyc = v.end_cycle()
    # one step: (src; e1..em) -> (em; src, e1..e_{m-1})
    rot = cyc[-k:] + cyc[:-k]
    return Word("rot", (v, k), rot[0], rot[1:])


def distinguished_triangle(v: Word) -> tuple[Word, Word, Word]:
    """(u, Ru, R^-1 u) for a word with exactly three ends."""
    if v.n_ends < 3:
        raise TooFewEnds("a distinguished triangle needs three ends")
    if v.n_ends > 3:
        raise TooManyEnds("a distinguished triangle needs exactly three ends")
    return v, rotate(v, 1), rotate(v, -1)


def union(w1: Word, w2: Word) -> Word:
    """Disjoint union with w2 (void source) placed below w1."""
    if not _void(w2.source):
        raise EndMismatch("the lower summand of a union must have a void source")
    return Word("union", (w1, w2), w1.source, w2.ends + w1.ends)


def insert_void(w: Word) -> Word:
    """Add a void end at the bottom."""
    return union(w, identity(EMPTY_LABEL))


def surgery(p: "CategoryPresentation", L, Lp, c: Iterable[str] = (), eps=0, strict_minmax: bool = False) -> Word:
    """S_{L,L';c,eps}: L -> (L #_c L', L')."""
    A, B = p.obj(L), p.obj(Lp)
    if A.is_empty or B.is_empty:
        raise EndMismatch("surgery needs two non-void objects")
    c = tuple(sorted(set(c)))
    eps = rat(eps)
    if eps < 0:
        raise IncompatibleSurgeries("handle size must be non-negative")
    pts = p.points_by_id(A, B, c)
    target = surgery_object(A, None, B, None, pts, strict_minmax=strict_minmax)
    return Word("surgery", (A.label, B.label, c, eps), A.label, (target.label, B.label))


def surgery_sum(p: "CategoryPresentation", s1: Word, s2: Word) -> Word:
    """Sum in the GF(2) space of surgeries L -> L' (symmetric difference)."""
    if s1.op != "surgery" or s2.op != "surgery":
        raise IncompatibleSurgeries("surgery_sum takes two surgery words")
    L1, M1, c1, e1 = s1.args
    L2, M2, c2, e2 = s2.args
    if (L1, M1, e1) != (L2, M2, e2):
        raise IncompatibleSurgeries("surgeries must share source, target and handle size")
    return surgery(p, L1, M1, sorted(set(c1) ^ set(c2)), e1)


def cable(v: Word, vp: Word, c: Iterable[str] = (), eps=0) -> Word:
    """C(v, v'; c, eps): L1 -> (L2..Lm, L'1..L's)."""
    if v.source != vp.source or v.target != vp.target:
        raise ProfileMismatch("cabled words must share source and target")
    if len(v.ends) < 2:
        raise ProfileMismatch("the first cabled word needs a secondary end")
    if _void(v.source) or _void(v.target):
        raise ProfileMismatch("cabling needs a non-void source and target")
    c = tuple(sorted(set(c)))
    eps = rat(eps)
    return Word("cable", (v, vp, c, eps), v.ends[0], v.ends[1:-1] + vp.ends[:-1])


def braid_step(w: Word, merged: str, c: Sequence[str]) -> Word:
    """Replace the two lowest ends of w by the surgery object ``merged``."""
    if len(w.ends) < 2:
        raise TooFewEnds("braiding needs two negative ends")
    return Word("braid", (w, tuple(c)), w.source, (merged,) + w.ends[2:])


# ---------------------------------------------------------------------------
# text form


def _fmt_eps(e: Fraction) -> str:
    return str(e)


def to_sexpr(w: Word) -> str:
    op, a = w.op, w.args
    if op == "id":
        return f"(id {a[0]})"
    if op == "gen":
        return f"(gen {a[0]})"
    if op == "compose":
        return f"(compose {to_sexpr(a[0])} {to_sexpr(a[1])})"
    if op == "leg":
        return f"(leg {to_sexpr(a[0])} {a[1]} {to_sexpr(a[2])})"
    if op == "rot":
        return f"(rot {to_sexpr(a[0])} {a[1]})"
    if op == "surgery":
        return f"(surgery {a[0]} {a[1]} ({' '.join(a[2])}) {_fmt_eps(a[3])})"
    if op == "union":
        return f"(union {to_sexpr(a[0])} {to_sexpr(a[1])})"
    if op == "cable":
        return f"(cable {to_sexpr(a[0])} {to_sexpr(a[1])} ({' '.join(a[2])}) {_fmt_eps(a[3])})"
    if op == "braid":
        return f"(braid {to_sexpr(a[0])} {w.ends[0]} ({' '.join(a[1])}))"
    raise ValueError(op)


def _tokens(text: str):
    out = []
    line, col = 1, 0
    i = 0
    while i < len(text):
        ch = text[i]
        col += 1
        if ch == "\n":
            line, col = line + 1, 0
            i += 1
            continue
        if ch.isspace():
            i += 1
            continue
        if ch in "()":
            out.append((ch, line, col))
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace() and text[j] not in "()":
            j += 1
        out.append((text[i:j], line, col))
        col += j - i - 1
        i = j
    return out


def _tree(tokens, pos=0):
    if pos >= len(tokens):
        raise ParseError("unexpected end of word")
    tok, line, col = tokens[pos]
    if tok == "(":
        items = []
        pos += 1
        while True:
            if pos >= len(tokens):
                raise ParseError("unbalanced parenthesis", line, col)
            if tokens[pos][0] == ")":
                return (items, line, col), pos + 1
            node, pos = _tree(tokens, pos)
            items.append(node)
    if tok == ")":
        raise ParseError("unexpected ')'", line, col)
    return (tok, line, col), pos + 1


def parse_word(text: str, p: "CategoryPresentation", strict_minmax: bool = False) -> Word:
    toks = _tokens(text)
    if not toks:
        raise ParseError("empty word", 1, 1)
    tree, pos = _tree(toks)
    if pos != len(toks):
        raise ParseError("trailing input after word", toks[pos][1], toks[pos][2])
    return _build(tree, p, strict_minmax)


def _atom(node) -> str:
    val, line, col = node
    if isinstance(val, list):
        raise ParseError("expected an atom", line, col)
    return val


def _atoms(node) -> list[str]:
    val, line, col = node
    if not isinstance(val, list):
        raise ParseError("expected a list", line, col)
    return [_atom(x) for x in val]


def _int(node) -> int:
    s = _atom(node)
    try:
        return int(s)
    except ValueError:
        raise ParseError(f"expected an integer, got {s!r}", node[1], node[2]) from None


def _frac(node) -> Fraction:
    s = _atom(node)
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected a rational, got {s!r}", node[1], node[2]) from None


_ARITY = {"compose": 2, "id": 1, "gen": 1, "leg": 3, "rot": 2, "surgery": 4, "union": 2, "cable": 4, "braid": 3}


def _build(node, p, sm: bool = False) -> Word:
    val, line, col = node
    if not isinstance(val, list) or not val:
        raise ParseError("expected '(op ...)'", line, col)
    op = _atom(val[0])
    if op not in _ARITY:
        raise ParseError(f"unknown word operation {op!r}", line, col)
    args = val[1:]
    if len(args) != _ARITY[op]:
        raise ParseError(f"{op} takes {_ARITY[op]} arguments", line, col)
    if op == "id":
        return identity(p.obj(_atom(args[0])).label)
    if op == "gen":
        return gen(p, _atom(args[0]))
    if op == "compose":
        return compose(_build(args[0], p, sm), _build(args[1], p, sm))
    if op == "leg":
        return compose_at_leg(_build(args[0], p, sm), _int(args[1]), _build(args[2], p, sm))
    if op == "rot":
        return rotate(_build(args[0], p, sm), _int(args[1]))
    if op == "surgery":
        return surgery(p, _atom(args[0]), _atom(args[1]), _atoms(args[2]), _frac(args[3]), strict_minmax=sm)
    if op == "union":
        return union(_build(args[0], p, sm), _build(args[1], p, sm))
    if op == "cable":
        return cable(_build(args[0], p, sm), _build(args[1], p, sm), _atoms(args[2]), _frac(args[3]))
    if op == "braid":
        inner = _build(args[0], p, sm)
        return braid_step(inner, p.obj(_atom(args[1])).label, _atoms(args[2]))
    raise ParseError(f"unknown word operation {op!r}", line, col)

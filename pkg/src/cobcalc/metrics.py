"""Shadow fragmentation distances, abstract weighted decomposition metrics
and rigidity scans.

All distances are minima over a bounded enumeration, so they are upper
bounds for the true infima; ``MetricResult.upper_bound`` says so.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .backend import CategoryPresentation
from .errors import BadWeight, MissingDelta, UnknownObject
from .objects import EMPTY_LABEL
from .planar import fmt_rat
from .words import Word, compose_at_leg, gen, identity, rotate, to_sexpr, union

INF = math.inf


def fmt_value(v) -> str:
    return "inf" if v == INF else fmt_rat(Fraction(v))


@dataclass(frozen=True)
class MetricResult:
    value: Fraction | float
    certificate: Word | None
    bound: int
    upper_bound: bool = True

    @property
    def finite(self) -> bool:
        return self.value != INF

    def line(self) -> str:
        cert = to_sexpr(self.certificate) if self.certificate is not None else "none"
        return f"value={fmt_value(self.value)} bound={self.bound} certificate={cert}"


@dataclass(frozen=True)
class Move:
    """A generator word applied at a leg (or placed by union if its source is void)."""

    word: Word
    cost: Fraction


def generator_moves(p: CategoryPresentation, surgeries: bool = False) -> list[Move]:
    """Every rotation of every generator, optionally with surgery words for
    the legal representatives of each homology class."""
    out = []
    for name in sorted(p.generators):
        g = gen(p, name)
        cost = g.shadow()
        for k in range(g.n_ends):
            out.append(Move(rotate(g, k), cost))
    if surgeries:
        from .cabling import _class_words

        for a in p.objects:
            for b in p.objects:
                if a != b:
                    for s in _class_words(p, a, b, limit=2):
                        out.append(Move(s, s.shadow()))
    return out


def _admissible(ends: Sequence[str], target: str, family: frozenset) -> bool:
    if target not in ends:
        return False
    rest = list(ends)
    rest.remove(target)
    return all(e == EMPTY_LABEL or e in family for e in rest)


def _search(p: CategoryPresentation, L: str, Lp: str, family: frozenset, bound: int, moves: list[Move]):
    """Uniform-cost search from identity(L); ties broken by serialization."""
    by_source: dict[str, list[Move]] = {}
    for m in moves:
        by_source.setdefault(m.word.source, []).append(m)
    start = identity(L)
    counter = itertools.count()
    heap = [(Fraction(0), to_sexpr(start), next(counter), 0, start)]
    settled: dict[tuple, Fraction] = {}
    while heap:
        cost, key, _, depth, w = heapq.heappop(heap)
        state = (w.ends, depth)
        if state in settled:
            continue
        settled[state] = cost
        if _admissible(w.ends, Lp, family):
            return cost, w
        if depth >= bound:
            continue
        for i, e in enumerate(w.ends):
            if e == EMPTY_LABEL:
                continue
            for m in by_source.get(e, ()):
                nw = m.word if w.op == "id" else compose_at_leg(w, i, m.word)
                heapq.heappush(heap, (cost + m.cost, to_sexpr(nw), next(counter), depth + 1, nw))
        for m in by_source.get(EMPTY_LABEL, ()):
            nw = union(w, m.word)
            heapq.heappush(heap, (cost + m.cost, to_sexpr(nw), next(counter), depth + 1, nw))
    return INF, None


def _oriented(w: Word, L: str) -> Word:
    """Rotate a word L' -> (..., L, ...) so that it starts at L."""
    cyc = w.end_cycle()
    j = cyc.index(L)
    return rotate(w, len(cyc) - j)


def frag_distance(
    L,
    Lp,
    F: Iterable[str],
    p: CategoryPresentation,
    bound: int = 3,
    moves: list[Move] | None = None,
    surgeries: bool = False,
) -> MetricResult:
    """Least shadow of a word L -> (F.., L', F..) within ``bound`` moves,
    symmetrised by also searching from L' and rotating that certificate."""
    L, Lp = _obj(p, L), _obj(p, Lp)
    family = frozenset(_obj(p, x) for x in F)
    if L == Lp:
        return MetricResult(Fraction(0), identity(L), bound)
    moves = generator_moves(p, surgeries) if moves is None else moves
    c1, w1 = _search(p, L, Lp, family, bound, moves)
    c2, w2 = _search(p, Lp, L, family, bound, moves)
    if w2 is not None:
        w2 = _oriented(w2, L)
    if c1 == INF and c2 == INF:
        return MetricResult(INF, None, bound)
    if (c1, to_sexpr(w1) if w1 else "") <= (c2, to_sexpr(w2) if w2 else "") and c1 != INF:
        return MetricResult(c1, w1, bound)
    return MetricResult(c2, w2, bound)


def _obj(p: CategoryPresentation, x) -> str:
    try:
        return p.obj(x).label
    except UnknownObject:
        raise
    except Exception as e:
        raise UnknownObject(str(e)) from None


def avg_distance(L, Lp, F, Fp, p: CategoryPresentation, bound: int = 3, **kw) -> tuple[MetricResult, MetricResult, Fraction | float]:
    """d^{F,F'} = (d^F + d^F') / 2 with infinity absorbing."""
    a = frag_distance(L, Lp, F, p, bound, **kw)
    b = frag_distance(L, Lp, Fp, p, bound, **kw)
    if a.value == INF or b.value == INF:
        return a, b, INF
    return a, b, (Fraction(a.value) + Fraction(b.value)) / 2


def concatenate(w1: Word, w2: Word, via: str) -> Word:
    """Glue w2 (starting at ``via``) at the leg of w1 that carries ``via``."""
    return compose_at_leg(w1, w1.ends.index(via), w2)


# ---------------------------------------------------------------------------
# abstract weighted decompositions


@dataclass(frozen=True)
class DecompMove:
    """A declared decomposition source -> ends with a weight; ``parts``
    lists the names of moves it is a composite of (for subadditivity)."""

    name: str
    source: str
    ends: tuple[str, ...]
    weight: Fraction
    parts: tuple[str, ...] = ()


def check_weights(moves: Sequence[DecompMove]) -> None:
    names = {m.name: m for m in moves}
    for m in moves:
        if m.weight < 0:
            raise BadWeight(f"move {m.name} has negative weight")
        if m.ends == (m.source,) and m.weight != 0:
            raise BadWeight(f"identity move {m.name} must have weight 0")
        if m.parts:
            missing = [x for x in m.parts if x not in names]
            if missing:
                raise BadWeight(f"move {m.name} refers to unknown parts {missing}")
            if m.weight > sum((names[x].weight for x in m.parts), Fraction(0)):
                raise BadWeight(f"move {m.name} is heavier than the sum of its parts")


@dataclass(frozen=True)
class AbstractResult:
    value: Fraction | float
    path: tuple[tuple[int, str], ...]
    symmetrized: Fraction | float


def _abstract_search(K, Kp, family: frozenset, moves: Sequence[DecompMove], bound: int):
    by_source: dict[str, list[DecompMove]] = {}
    for m in moves:
        by_source.setdefault(m.source, []).append(m)
    start = (K,)
    heap = [(Fraction(0), (), start)]
    settled = set()
    while heap:
        cost, path, ends = heapq.heappop(heap)
        key = (ends, len(path))
        if key in settled:
            continue
        settled.add(key)
        if _admissible(ends, Kp, family):
            return cost, path
        if len(path) >= bound:
            continue
        for i, e in enumerate(ends):
            for m in by_source.get(e, ()):
                nends = ends[:i] + m.ends + ends[i + 1 :]
                heapq.heappush(heap, (cost + m.weight, path + ((i, m.name),), nends))
    return INF, ()


def abstract_metric_sF(Kp, K, F: Iterable[str], moves: Sequence[DecompMove], bound: int = 4) -> AbstractResult:
    """Least weight of a decomposition K' -> (F.., K, F..) by declared moves;
    the symmetrised value is the max over both directions."""
    check_weights(moves)
    family = frozenset(F)
    if K == Kp:
        return AbstractResult(Fraction(0), (), Fraction(0))
    v1, path = _abstract_search(Kp, K, family, moves, bound)
    v2, _ = _abstract_search(K, Kp, family, moves, bound)
    return AbstractResult(v1, path, max(v1, v2))


def brute_force_sF(Kp, K, F: Iterable[str], moves: Sequence[DecompMove], bound: int = 4):
    """Exhaustive path enumeration (oracle for the search)."""
    family = frozenset(F)
    best = INF
    frontier = [((Kp,), Fraction(0))]
    for _ in range(bound + 1):
        nxt = []
        for ends, cost in frontier:
            if _admissible(ends, K, family):
                best = min(best, cost)
            for i, e in enumerate(ends):
                for m in moves:
                    if m.source == e:
                        nxt.append((ends[:i] + m.ends + ends[i + 1 :], cost + m.weight))
        frontier = nxt
    return Fraction(0) if K == Kp else best


def shadow_moves(p: CategoryPresentation, zero_isos: bool = False) -> list[DecompMove]:
    """Decomposition moves induced by the generators (weight = shadow), with
    optional zero-weight moves between isomorphic base objects."""
    out = [
        DecompMove(to_sexpr(m.word), m.word.source, m.word.ends, m.cost)
        for m in generator_moves(p)
    ]
    if zero_isos:
        for a in p.objects:
            for b in p.objects:
                if a != b and p.isomorphic(a, b):
                    out.append(DecompMove(f"iso:{a}:{b}", a, (b,), Fraction(0)))
    return out


# ---------------------------------------------------------------------------
# scans


@dataclass
class ScanReport:
    lines: list[str] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    nondegenerate: bool | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def simple_words(p: CategoryPresentation, bound: int = 3) -> list[Word]:
    """All chains of at most ``bound`` simple moves (generators and their
    rotations with exactly one negative end)."""
    moves = [m.word for m in generator_moves(p) if m.word.n_ends == 2 and m.word.source != EMPTY_LABEL and m.word.target != EMPTY_LABEL]
    out = []
    layer = list(moves)
    for _ in range(bound):
        out.extend(layer)
        nxt = []
        for w in layer:
            for m in moves:
                if m.source == w.target:
                    nxt.append(compose_at_leg(w, 0, m))
        layer = nxt
    return out


def rigidity_scan(p: CategoryPresentation, F=(), Fp=(), deltas=None, bound: int = 3) -> ScanReport:
    """Check shadow >= delta(source, target) on every enumerated simple word
    between distinct objects, and whether d^{F,F'} separates objects."""
    deltas = p.deltas if deltas is None else deltas
    rep = ScanReport()
    for w in simple_words(p, bound):
        if w.source == w.target:
            continue
        key = (w.source, w.target)
        if key not in deltas:
            raise MissingDelta(f"no lower bound given for ({w.source}, {w.target})")
        d = Fraction(deltas[key])
        s = w.shadow()
        ok = s >= d
        line = f"{'PASS' if ok else 'FAIL'} shadow={fmt_rat(s)} delta={fmt_rat(d)} word={to_sexpr(w)}"
        rep.lines.append(line)
        if not ok:
            rep.violations.append(line)
    labels = list(p.objects)
    nondeg = True
    for a, b in itertools.combinations(labels, 2):
        _, _, v = avg_distance(a, b, F, Fp, p, bound)
        if v == 0:
            nondeg = False
        rep.lines.append(f"distance {a} {b} = {fmt_value(v)}")
    rep.nondegenerate = nondeg
    rep.lines.append(f"nondegenerate={'yes' if nondeg else 'no'}")
    return rep


def theta_noncontraction(p: CategoryPresentation, F=(), bound: int = 3, zero_isos: bool = False) -> ScanReport:
    """d^F(L, L') >= s^F_a(L, L') on every pair, where the algebraic side
    uses the generator shadows as weights (plus optional zero-weight isos)."""
    rep = ScanReport()
    amoves = shadow_moves(p, zero_isos)
    gmoves = generator_moves(p)
    for a in p.objects:
        for b in p.objects:
            d = frag_distance(a, b, F, p, bound, moves=gmoves).value
            s1 = abstract_metric_sF(a, b, F, amoves, bound).value
            s2 = abstract_metric_sF(b, a, F, amoves, bound).value
            # symmetrised algebraic side, as for abstract_metric_sF
            s = max(s1, s2)
            ok = d >= s
            line = f"{'PASS' if ok else 'FAIL'} {a} {b} d={fmt_value(d)} s={fmt_value(s)}"
            rep.lines.append(line)
            if not ok:
                rep.violations.append(line)
    return rep

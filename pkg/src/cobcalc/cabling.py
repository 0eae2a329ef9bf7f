"""Cabling equivalence, braiding into iterated cones, the axiom checks and
the naturality / octahedral constructions.

Equivalence is decided on Theta classes.  When two words are equivalent the
certificate carries a chain eta with d eta = w + w' (the stand-in for the
marking at the cabling crossing) and, when the profiles allow it, the cable
word itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .backend import CategoryPresentation, HomologyClass
from .constructions import contains_translate
from .errors import (
    ActionViolation,
    CobError,
    NotCommuting,
    NotEvaluable,
    NotExact,
    ProfileMismatch,
)
from .gf2 import bits
from .objects import surgery_object
from .theta import bottom_split, theta, triangle_data
from .words import (
    Word,
    braid_step,
    cable,
    cable_layout,
    compose,
    gen,
    identity,
    insert_void,
    rotate,
    surgery,
)

__all__ = [
    "EquivalenceCertificate",
    "cable",
    "cabling_equivalent",
    "legal_representative",
    "braid_ends",
    "AxiomReport",
    "check_axioms",
    "default_sample",
    "SquareResult",
    "naturality_square",
    "octahedron",
]


@dataclass(frozen=True)
class EquivalenceCertificate:
    verdict: bool
    theta_values: tuple[HomologyClass, HomologyClass]
    witness: tuple[str, ...] | None = None
    witness_vector: int | None = None
    cable: Word | None = None

    @property
    def label(self) -> str:
        return "equivalent" if self.verdict else "inequivalent"

    def verify(self) -> bool:
        """d(witness) = w + w' exactly (equivalent verdicts only)."""
        if not self.verdict:
            return self.witness is None
        a, b = self.theta_values
        return a.space.D(self.witness_vector) == a.rep ^ b.rep

    def __str__(self) -> str:
        if self.verdict:
            return f"equivalent witness={{{','.join(self.witness)}}}"
        return "inequivalent"


def cabling_equivalent(v: Word, vp: Word, p: CategoryPresentation) -> EquivalenceCertificate:
    """Decide v ~ v' by comparing Theta classes; witness the equality."""
    a, b = theta(v, p), theta(vp, p)
    if a.source.label != b.source.label or a.target.label != b.target.label:
        return EquivalenceCertificate(False, (a, b))
    eta = a.space.complex.boundary_witness(a.rep ^ b.rep)
    if eta is None:
        return EquivalenceCertificate(False, (a, b))
    labels = tuple(a.space.labels(eta))
    cw = None
    if v.n_ends >= 3:
        try:
            cw = cable(v, vp, labels)
        except ProfileMismatch:
            cw = None
    return EquivalenceCertificate(True, (a, b), labels, eta, cw)


def legal_representative(p: CategoryPresentation, X, Y, rep: int, limit: int = 12) -> int | None:
    """A representative of the class of ``rep`` whose points all satisfy
    f_X > f_Y (so it can mark a surgery X #_c Y), or None."""
    X, Y = p.obj(X), p.obj(Y)
    pts = p.points(X, Y)
    legal = 0
    for n, x in enumerate(pts):
        if x.f_src > x.f_dst:
            legal |= 1 << n
    if rep & ~legal == 0:
        return rep
    cx = p.hom(X, Y).complex
    bnd = [col for col in cx.d.columns() if col]
    if len(bnd) > limit:
        bnd = bnd[:limit]
    for r in range(1, len(bnd) + 1):
        for combo in itertools.combinations(bnd, r):
            v = rep
            for col in combo:
                v ^= col
            if v & ~legal == 0:
                return v
    return None


def braid_ends(v: Word, p: CategoryPresentation) -> tuple[Word, object]:
    """Merge the negative ends of v pairwise from the bottom into one
    iterated surgery object L'' and return (simple word L -> L'', L'')."""
    w = v
    while len(w.ends) >= 2:
        c = bottom_split(w, p)
        E0, E1 = p.obj(w.ends[0]), p.obj(w.ends[1])
        rep = legal_representative(p, E1, E0, c.rep)
        if rep is None:
            raise ActionViolation(f"no action-negative representative of the connecting class {c}")
        ids = p.hom(E1, E0).labels(rep)
        merged = surgery_object(E1, None, E0, None, p.points_by_id(E1, E0, ids))
        w = braid_step(w, merged.label, ids)
    return w, p.obj(w.target)


# ---------------------------------------------------------------------------
# axioms


@dataclass
class AxiomReport:
    lines: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    def record(self, axiom: str, ok: bool, what: str, ref: str = "") -> None:
        line = f"{'PASS' if ok else 'FAIL'} {axiom} {what}" + (f" [{ref}]" if ref else "")
        self.lines.append(line)
        self.counts.setdefault(axiom, [0, 0])[0 if ok else 1] += 1
        if not ok:
            self.failures.append(line)

    def skip(self, axiom: str, what: str, why: str) -> None:
        self.lines.append(f"SKIP {axiom} {what} ({why})")

    @property
    def ok(self) -> bool:
        return not self.failures and all(self.counts.get(f"ax{i}", [0])[0] > 0 for i in range(1, 6))

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _class_words(p: CategoryPresentation, X, Y, limit: int = 3) -> list[Word]:
    """Surgery words X -> Y, one per nonzero homology class with a legal
    representative (at most 2**limit - 1 classes)."""
    reps = p.hom(X, Y).complex.homology().representatives[:limit]
    out = []
    for mask in range(1, 1 << len(reps)):
        z = 0
        for t in bits(mask):
            z ^= reps[t]
        rep = legal_representative(p, X, Y, z)
        if rep is not None:
            out.append(surgery(p, X, Y, p.hom(X, Y).labels(rep)))
    return out


def default_sample(p: CategoryPresentation) -> list[Word]:
    """Identities, generators, their rotations and one surgery word per class."""
    out: list[Word] = []
    for a in p.objects:
        out.append(identity(a))
    for name in sorted(p.generators):
        g = gen(p, name)
        out.append(g)
        if g.n_ends <= 3:
            out.append(rotate(g))
    for a in p.objects:
        for b in p.objects:
            if a != b:
                out.extend(_class_words(p, a, b, limit=2))
                out.append(surgery(p, a, b, ()))
    return out


def _evaluable(ws, p):
    good, bad = [], []
    for w in ws:
        try:
            theta(w, p)
            good.append(w)
        except CobError as e:
            bad.append((w, e))
    return good, bad


def check_axioms(p: CategoryPresentation, sample: list[Word] | None = None, max_pairs: int = 60) -> AxiomReport:
    """Evaluate the Theta-level content of each axiom on the sample."""
    rep = AxiomReport()
    sample = default_sample(p) if sample is None else list(sample)
    good, bad = _evaluable(sample, p)
    for w, e in bad:
        rep.skip("ax1", str(w), f"{type(e).__name__}")
    by_profile: dict = {}
    for w in good:
        by_profile.setdefault((w.source, w.target), []).append(w)

    # Axiom 1: equivalence relation, congruence, void ends
    for w in good:
        cert = cabling_equivalent(w, w, p)
        rep.record("ax1", cert.verdict and cert.verify(), f"reflexive {w}")
        rep.record("ax1", theta(insert_void(w), p) == theta(w, p), f"void-end {w}")
    pairs = 0
    for prof, ws in sorted(by_profile.items()):
        for a, b in itertools.combinations(ws, 2):
            if pairs >= max_pairs:
                break
            pairs += 1
            ab, ba = cabling_equivalent(a, b, p), cabling_equivalent(b, a, p)
            rep.record("ax1", ab.verdict == ba.verdict and ab.verify() and ba.verify(), f"symmetric {a} {b}")
            if ab.verdict:
                after = [k for k in good if k.source == prof[1]][:3]
                for k in after:
                    ok = theta(compose(k, a), p) == theta(compose(k, b), p)
                    rep.record("ax1", ok, f"congruence {k} after {a} {b}")
                before = [k for k in good if k.target == prof[0]][:3]
                for k in before:
                    ok = theta(compose(a, k), p) == theta(compose(b, k), p)
                    rep.record("ax1", ok, f"congruence {a} {b} after {k}")
                ok = theta(insert_void(a), p) == theta(insert_void(b), p)
                rep.record("ax1", ok, f"union {a} {b}")
        for a, b, c in itertools.islice(itertools.combinations(ws, 3), 10):
            ab, bc, ac = (cabling_equivalent(x, y, p).verdict for x, y in ((a, b), (b, c), (a, c)))
            rep.record("ax1", not (ab and bc) or ac, f"transitive {a} {b} {c}")

    # Axiom 2: the cabled pieces sit inside the cable diagram
    cables = []
    for w in good:
        if w.op == "surgery":
            for w2 in by_profile.get((w.source, w.target), []):
                if w2.op == "surgery":
                    cert = cabling_equivalent(w, w2, p)
                    if cert.cable is not None:
                        cables.append(cert.cable)
    for cw in cables[:6]:
        lay = cable_layout(cw)
        v, vp = cw.args[0], cw.args[1]
        ok = contains_translate(lay.diagram, v.diagram, lay.offset_v) and contains_translate(
            lay.diagram, vp.diagram, lay.offset_vp
        )
        rep.record("ax2", ok, f"erase-crossing {cw}")

    # Axiom 3: Theta(V) o Theta(V-bar) = e
    for w in good:
        if w.n_ends != 2:
            continue
        try:
            back = rotate(w)
            there = theta(compose(back, w), p)
            again = theta(compose(w, back), p)
        except NotEvaluable:
            rep.skip("ax3", str(w), "not invertible")
            continue
        ok = there == p.identity_class(w.source) and again == p.identity_class(w.target)
        rep.record("ax3", ok, f"inverse {w}", f"{theta(back, p)}")

    # Axiom 4: every class of a simple word is carried by a surgery word
    for w in good:
        if w.n_ends != 2 or w.source == w.target:
            continue
        a = theta(w, p)
        r = legal_representative(p, w.source, w.target, a.rep)
        if r is None:
            rep.record("ax4", False, f"surgery-for {w}", "no action-negative representative")
            continue
        s = surgery(p, w.source, w.target, p.hom(w.source, w.target).labels(r))
        rep.record("ax4", cabling_equivalent(s, w, p).verdict, f"surgery-for {w}", str(s))
    for a in p.objects:
        for b in p.objects:
            if a == b:
                continue
            s0 = surgery(p, a, b, ())
            rep.record("ax4", theta(s0, p).is_zero(), f"class {s0}")
            for s in _class_words(p, a, b, limit=2):
                rep.record("ax4", theta(s, p).rep == p.hom(a, b).vector(s.args[2]), f"class {s}")

    # Axiom 5: the two cancellation identities on commuting squares
    for sq in _squares(p, good, limit=6):
        try:
            res = naturality_square(*sq, p=p)
        except CobError as e:
            rep.record("ax5", False, f"square {sq[1]} {sq[3]}", type(e).__name__)
            continue
        for name, ok in res.checks.items():
            rep.record("ax5", ok, f"{name} {res.word}")
    return rep


def _squares(p: CategoryPresentation, good: list[Word], limit: int = 6):
    """Commuting squares (v, s, v', s') built from the sample: v and v'
    simple, s and s' surgeries with s' = v^-1 s v'."""
    simple = [w for w in good if w.n_ends == 2 and not w.target.startswith("[")]
    out = []
    for s in [w for w in good if w.op == "surgery"]:
        L, M = s.source, s.target
        for v in [w for w in simple if w.source == L]:
            for vp in [w for w in simple if w.source == M]:
                inv = p.inverse(theta(v, p))
                if inv is None:
                    continue
                target = inv.then(theta(s, p)).then(theta(vp, p))
                r = legal_representative(p, v.target, vp.target, target.rep)
                if r is None:
                    continue
                try:
                    sp = surgery(p, v.target, vp.target, p.hom(v.target, vp.target).labels(r))
                except CobError:
                    continue
                out.append((v, s, vp, sp))
                if len(out) >= limit:
                    return out
    return out


# ---------------------------------------------------------------------------
# triangulation constructions


@dataclass(frozen=True)
class SquareResult:
    word: Word
    marking: tuple[str, ...]
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _square_marking(p, L, Mp, lhs: HomologyClass, rhs: HomologyClass, err) -> tuple[str, ...]:
    eta = p.hom(L, Mp).complex.boundary_witness(lhs.rep ^ rhs.rep)
    if eta is None:
        raise err
    return tuple(p.hom(L, Mp).labels(eta))


def naturality_square(v: Word, s: Word, vp: Word, sp: Word, p: CategoryPresentation) -> SquareResult:
    """Square L -s-> M, L -v-> L', M -v'-> M', L' -s'-> M' with s, s'
    surgery words.  Builds V'' = C(v' o s, s' o v; c) : K -> K' and checks
    Theta(V'' o Rs) = Theta(Rs' o v') and Theta(v o R^-1 s) = Theta(R^-1 s' o V'')."""
    if s.op != "surgery" or sp.op != "surgery":
        raise NotEvaluable("the square's vertical sides must be surgery words")
    top = compose(vp, s)
    bottom = compose(sp, v)
    a, b = theta(s, p).then(theta(vp, p)), theta(v, p).then(theta(sp, p))
    if a != b:
        raise NotCommuting(f"Theta(v' o s) = {a} differs from Theta(s' o v) = {b}")
    c = _square_marking(p, s.source, sp.target, a, b, NotCommuting("square does not commute"))
    vpp = cable(top, bottom, c)
    checks = {
        "cancellation1": theta(compose(vpp, rotate(s)), p) == theta(compose(rotate(sp), vp), p),
        "cancellation2": theta(compose(rotate(sp, -1), vpp), p) == theta(compose(v, rotate(s, -1)), p),
    }
    return SquareResult(vpp, c, checks)


def octahedron(s: Word, sp: Word, vp: Word, p: CategoryPresentation) -> SquareResult:
    """Surgeries S : L -> (K, M), S' : L -> (K', M') and V' : M -> (M'', M')
    with Theta(S') = Theta(V' o S).  Builds V'' = C(V' o S, S'; h) with
    V = id, sets W'' = R V'' : K' -> M'' and checks
    Theta(W'' o R S') = Theta(R V') and Theta(R^2 V' o W'') = Theta(S o R^-1 S')."""
    for w in (s, sp, vp):
        if w.op != "surgery":
            raise NotEvaluable("octahedron takes three surgery words")
    if s.source != sp.source or s.target != vp.source or vp.target != sp.target:
        raise NotExact("the three triangles do not fit together")
    first = compose(vp, s)
    a, b = theta(first, p), theta(sp, p)
    h = _square_marking(p, s.source, sp.target, a, b, NotExact("Theta(S') differs from Theta(V' o S)"))
    vpp = cable(first, sp, h)
    w2 = rotate(vpp)
    checks = {
        "octahedral-top": theta(compose(w2, rotate(sp)), p) == theta(rotate(vp), p),
        "octahedral-bottom": theta(compose(rotate(vp, 2), w2), p) == theta(compose(s, rotate(sp, -1)), p),
    }
    # the new triangle is exact: consecutive composites vanish
    u, r, r2 = triangle_data(vpp, p)
    checks["exact"] = all(x.then(y).is_zero() for x, y in ((u, r), (r, r2), (r2, u)))
    return SquareResult(vpp, h, checks)

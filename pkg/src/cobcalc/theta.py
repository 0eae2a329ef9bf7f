"""Structural evaluation of Theta on morphism words.

``theta(w, p)`` is a class in H(Hom(source, target)).  Words with three ends
also carry a full triangle ``(u, r, r2)``: u = Theta(w) : L -> T,
r : T -> B and r2 : B -> L, where (B, T) are the two negative ends.  The
triangle is what rotations evaluate to, and what braiding consumes.
"""

from __future__ import annotations

from .backend import CategoryPresentation, HomologyClass
from .gf2 import Span
from .errors import InvalidPresentation, MarkingNotCycle, NotEvaluable, NotExact, UnknownIntersection
from .objects import EMPTY_LABEL, MarkedObject, surgery_object
from .words import Word, as_leg, braid_step, compose_at_leg

Triangle = tuple[HomologyClass, HomologyClass, HomologyClass]


def _cache(p: CategoryPresentation, kind: str) -> dict:
    store = p.__dict__.setdefault("_theta_cache", {})
    return store.setdefault(kind, {})


def _vector(p: CategoryPresentation, X, Y, ids) -> int:
    try:
        return p.hom(X, Y).vector(ids)
    except InvalidPresentation as e:
        raise UnknownIntersection(str(e)) from None


def zero(p: CategoryPresentation, X, Y) -> HomologyClass:
    return p.cls(X, Y, 0)


def embed(p: CategoryPresentation, X, Y, vec: int, big_X, big_Y, off_x: int, off_y: int) -> int:
    """Move a chain of Hom(X, Y) into Hom(big_X, big_Y), where X and Y sit
    at component offsets ``off_x`` / ``off_y``."""
    small, big = p.hom(X, Y), p.hom(big_X, big_Y)
    out = 0
    for (i, k) in small.blocks:
        b = small.block(vec, i, k)
        if b:
            out ^= big.embed(i + off_x, k + off_y, b)
    return out


def _split(p: CategoryPresentation, label: str) -> tuple[MarkedObject, MarkedObject]:
    """The two top-level pieces of a surgery object label."""
    depth = 0
    for i, ch in enumerate(label):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch in "+#" and depth == 1:
            left = label[1:i]
            right = label[label.index("#", i + 1) + 1 : -1] if ch == "#" else label[i + 1 : -1]
            return p.obj(left), p.obj(right)
    raise NotEvaluable(f"{label} is not a surgery object")


def inverse_of(w: Word, p: CategoryPresentation) -> HomologyClass:
    """Theta of the inverted simple word: declared inverse if any, else the
    computed inverse class."""
    if w.op == "gen":
        g = p.generators[w.args[0]]
        if g.inverse is not None:
            return p.cls(w.target, w.source, p.hom(w.target, w.source).vector(g.inverse))
    inv = p.inverse(theta(w, p))
    if inv is None:
        raise NotEvaluable(f"{w} is not invertible, so its rotation has no Theta value")
    return inv


def theta(w: Word, p: CategoryPresentation) -> HomologyClass:
    """Theta(w) in H(Hom(source, target))."""
    store = _cache(p, "theta")
    hit = store.get(w)
    if hit is None:
        hit = _theta(w, p)
        store[w] = hit
    return hit


def _theta(w: Word, p: CategoryPresentation) -> HomologyClass:
    op = w.op
    if op == "id":
        return p.identity_class(w.source)
    if op == "gen":
        g = p.generators[w.args[0]]
        if g.cycle is None:
            raise NotEvaluable(f"generator {g.name} has no assigned cycle")
        return p.cls(w.source, w.target, p.hom(w.source, w.target).vector(g.cycle))
    if op in ("compose", "leg"):
        v, i, k = as_leg(w)
        if i == len(v.ends) - 1:
            return theta(v, p).then(theta(k, p))
        return theta(v, p)
    if op == "union":
        return theta(w.args[0], p)
    if op == "surgery":
        L, Lp, c, _ = w.args
        vec = _vector(p, L, Lp, c)
        if not p.hom(L, Lp).complex.is_cycle(vec):
            raise MarkingNotCycle(f"surgery marking {list(c)} is not a cycle in Hom({L}, {Lp})")
        return p.cls(L, Lp, vec)
    if op == "rot":
        base, k = w.args
        n = base.n_ends
        if n == 2:
            return inverse_of(base, p)
        if n == 3:
            return rotated(triangle_data(base, p), k)[0]
        raise NotEvaluable("rotations of words with more than three ends have no Theta value")
    if op == "cable":
        return cable_theta(w, p)
    if op == "braid":
        inner, c = w.args
        if inner.n_ends == 3:
            return _braid_theta(w, p)
        return theta(inner, p)
    raise NotEvaluable(f"no Theta rule for {op}")


def rotated(t: Triangle, k: int) -> Triangle:
    k %= 3
    return t[k:] + t[:k]


# ---------------------------------------------------------------------------
# triangles


def triangle_data(w: Word, p: CategoryPresentation) -> Triangle:
    """(u, r, r2) for a word with exactly three ends."""
    if w.n_ends != 3:
        raise NotEvaluable("triangle data needs exactly three ends")
    store = _cache(p, "triangle")
    hit = store.get(w)
    if hit is None:
        hit = _triangle(w, p)
        store[w] = hit
    return hit


def _triangle(w: Word, p: CategoryPresentation) -> Triangle:
    op = w.op
    src = w.source
    B, T = w.ends
    if op == "gen":
        g = p.generators[w.args[0]]
        if g.triangle is None:
            raise NotEvaluable(f"generator {g.name} has no declared triangle")
        r = p.cls(T, B, p.hom(T, B).vector(g.triangle[0]))
        r2 = p.cls(B, src, p.hom(B, src).vector(g.triangle[1]))
        return theta(w, p), r, r2
    if op == "surgery":
        K = p.obj(B)
        nL = len(p.obj(src).components)
        iota = embed(p, T, T, p.unit(T), T, K, 0, nL)
        pi = embed(p, src, src, p.unit(src), K, src, 0, 0)
        return theta(w, p), p.cls(T, K, iota), p.cls(K, src, pi)
    if op == "rot":
        base, k = w.args
        return rotated(triangle_data(base, p), k)
    if op in ("compose", "leg"):
        v, i, k = as_leg(w)
        if v.n_ends == 3 and k.n_ends == 2:
            u, r, r2 = triangle_data(v, p)
            tk = theta(k, p)
            tk_inv = inverse_of(k, p)
            if i == 1:
                return u.then(tk), tk_inv.then(r), r2
            return u, r.then(tk), tk_inv.then(r2)
        if v.n_ends == 2 and k.n_ends == 3:
            tv = theta(v, p)
            tv_inv = inverse_of(v, p)
            u, r, r2 = triangle_data(k, p)
            return tv.then(u), r, r2.then(tv_inv)
        raise NotEvaluable("no triangle rule for this composite")
    if op == "union":
        w1, w2 = w.args
        if w1.n_ends == 2:
            return theta(w1, p), zero(p, T, B), zero(p, B, src)
        raise NotEvaluable("no triangle rule for this union")
    if op == "cable":
        return _cable_triangle(w, p)
    if op == "braid":
        return _braid_triangle(w, p)
    raise NotEvaluable(f"no triangle rule for {op}")


# ---------------------------------------------------------------------------
# cables


def _cable_parts(w: Word):
    """Split a cable into (S, X, S', Y, c): first word X o S (or S), second
    word S' o Y (or S'), with S and S' surgery words."""
    v, vp, c, _ = w.args
    if v.op == "surgery":
        S, X = v, None
    elif v.op == "compose" and v.args[1].op == "surgery":
        X, S = v.args
    else:
        raise NotEvaluable("the first cabled word is not a surgery followed by a morphism")
    if vp.op == "surgery":
        Sp, Y = vp, None
    elif vp.op == "compose" and vp.args[0].op == "surgery" and vp.args[1].n_ends == 2:
        Sp, Y = vp.args
    else:
        raise NotEvaluable("the second cabled word is not a morphism followed by a surgery")
    return S, X, Sp, Y, c


def cable_theta(w: Word, p: CategoryPresentation) -> HomologyClass:
    """Theta of C(X o S, S' o Y; c) : Cone(s) -> Cone(s').

    The map is the chain of twisted complexes with components y on L -> L',
    x on M -> M' and the marking c on L -> M'; it is a cycle exactly when
    dc = s x + y s' (otherwise MarkingNotCycle).
    """
    S, X, Sp, Y, c = _cable_parts(w)
    L, M = S.source, S.target
    Lp, Mp = Sp.source, Sp.target
    K, Kp = p.obj(S.ends[0]), p.obj(Sp.ends[0])
    nL, nLp = len(p.obj(L).components), len(p.obj(Lp).components)
    x = theta(X, p) if X is not None else p.identity_class(M)
    y = theta(Y, p) if Y is not None else p.identity_class(L)
    if x.target.label != Mp or y.target.label != Lp:
        raise NotEvaluable("cabled words do not match the square pattern")
    f = embed(p, L, Lp, y.rep, K, Kp, 0, 0)
    f ^= embed(p, M, Mp, x.rep, K, Kp, nL, nLp)
    f ^= embed(p, L, Mp, _vector(p, L, Mp, c), K, Kp, 0, nLp)
    if not p.hom(K, Kp).complex.is_cycle(f):
        raise MarkingNotCycle(f"cable marking {list(c)} does not make the square commute on the nose")
    return p.cls(K, Kp, f)


def _cable_triangle(w: Word, p: CategoryPresentation) -> Triangle:
    """Triangle of the octahedral cable C(V' o S, S'; h) with V' a surgery
    M -> (M'', M'): the map f : K -> K', then K' -> M'' and M'' -> K."""
    S, X, Sp, Y, c = _cable_parts(w)
    if X is None or X.op != "surgery" or Y is not None:
        raise NotEvaluable("no triangle rule for this cable")
    f = cable_theta(w, p)
    L, M = S.source, S.target
    Mp = Sp.target
    K, Kp, M2 = p.obj(S.ends[0]), p.obj(Sp.ends[0]), p.obj(X.ends[0])
    nL, nM = len(p.obj(L).components), len(p.obj(M).components)
    s = theta(S, p)
    # K' = (L, M') -> M'' = (M, M'): s on L -> M, e on M' -> M', h on L -> M'
    g = embed(p, L, M, s.rep, Kp, M2, 0, 0)
    g ^= embed(p, Mp, Mp, p.unit(Mp), Kp, M2, nL, nM)
    g ^= embed(p, L, Mp, _vector(p, L, Mp, c), Kp, M2, 0, nM)
    # M'' -> K = (L, M): e on M -> M
    h = embed(p, M, M, p.unit(M), M2, K, 0, nL)
    return f, p.cls(Kp, M2, g), p.cls(M2, K, h)


# ---------------------------------------------------------------------------
# braiding


def bottom_split(w: Word, p: CategoryPresentation) -> HomologyClass:
    """The connecting class from the second-lowest to the lowest end."""
    if w.n_ends == 3:
        return triangle_data(w, p)[1]
    if w.op in ("compose", "leg"):
        v, i, k = as_leg(w)
        if i == 0:
            if k.n_ends >= 3:
                return bottom_split(k, p)
            return bottom_split(v, p).then(theta(k, p))
        if i == 1 and v.n_ends == 3 and k.n_ends == 3:
            # lowest ends are v's bottom and k's bottom: k's bottom -> v's top -> v's bottom
            return triangle_data(k, p)[2].then(triangle_data(v, p)[1])
    if w.op == "braid":
        inner, c = w.args
        if inner.op in ("compose", "leg"):
            v, i, k = as_leg(inner)
            if i == 0 and k.n_ends == 3:
                return bottom_split(compose_at_leg(v, 0, braid_step(k, w.ends[0], c)), p)
    raise NotEvaluable("no rule for the lowest connecting map of this word")


def _braid_theta(w: Word, p: CategoryPresentation) -> HomologyClass:
    """Theta of the braid of a three-ended word: (u, h) into [T # c # B]
    with dh = u c."""
    inner, c = w.args
    src = inner.source
    B, T = inner.ends
    hc = None
    if inner.op == "surgery":
        # the cone's own homotopy: include L as the first piece of L #_c M
        hc = embed(p, src, src, p.unit(src), src, B, 0, 0)
    try:
        r2 = triangle_data(inner, p)[2]
    except NotEvaluable:
        r2 = None
    return _into_cone(p, src, theta(inner, p), T, B, p.obj(w.ends[0]), _vector(p, T, B, c), hc, r2)


def _into_cone(p, src, u, T, B, merged, cv, hc=None, r2=None, limit: int = 10):
    """The map (u, h) : src -> [T # c # B] with dh = u c.

    h is only fixed up to a cycle.  With the back map (a, r2) of the
    triangle, the cycle is solved for so that (a, r2) o (u, h) is the
    identity class; otherwise small cosets are searched for an isomorphism.
    """
    nT = len(p.obj(T).components)
    need = p.mu2(src, T, B, u.rep, cv)
    hom = p.hom(src, B)
    h0 = hom.complex.boundary_witness(need)
    if h0 is None:
        raise NotExact("the composite of the triangle maps is not null-homotopic")
    if hc is not None and hom.D(hc) == need:
        h0 = hc
    base = embed(p, src, T, u.rep, src, merged, 0, 0)

    def build(h):
        return p.cls(src, merged, base ^ embed(p, src, B, h, src, merged, 0, nT))

    first = build(h0)
    if p.is_iso(first):
        return first
    reps = hom.complex.homology().representatives
    if r2 is not None:
        h = _left_inverse_choice(p, src, u, T, B, cv, r2, h0, reps)
        if h is not None and p.is_iso(build(h)):
            return build(h)
    if len(reps) > limit:
        return first
    for h in _coset(h0, reps):
        f = build(h)
        if p.is_iso(f):
            return f
    return first


def _left_inverse_choice(p, src, u, T, B, cv, r2, h0, reps) -> int | None:
    """Solve [u a + h r2] = [id] for h = h0 + cycle, a = a0 + cycle, where
    da = c r2; linear over the homology of End(src)."""
    a0 = p.hom(T, src).complex.boundary_witness(p.mu2(T, B, src, cv, r2.rep))
    if a0 is None:
        return None
    end = p.hom(src, src).complex
    goal = end.class_coordinates(p.unit(src) ^ p.mu2(src, T, src, u.rep, a0) ^ p.mu2(src, B, src, h0, r2.rep))
    s = Span()
    for t, z in enumerate(reps):
        s.add(end.class_coordinates(p.mu2(src, B, src, z, r2.rep)), 1 << t)
    for t, z in enumerate(p.hom(T, src).complex.homology().representatives):
        s.add(end.class_coordinates(p.mu2(src, T, src, u.rep, z)), 1 << (len(reps) + t))
    rest, tag = s.reduce(goal)
    if rest:
        return None
    h = h0
    for t in range(len(reps)):
        if tag >> t & 1:
            h ^= reps[t]
    return h


def _coset(h0: int, reps) -> list[int]:
    out = []
    for mask in range(1, 1 << len(reps)):
        h = h0
        for t in range(len(reps)):
            if mask >> t & 1:
                h ^= reps[t]
        out.append(h)
    return out


def _braid_triangle(w: Word, p: CategoryPresentation) -> Triangle:
    inner, c = w.args
    if inner.op in ("compose", "leg"):
        v, i, k = as_leg(inner)
        if i == 0 and k.n_ends == 3 and v.n_ends == 3:
            return triangle_data(compose_at_leg(v, 0, braid_step(k, w.ends[0], c)), p)
        if i == 1 and k.n_ends == 3 and v.n_ends == 3:
            return _merged_triangle(w, v, k, p)
    raise NotEvaluable("no triangle rule for this braid")


def _merged_triangle(w: Word, v: Word, k: Word, p: CategoryPresentation) -> Triangle:
    """Braid of compose(k, v) with both three-ended: ends (N, kT) with
    N = [kB # c # vB]."""
    inner, c = w.args
    src = w.source
    kB, kT = k.ends
    vB = v.ends[0]
    N = p.obj(w.ends[0])
    nkB = len(p.obj(kB).components)
    uv, rv, r2v = triangle_data(v, p)
    uk, rk, r2k = triangle_data(k, p)
    cv = _vector(p, kB, vB, c)
    # r2 : N -> src, components (a, r2v) with da = c r2v
    need2 = p.mu2(kB, vB, src, cv, r2v.rep)
    a = p.hom(kB, src).complex.boundary_witness(need2)
    if a is None:
        raise NotExact("the merged object has no map back to the source")
    r2 = p.cls(N, src, embed(p, kB, src, a, N, src, 0, 0) ^ embed(p, vB, src, r2v.rep, N, src, nkB, 0))
    # r : kT -> N, components (rk, h) with dh = rk c
    need = p.mu2(kT, kB, vB, rk.rep, cv)
    h = p.hom(kT, vB).complex.boundary_witness(need)
    if h is None:
        raise NotExact("the lower connecting maps do not compose to a boundary")
    u = uv.then(uk)
    r = _exact_connecting(p, src, u, kT, kB, vB, N, rk, h, r2)
    return u, p.cls(kT, N, r), r2


def _exact_connecting(p, src, u, kT, kB, vB, N, rk, h0, r2, limit: int = 10) -> int:
    """The connecting map (rk, h) : kT -> N with h fixed up to a cycle.
    Prefer the choice whose triangle src -> kT -> N braids into an
    isomorphism, so that iterated braiding keeps L'' isomorphic to L."""
    from .cabling import legal_representative

    nkB = len(p.obj(kB).components)
    base = embed(p, kT, kB, rk.rep, kT, N, 0, 0)
    first = base ^ embed(p, kT, vB, h0, kT, N, 0, nkB)
    reps = p.hom(kT, vB).complex.homology().representatives
    if len(reps) > limit:
        return first
    for h in [h0] + _coset(h0, reps):
        r = base ^ embed(p, kT, vB, h, kT, N, 0, nkB)
        rep = legal_representative(p, kT, N, r)
        if rep is None:
            continue
        ids = p.hom(kT, N).labels(rep)
        merged = surgery_object(p.obj(kT), None, N, None, p.points_by_id(p.obj(kT), N, ids))
        try:
            if p.is_iso(_into_cone(p, src, u, kT, N, merged, rep, r2=r2)):
                return r
        except NotExact:
            continue
    return first

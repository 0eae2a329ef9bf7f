"""Small ready-made presentations: the demo, an adversarial variant and
seeded random ones used by the property suites."""

from __future__ import annotations

import random
from fractions import Fraction

from .backend import CategoryPresentation, GeneratorDecl, TriangleDecl
from .constructions import generator_diagram
from .gf2 import ChainComplexGF2, GF2Matrix, cone
from .models import endomorphism_presentation, hom_basis, map_vector, vector_map


def _complex(basis, diff: dict[str, list[str]] | None = None) -> ChainComplexGF2:
    diff = diff or {}
    idx = {b: i for i, b in enumerate(basis)}
    images = [sum(1 << idx[t] for t in diff.get(b, [])) for b in basis]
    return ChainComplexGF2.from_images(tuple(basis), images)


DEMO_COMPLEXES = {
    "A": _complex(["a"]),
    "B": _complex(["p", "q", "r"], {"r": ["p", "q"]}),
    "C": _complex(["s", "t"], {"s": ["t"]}),
}

DEMO_NAMES = {
    ("A", "B"): ["x", "y", "z"],
    ("B", "A"): ["x*", "y*", "z*"],
}

# z is deliberately illegal as a positive surgery point
DEMO_VALUES = {
    ("A", "B"): {"x": (3, 1), "y": (3, 1), "z": (1, 2)},
}


def demo_generators(simple_area=Fraction(1, 2), triangle_area=Fraction(1, 4)) -> list[GeneratorDecl]:
    return [
        GeneratorDecl("g1", "A", ("B",), generator_diagram("A", ["B"], simple_area), ("x",), ("x*", "y*")),
        GeneratorDecl("g2", "A", ("C", "B"), generator_diagram("A", ["C", "B"], triangle_area), ("x",), triangle=((), ())),
    ]


def demo_presentation() -> CategoryPresentation:
    """Three objects A, B, C.

    CF(A, B) has basis {x, y, z} with dz = x + y, so [x] = [y] is the only
    nonzero class; C is acyclic.  g1: A -> B (shadow 1/2) is an iso with
    inverse [x* + y*]; g2: A -> (C, B) (shadow 1/4) is the triangle
    A -> B -> C -> A with zero connecting maps.
    """
    return endomorphism_presentation(
        DEMO_COMPLEXES,
        names=DEMO_NAMES,
        values=DEMO_VALUES,
        generators=demo_generators(),
        deltas={("A", "B"): Fraction(1, 4), ("B", "A"): Fraction(1, 4)},
    )


def adversarial_presentation() -> CategoryPresentation:
    """The demo with g1 given a zero-area diagram."""
    gens = demo_generators(simple_area=0)
    return endomorphism_presentation(
        DEMO_COMPLEXES,
        names=DEMO_NAMES,
        values=DEMO_VALUES,
        generators=gens,
        deltas={("A", "B"): Fraction(1, 4), ("B", "A"): Fraction(1, 4)},
    )


# ---------------------------------------------------------------------------
# random presentations


def random_complex(rng: random.Random, dim: int, prefix: str) -> ChainComplexGF2:
    """A random complex: acyclic pairs plus free generators, in a random basis."""
    images = [0] * dim
    i = 0
    while i < dim:
        if i + 1 < dim and rng.random() < 0.4:
            images[i] = 1 << (i + 1)
            i += 2
        else:
            i += 1
    d = GF2Matrix.from_columns(images, dim)
    while True:
        g = GF2Matrix.from_columns([rng.getrandbits(dim) for _ in range(dim)], dim)
        if g.rank() == dim:
            break
    ginv_cols = []
    # g^-1 by solving g x = e_j
    from .gf2 import solve

    for j in range(dim):
        ginv_cols.append(solve(g, 1 << j))
    ginv = GF2Matrix.from_columns(ginv_cols, dim)
    d2 = g @ d @ ginv
    return ChainComplexGF2(tuple(f"{prefix}{k}" for k in range(dim)), d2)


def random_chain_map(rng: random.Random, a: ChainComplexGF2, b: ChainComplexGF2) -> GF2Matrix:
    """A random cycle of Hom(a, b), i.e. a chain map."""
    from .gf2 import nullspace

    basis = hom_basis(a, b)
    index = {st: n for n, st in enumerate(basis)}
    cols = []
    for s, t in basis:
        img = 0
        for t2 in range(b.dim):
            if (b.differential(1 << t) >> t2) & 1:
                img ^= 1 << index[(s, t2)]
        for s2 in range(a.dim):
            if (a.differential(1 << s2) >> s) & 1:
                img ^= 1 << index[(s2, t)]
        cols.append(img)
    D = GF2Matrix.from_columns(cols, len(basis))
    cyc = nullspace(D)
    v = 0
    for z in cyc:
        if rng.random() < 0.5:
            v ^= z
    return vector_map(a, b, v)


def random_presentation(
    seed: int,
    n_base: int | None = None,
    with_cones: bool = True,
    with_surgeries: bool = True,
) -> CategoryPresentation:
    """A valid presentation with 2-4 base objects of dimension <= 2 and,
    optionally, objects built as cones of random chain maps together with
    their 3-ended triangle generators."""
    rng = random.Random(seed)
    n = n_base or rng.randint(2, 3)
    labels = [f"L{i}" for i in range(n)]
    complexes = {lab: random_complex(rng, rng.randint(1, 2), lab.lower() + "_") for lab in labels}
    gens: list[GeneratorDecl] = []
    pending = []
    if with_cones:
        a, b = rng.sample(labels, 2)
        f = random_chain_map(rng, complexes[a], complexes[b])
        c = cone(f, complexes[a], complexes[b])
        clab = f"K{a[1:]}{b[1:]}"
        complexes[clab] = ChainComplexGF2(tuple(f"{clab.lower()}_{k}" for k in range(c.complex.dim)), c.complex.d)
        pending.append((a, b, clab, f, c))
    p0 = endomorphism_presentation(complexes, validate=False)
    for a, b, clab, f, c in pending:
        pa, pb, pc = complexes[a], complexes[b], complexes[clab]
        u = p0.hom(a, b).labels(map_vector(pa, pb, f))
        iota = p0.hom(b, clab).labels(map_vector(pb, pc, c.iota))
        pi = p0.hom(clab, a).labels(map_vector(pc, pa, c.pi))
        area = Fraction(rng.randint(1, 4), 4)
        gens.append(
            GeneratorDecl(f"t{a[1:]}{b[1:]}", a, (clab, b), generator_diagram(a, [clab, b], area), tuple(u), triangle=(tuple(iota), tuple(pi)))
        )
    # simple generators: isomorphisms between base objects when they exist
    k = 0
    for a in labels:
        for b in labels:
            if a >= b or rng.random() < 0.3:
                continue
            iso = _random_iso(rng, p0, a, b)
            if iso is None:
                continue
            fwd, back = iso
            area = Fraction(rng.randint(0, 4), 4) or Fraction(1, 8)
            gens.append(GeneratorDecl(f"g{k}", a, (b,), generator_diagram(a, [b], area), tuple(fwd), tuple(back)))
            k += 1
    triangles = []
    if with_surgeries:
        a, b = rng.sample(labels, 2)
        cyc = p0.hom(a, b).complex.homology().representatives
        if cyc:
            z = 0
            for r in cyc:
                if rng.random() < 0.6:
                    z ^= r
            ids = p0.hom(a, b).labels(z)
            if ids:
                triangles.append(TriangleDecl(a, b, f"[{a}#{','.join(ids)}#{b}]", tuple(ids)))
    deltas = {(a, b): Fraction(0) for a in labels for b in labels if a != b}
    return endomorphism_presentation(complexes, generators=gens, triangles=triangles, deltas=deltas)


def _random_iso(rng: random.Random, p: CategoryPresentation, a: str, b: str):
    reps = p.hom(a, b).complex.homology().representatives
    if not reps or p.hom(b, a).complex.homology().dim != len(reps):
        return None
    order = list(range(1, 1 << len(reps)))
    rng.shuffle(order)
    for mask in order:
        z = 0
        for t in range(len(reps)):
            if mask >> t & 1:
                z ^= reps[t]
        inv = p.inverse(p.cls(a, b, z))
        if inv is not None:
            return p.hom(a, b).labels(z), inv.labels()
    return None

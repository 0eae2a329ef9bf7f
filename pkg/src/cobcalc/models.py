"""Presentations realised inside the dg category of GF(2) complexes.

Each base object L is assigned a small complex P_L and
CF(L, L') := Hom(P_L, P_L') with D f = d f + f d, mu2(a, b) = b o a and the
identity as unit.  Such data is automatically a strictly unital,
associative dg presentation, so it is a convenient source of valid test
presentations; the presentation loader still re-checks every law.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .backend import CategoryPresentation, GeneratorDecl, TriangleDecl
from .gf2 import ChainComplexGF2, GF2Matrix, bits
from .objects import IntersectionTable, base_object


def hom_basis(pa: ChainComplexGF2, pb: ChainComplexGF2) -> list[tuple[int, int]]:
    """Elementary maps (s -> t) in the order used for hom bases."""
    return [(s, t) for s in range(pa.dim) for t in range(pb.dim)]


def map_vector(pa: ChainComplexGF2, pb: ChainComplexGF2, m: GF2Matrix) -> int:
    """Coordinates of a linear map P_a -> P_b (``m`` acts on column vectors)."""
    v = 0
    for n, (s, t) in enumerate(hom_basis(pa, pb)):
        if m.entry(t, s):
            v |= 1 << n
    return v


def vector_map(pa: ChainComplexGF2, pb: ChainComplexGF2, v: int) -> GF2Matrix:
    cols = [0] * pa.dim
    basis = hom_basis(pa, pb)
    for n in bits(v):
        s, t = basis[n]
        cols[s] ^= 1 << t
    return GF2Matrix.from_columns(cols, pb.dim)


def endomorphism_presentation(
    complexes: Mapping[str, ChainComplexGF2],
    names: Mapping[tuple[str, str], Sequence[str]] | None = None,
    values: Mapping[tuple[str, str], Mapping[str, tuple]] | None = None,
    double_points: Mapping[str, Sequence] | None = None,
    generators: Sequence[GeneratorDecl] = (),
    triangles: Sequence[TriangleDecl] = (),
    nullcobs: Sequence[tuple[str, ...]] = (),
    deltas: Mapping[tuple[str, str], Fraction] | None = None,
    validate: bool = True,
) -> CategoryPresentation:
    """Build a presentation from one complex per object.

    Default point names are ``<s>_<t>`` from the basis labels of the two
    complexes; default primitive values (1, 0) make every point usable as a
    surgery marking in its own direction.
    """
    names = dict(names or {})
    values = dict(values or {})
    labels = sorted(complexes)
    objects = {a: base_object(a, (double_points or {}).get(a, ())) for a in labels}
    homs = {}
    for a in labels:
        for b in labels:
            pa, pb = complexes[a], complexes[b]
            basis = hom_basis(pa, pb)
            pnames = list(names.get((a, b), [f"{pa.basis[s]}_{pb.basis[t]}" for s, t in basis]))
            if len(pnames) != len(basis):
                raise ValueError(f"wrong number of point names for ({a}, {b})")
            index = {st: n for n, st in enumerate(basis)}
            images = []
            for s, t in basis:
                img = 0
                for t2 in bits(pb.differential(1 << t)):
                    img ^= 1 << index[(s, t2)]
                # f o d: the map s -> t precomposed with d hits every s' with s in d(s')
                for s2 in range(pa.dim):
                    if (pa.differential(1 << s2) >> s) & 1:
                        img ^= 1 << index[(s2, t)]
                images.append(img)
            homs[(a, b)] = ChainComplexGF2.from_images(tuple(pnames), images)
    mu2 = {}
    for a in labels:
        for b in labels:
            for c in labels:
                pa, pb, pc = complexes[a], complexes[b], complexes[c]
                bab, bbc = hom_basis(pa, pb), hom_basis(pb, pc)
                iac = {st: n for n, st in enumerate(hom_basis(pa, pc))}
                table = []
                for s, t in bab:
                    row = []
                    for t2, u in bbc:
                        row.append(1 << iac[(s, u)] if t == t2 else 0)
                    table.append(row)
                mu2[(a, b, c)] = table
    units = {}
    for a in labels:
        pa = complexes[a]
        iaa = {st: n for n, st in enumerate(hom_basis(pa, pa))}
        units[a] = sum(1 << iaa[(s, s)] for s in range(pa.dim))
    data = {}
    for a in labels:
        for b in labels:
            given = values.get((a, b), {})
            data[(a, b)] = {n: given.get(n, (1, 0)) for n in homs[(a, b)].basis}
    table = IntersectionTable(data)
    return CategoryPresentation(
        objects,
        homs,
        mu2,
        units,
        table,
        generators={g.name: g for g in generators},
        triangles=triangles,
        nullcobs=nullcobs,
        deltas=deltas,
        validate=validate,
    )


def cone_complex(pa: ChainComplexGF2, pb: ChainComplexGF2, f: GF2Matrix, prefix: str = "") -> ChainComplexGF2:
    """Cone of a chain map as a complex with labels ``<prefix><label>``."""
    from .gf2 import cone

    c = cone(f, pa, pb).complex
    return ChainComplexGF2(tuple(f"{prefix}{x}" for x in c.basis), c.d)

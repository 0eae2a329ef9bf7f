from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cobcalc.demo import random_chain_map, random_complex
from cobcalc.errors import NotChainMap
from cobcalc.gf2 import (
    ChainComplexGF2,
    GF2Matrix,
    cone,
    direct_sum,
    induced_rank,
    is_quasi_iso,
    nullspace,
    rank_of,
    row_space,
    solve,
)


def brute_span(vectors, n):
    span = {0}
    for v in vectors:
        span |= {s ^ v for s in span}
    return span


def brute_homology_dim(c: ChainComplexGF2) -> int:
    n = c.dim
    kernel = [v for v in range(1 << n) if c.d.apply(v) == 0]
    image = {c.d.apply(v) for v in range(1 << n)}
    return (len(kernel).bit_length() - 1) - (len(image).bit_length() - 1)


def brute_quasi_iso(f, a, b) -> bool:
    """f is a quasi-iso iff dims of homology agree and no non-boundary cycle
    of a is sent to a boundary of b (enumeration over all vectors)."""
    if brute_homology_dim(a) != brute_homology_dim(b):
        return False
    ba = {a.d.apply(v) for v in range(1 << a.dim)}
    bb = {b.d.apply(v) for v in range(1 << b.dim)}
    for z in range(1 << a.dim):
        if a.d.apply(z) == 0 and z not in ba and f.apply(z) in bb:
            return False
    return True


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.integers(0, (1 << c) - 1), min_size=r, max_size=r).map(lambda rows: GF2Matrix(r, c, rows))
    )
)


def test_bitstring_round_trip():
    m = GF2Matrix.from_bitstrings(["101", "010"])
    assert m.to_bitstrings() == ["101", "010"]
    assert m.entry(0, 0) == 1 and m.entry(0, 1) == 0
    assert GF2Matrix.from_bitstrings(m.to_bitstrings()) == m


def test_bad_bitstring_rejected():
    with pytest.raises(ValueError):
        GF2Matrix.from_bitstrings(["102"])


def test_d_squared_enforced():
    with pytest.raises(ValueError):
        ChainComplexGF2.from_images(("a", "b"), [0b10, 0b01])


@given(matrices)
def test_rank_nullity(m):
    assert m.rank() + len(nullspace(m)) == m.cols
    for z in nullspace(m):
        assert m.apply(z) == 0


@given(matrices)
def test_rank_matches_enumeration(m):
    image = brute_span(m.columns(), m.rows)
    assert 1 << m.rank() == len(image)


@given(matrices, st.integers(0, 63))
def test_solve(m, x):
    x &= (1 << m.cols) - 1
    b = m.apply(x)
    y = solve(m, b)
    assert y is not None and m.apply(y) == b


@given(st.lists(st.integers(0, 255), max_size=6), st.randoms())
def test_row_space_canonical(vs, rnd):
    shuffled = list(vs)
    rnd.shuffle(shuffled)
    # adding a combination does not change the span
    extra = 0
    for v in vs:
        if rnd.random() < 0.5:
            extra ^= v
    assert row_space(vs) == row_space(shuffled + [extra])
    assert len(row_space(vs)) == rank_of(vs)


def test_zero_differential_homology():
    c = ChainComplexGF2.from_images(("a", "b", "c"), [0, 0, 0])
    assert c.homology().dim == 3


def test_demo_homology():
    # dz = x + y
    c = ChainComplexGF2.from_images(("x", "y", "z"), [0, 0, 0b011])
    h = c.homology()
    assert h.dim == 1
    assert c.same_class(c.vector(["x"]), c.vector(["y"]))
    assert not c.is_boundary(c.vector(["x"]))
    assert c.labels(c.boundary_witness(c.vector(["x", "y"]))) == ["z"]


def test_acyclic_pair():
    c = ChainComplexGF2.from_images(("s", "t"), [0b10, 0])
    assert c.is_acyclic()


@settings(max_examples=60)
@given(st.integers(0, 10_000))
def test_homology_matches_enumeration(seed):
    rng = random.Random(seed)
    c = random_complex(rng, rng.randint(1, 7), "v")
    assert c.homology().dim == brute_homology_dim(c)


def test_cone_of_identity_is_acyclic():
    c = random_complex(random.Random(3), 4, "u")
    assert cone(GF2Matrix.identity(4), c, c).complex.is_acyclic()


def test_cone_of_zero_is_direct_sum():
    rng = random.Random(5)
    a, b = random_complex(rng, 3, "a"), random_complex(rng, 2, "b")
    k = cone(GF2Matrix.zeros(2, 3), a, b).complex
    assert k.d == direct_sum(a, b).d


def test_cone_rejects_non_chain_map():
    a = ChainComplexGF2.from_images(("s", "t"), [0b10, 0])
    b = ChainComplexGF2.from_images(("u",), [0])
    with pytest.raises(NotChainMap):
        cone(GF2Matrix.from_columns([0, 1], 1), a, b)


def test_cone_triangle_maps_compose_to_boundaries():
    rng = random.Random(11)
    a, b = random_complex(rng, 3, "a"), random_complex(rng, 3, "b")
    f = random_chain_map(rng, a, b)
    cn = cone(f, a, b)
    n, m = a.dim, b.dim
    # pi o iota vanishes; iota o f and f o pi are null-homotopic through the
    # inclusion of A and the projection to B
    assert (cn.pi @ cn.iota).is_zero()
    H = GF2Matrix.from_columns([1 << j for j in range(n)], n + m)
    assert cn.iota @ f == cn.complex.d @ H + H @ a.d
    G = GF2Matrix.from_columns([0] * n + [1 << j for j in range(m)], m)
    assert f @ cn.pi == b.d @ G + G @ cn.complex.d


def test_quasi_iso_examples():
    c = random_complex(random.Random(2), 3, "w")
    assert is_quasi_iso(GF2Matrix.identity(3), c, c)
    z = ChainComplexGF2.from_images(("p",), [0])
    assert not is_quasi_iso(GF2Matrix.zeros(1, 1), z, z)


@settings(max_examples=80)
@given(st.integers(0, 100_000))
def test_quasi_iso_matches_oracle(seed):
    rng = random.Random(seed)
    a = random_complex(rng, rng.randint(1, 4), "a")
    b = random_complex(rng, rng.randint(1, 4), "b")
    f = random_chain_map(rng, a, b)
    assert is_quasi_iso(f, a, b) == brute_quasi_iso(f, a, b)
    ha, hb = a.homology().dim, b.homology().dim
    assert is_quasi_iso(f, a, b) == (ha == hb == induced_rank(f, a, b))

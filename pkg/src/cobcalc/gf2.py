"""GF(2) linear algebra on int bitsets and small chain complexes.

A vector is a Python ``int``: bit ``i`` is the coefficient of basis
element ``i``.  Matrices store one int per row.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import NotChainMap


def bits(v: int) -> list[int]:
    """Indices of the set bits of ``v``, ascending."""
    out = []
    i = 0
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return out


def parity(v: int) -> int:
    return v.bit_count() & 1


def vector_from_indices(indices: Iterable[int]) -> int:
    v = 0
    for i in indices:
        v ^= 1 << i
    return v


class GF2Matrix:
    """Dense GF(2) matrix with rows packed into ints."""

    __slots__ = ("rows", "cols", "data", "_columns")

    def __init__(self, rows: int, cols: int, data: Sequence[int] | None = None):
        self.rows = rows
        self.cols = cols
        if data is None:
            data = [0] * rows
        if len(data) != rows:
            raise ValueError("row count does not match data")
        mask = (1 << cols) - 1
        if any(r & ~mask for r in data):
            raise ValueError("row has bits beyond the column count")
        self.data = tuple(data)
        self._columns = None

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "GF2Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "GF2Matrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[int], rows: int) -> "GF2Matrix":
        data = [0] * rows
        for j, col in enumerate(columns):
            for i in bits(col):
                data[i] |= 1 << j
        return cls(rows, len(columns), data)

    @classmethod
    def from_bitstrings(cls, lines: Sequence[str], cols: int | None = None) -> "GF2Matrix":
        """Rows written as strings of 0/1, leftmost character = column 0."""
        if cols is None:
            cols = len(lines[0]) if lines else 0
        data = []
        for line in lines:
            if len(line) != cols or set(line) - {"0", "1"}:
                raise ValueError(f"bad bit-string row {line!r}")
            data.append(vector_from_indices(j for j, ch in enumerate(line) if ch == "1"))
        return cls(len(lines), cols, data)

    def to_bitstrings(self) -> list[str]:
        return ["".join("1" if (r >> j) & 1 else "0" for j in range(self.cols)) for r in self.data]

    def columns(self) -> tuple[int, ...]:
        if self._columns is None:
            cols = [0] * self.cols
            for i, r in enumerate(self.data):
                for j in bits(r):
                    cols[j] |= 1 << i
            self._columns = tuple(cols)
        return self._columns

    def column(self, j: int) -> int:
        return self.columns()[j]

    def entry(self, i: int, j: int) -> int:
        return (self.data[i] >> j) & 1

    def apply(self, v: int) -> int:
        """Matrix times column vector ``v``."""
        out = 0
        cols = self.columns()
        for j in bits(v):
            out ^= cols[j]
        return out

    def __matmul__(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        data = []
        for r in self.data:
            acc = 0
            for k in bits(r):
                acc ^= other.data[k]
            data.append(acc)
        return GF2Matrix(self.rows, other.cols, data)

    def __add__(self, other: "GF2Matrix") -> "GF2Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return GF2Matrix(self.rows, self.cols, [a ^ b for a, b in zip(self.data, other.data)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GF2Matrix):
            return NotImplemented
        return (self.rows, self.cols, self.data) == (other.rows, other.cols, other.data)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        return f"GF2Matrix({self.rows}x{self.cols}, {self.to_bitstrings()})"

    def transpose(self) -> "GF2Matrix":
        return GF2Matrix(self.cols, self.rows, list(self.columns()))

    def is_zero(self) -> bool:
        return not any(self.data)

    def rank(self) -> int:
        return rank_of(self.columns())


class Span:
    """Echelon basis of a span, remembering how each vector was combined.

    Each added vector carries a tag (an int bitset over whatever indexes the
    caller uses); reducing a vector returns the residual and the XOR of the
    tags of the basis vectors used, so membership tests come with witnesses.
    """

    def __init__(self) -> None:
        self._pivots: dict[int, tuple[int, int]] = {}

    def __len__(self) -> int:
        return len(self._pivots)

    def reduce(self, v: int) -> tuple[int, int]:
        tag = 0
        for b in range(v.bit_length() - 1, -1, -1):
            if (v >> b) & 1:
                hit = self._pivots.get(b)
                if hit is not None:
                    v ^= hit[0]
                    tag ^= hit[1]
        return v, tag

    def add(self, v: int, tag: int = 0) -> bool:
        """Add ``v``; returns False (and stores nothing) if already in the span."""
        rest, used = self.reduce(v)
        if rest == 0:
            return False
        self._pivots[rest.bit_length() - 1] = (rest, tag ^ used)
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0

    def basis(self) -> list[int]:
        return [self._pivots[k][0] for k in sorted(self._pivots)]


def rank_of(vectors: Iterable[int]) -> int:
    s = Span()
    for v in vectors:
        s.add(v)
    return len(s)


def solve(m: GF2Matrix, b: int) -> int | None:
    """Some ``x`` with ``m x = b``, or None.  Deterministic."""
    s = Span()
    for j, col in enumerate(m.columns()):
        s.add(col, 1 << j)
    rest, tag = s.reduce(b)
    return tag if rest == 0 else None


def nullspace(m: GF2Matrix) -> list[int]:
    """Basis of ``{x : m x = 0}``, one vector per dependent column."""
    s = Span()
    out = []
    for j, col in enumerate(m.columns()):
        rest, used = s.reduce(col)
        if rest == 0:
            out.append(used ^ (1 << j))
        else:
            s.add(col, 1 << j)
    return out


def row_space(vectors: Iterable[int]) -> tuple[int, ...]:
    """Reduced echelon basis of a span; equal spans give equal tuples."""
    s = Span()
    for v in vectors:
        s.add(v)
    rows = sorted(s.basis(), key=int.bit_length)
    for i, v in enumerate(rows):
        p = 1 << (v.bit_length() - 1)
        for k, w in enumerate(rows):
            if k != i and w & p:
                rows[k] = w ^ v
    return tuple(sorted(rows))


@dataclass(frozen=True)
class Homology:
    """Homology of a complex: a basis of representative cycles."""

    dim: int
    representatives: tuple[int, ...]


@dataclass(frozen=True)
class ChainComplexGF2:
    """Finite-dimensional ungraded complex over GF(2)."""

    basis: tuple[str, ...]
    d: GF2Matrix
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        n = len(self.basis)
        if self.d.rows != n or self.d.cols != n:
            raise ValueError("differential shape does not match basis")
        if len(set(self.basis)) != n:
            raise ValueError("basis labels must be distinct")
        if not (self.d @ self.d).is_zero():
            raise ValueError("differential does not square to zero")

    @classmethod
    def from_images(cls, basis: Sequence[str], images: Sequence[int]) -> "ChainComplexGF2":
        return cls(tuple(basis), GF2Matrix.from_columns(list(images), len(basis)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, label: str) -> int:
        return self.basis.index(label)

    def vector(self, labels: Iterable[str]) -> int:
        return vector_from_indices(self.index(x) for x in labels)

    def labels(self, v: int) -> list[str]:
        return [self.basis[i] for i in bits(v)]

    def differential(self, v: int) -> int:
        return self.d.apply(v)

    def is_cycle(self, v: int) -> bool:
        return self.d.apply(v) == 0

    def _boundaries(self) -> Span:
        s = self._cache.get("im")
        if s is None:
            s = Span()
            for j, col in enumerate(self.d.columns()):
                s.add(col, 1 << j)
            self._cache["im"] = s
        return s

    def boundary_witness(self, v: int) -> int | None:
        """A chain ``eta`` with ``d eta = v``, or None if ``v`` is not a boundary."""
        rest, tag = self._boundaries().reduce(v)
        return tag if rest == 0 else None

    def is_boundary(self, v: int) -> bool:
        return self._boundaries().reduce(v)[0] == 0

    def same_class(self, a: int, b: int) -> bool:
        return self.is_boundary(a ^ b)

    def homology(self) -> Homology:
        h = self._cache.get("H")
        if h is None:
            s = Span()
            for col in self.d.columns():
                s.add(col)
            reps = []
            for z in sorted(nullspace(self.d)):
                if s.add(z):
                    reps.append(z)
            h = Homology(len(reps), tuple(reps))
            self._cache["H"] = h
        return h

    def class_coordinates(self, z: int) -> int:
        """Coordinates of the class of cycle ``z`` in the homology basis."""
        s = self._cache.get("Hspan")
        if s is None:
            s = Span()
            for col in self.d.columns():
                s.add(col)
            for i, r in enumerate(self.homology().representatives):
                s.add(r, 1 << i)
            self._cache["Hspan"] = s
        rest, tag = s.reduce(z)
        if rest:
            raise ValueError("not a cycle")
        return tag

    def is_acyclic(self) -> bool:
        return self.homology().dim == 0


def direct_sum(a: ChainComplexGF2, b: ChainComplexGF2) -> ChainComplexGF2:
    n = a.dim
    cols = list(a.d.columns()) + [c << n for c in b.d.columns()]
    basis = tuple(f"0.{x}" for x in a.basis) + tuple(f"1.{x}" for x in b.basis)
    return ChainComplexGF2.from_images(basis, cols)


def is_chain_map(f: GF2Matrix, a: ChainComplexGF2, b: ChainComplexGF2) -> bool:
    return f.rows == b.dim and f.cols == a.dim and f @ a.d == b.d @ f


@dataclass(frozen=True)
class Cone:
    complex: ChainComplexGF2
    iota: GF2Matrix  # B -> Cone
    pi: GF2Matrix  # Cone -> A


def cone(f: GF2Matrix, a: ChainComplexGF2, b: ChainComplexGF2) -> Cone:
    """Mapping cone on A (+) B with d(a, b) = (d_A a, f a + d_B b)."""
    if not is_chain_map(f, a, b):
        raise NotChainMap("map does not commute with the differentials")
    n, m = a.dim, b.dim
    cols = [a.d.column(j) | (f.column(j) << n) for j in range(n)]
    cols += [b.d.column(j) << n for j in range(m)]
    basis = tuple(f"a.{x}" for x in a.basis) + tuple(f"b.{x}" for x in b.basis)
    c = ChainComplexGF2.from_images(basis, cols)
    iota = GF2Matrix.from_columns([1 << (n + j) for j in range(m)], n + m)
    pi = GF2Matrix.from_columns([1 << j for j in range(n)] + [0] * m, n)
    return Cone(c, iota, pi)


def is_quasi_iso(f: GF2Matrix, a: ChainComplexGF2, b: ChainComplexGF2) -> bool:
    """True iff the cone of ``f`` is acyclic."""
    return cone(f, a, b).complex.is_acyclic()


def induced_rank(f: GF2Matrix, a: ChainComplexGF2, b: ChainComplexGF2) -> int:
    """Rank of the map induced by ``f`` on homology."""
    if not is_chain_map(f, a, b):
        raise NotChainMap("map does not commute with the differentials")
    images = [b.class_coordinates(f.apply(z)) for z in a.homology().representatives]
    return rank_of(images)


__all__ = [
    "GF2Matrix",
    "Span",
    "ChainComplexGF2",
    "Homology",
    "Cone",
    "bits",
    "parity",
    "vector_from_indices",
    "rank_of",
    "solve",
    "nullspace",
    "row_space",
    "direct_sum",
    "is_chain_map",
    "cone",
    "is_quasi_iso",
    "induced_rank",
]

"""Exact linear algebra over GF(2).

Vectors are Python ints used as bitsets: bit ``i`` is coordinate ``i``.
Matrices store one packed int per row, so row operations are single XORs
on arbitrary-width machine words.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def bits(v: int) -> Iterator[int]:
    """Indices of the set bits of ``v`` in increasing order."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def vec(coords: Iterable[int]) -> int:
    """Pack a 0/1 sequence into a bitset."""
    out = 0
    for i, c in enumerate(coords):
        if c & 1:
            out |= 1 << i
    return out


def unvec(v: int, n: int) -> list[int]:
    """Unpack a bitset into a length-``n`` 0/1 list."""
    return [(v >> i) & 1 for i in range(n)]


def parity(v: int) -> int:
    return bin(v).count("1") & 1


@dataclass(frozen=True)
class BitMatrix:
    """Dense GF(2) matrix; ``data[i]`` is row ``i`` packed over the columns."""

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.data) != self.rows:
            raise ValueError("row count does not match data")
        mask = (1 << self.cols) - 1
        if any(r & ~mask for r in self.data):
            raise ValueError("row has bits beyond the column count")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], cols: int | None = None) -> "BitMatrix":
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(len(entries), cols, tuple(vec(r) for r in entries))

    @classmethod
    def from_columns(cls, columns: Sequence[int], rows: int) -> "BitMatrix":
        data = [0] * rows
        for j, c in enumerate(columns):
            for i in bits(c):
                if i >= rows:
                    raise ValueError("column entry outside the row range")
                data[i] |= 1 << j
        return cls(rows, len(columns), tuple(data))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    def entry(self, i: int, j: int) -> int:
        return (self.data[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [unvec(r, self.cols) for r in self.data]

    def columns(self) -> list[int]:
        cols = [0] * self.cols
        for i, r in enumerate(self.data):
            for j in bits(r):
                cols[j] |= 1 << i
        return cols

    def column(self, j: int) -> int:
        out = 0
        for i, r in enumerate(self.data):
            if (r >> j) & 1:
                out |= 1 << i
        return out

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.cols, self.rows, tuple(self.columns()))

    def apply(self, v: int) -> int:
        """Matrix times column vector."""
        out = 0
        for i, r in enumerate(self.data):
            if parity(r & v):
                out |= 1 << i
        return out

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        out = []
        for r in self.data:
            acc = 0
            for k in bits(r):
                acc ^= other.data[k]
            out.append(acc)
        return BitMatrix(self.rows, other.cols, tuple(out))

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in matrix sum")
        return BitMatrix(self.rows, self.cols, tuple(a ^ b for a, b in zip(self.data, other.data)))

    def kron(self, other: "BitMatrix") -> "BitMatrix":
        """Kronecker product, row-major in the left factor."""
        data = []
        for ra in self.data:
            for rb in other.data:
                acc = 0
                for j in bits(ra):
                    acc |= rb << (j * other.cols)
                data.append(acc)
        return BitMatrix(self.rows * other.rows, self.cols * other.cols, tuple(data))

    def is_zero(self) -> bool:
        return not any(self.data)


class Echelon:
    """Incrementally maintained reduced row echelon basis of a subspace.

    Each stored vector carries a tag bitset recording which inserted
    vectors it is a combination of, so membership tests can also return
    coordinates.
    """

    def __init__(self) -> None:
        self._rows: dict[int, tuple[int, int]] = {}
        self._count = 0

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def inserted(self) -> int:
        return self._count

    def reduce(self, v: int, tag: int = 0) -> tuple[int, int]:
        for p, (row, rtag) in self._rows.items():
            if (v >> p) & 1:
                v ^= row
                tag ^= rtag
        return v, tag

    def add(self, v: int) -> tuple[bool, int]:
        """Insert ``v``; return (independent?, dependency tag if dependent)."""
        tag = 1 << self._count
        self._count += 1
        r, t = self.reduce(v, tag)
        if not r:
            return False, t
        p = r.bit_length() - 1
        for q, (row, rtag) in list(self._rows.items()):
            if (row >> p) & 1:
                self._rows[q] = (row ^ r, rtag ^ t)
        self._rows[p] = (r, t)
        return True, 0

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0

    def combination(self, v: int) -> int | None:
        """Tag of inserted vectors summing to ``v``, or None if outside the span."""
        r, t = self.reduce(v)
        return t if r == 0 else None

    def basis(self) -> list[int]:
        return [self._rows[p][0] for p in sorted(self._rows)]

    def pivots(self) -> list[int]:
        return sorted(self._rows)


def rank(A: BitMatrix | Sequence[int]) -> int:
    """Rank of a matrix, or of a list of bitset vectors."""
    rows = A.data if isinstance(A, BitMatrix) else A
    e = Echelon()
    for r in rows:
        e.add(r)
    return len(e)


def span_basis(vectors: Iterable[int]) -> list[int]:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.basis()


def in_span(v: int, vectors: Iterable[int]) -> bool:
    e = Echelon()
    for w in vectors:
        e.add(w)
    return e.contains(v)


def solve(A: BitMatrix, b: int | Sequence[int]) -> int | None:
    """Return some ``x`` with ``A x = b`` as a bitset, or None if none exists."""
    if not isinstance(b, int):
        if len(b) != A.rows:
            raise ValueError(f"right-hand side has length {len(b)}, expected {A.rows}")
        b = vec(b)
    elif b >> A.rows:
        raise ValueError("right-hand side has entries beyond the row count")
    e = Echelon()
    for c in A.columns():
        e.add(c)
    return e.combination(b)


def kernel_basis(A: BitMatrix) -> list[int]:
    """Basis of the null space of ``A``; has ``cols - rank`` elements."""
    e = Echelon()
    out = []
    for c in A.columns():
        independent, tag = e.add(c)
        if not independent:
            out.append(tag)
    return out


def nullspace(rows: Iterable[int], ncols: int) -> list[int]:
    """Basis of ``{x : <r, x> = 0 for every row r}`` by row reduction."""
    piv: dict[int, int] = {}
    for r in rows:
        for p, v in piv.items():
            if r >> p & 1:
                r ^= v
        if not r:
            continue
        p = r.bit_length() - 1
        for q in list(piv):
            if piv[q] >> p & 1:
                piv[q] ^= r
        piv[p] = r
    out = []
    for f in range(ncols):
        if f in piv:
            continue
        x = 1 << f
        for p, v in piv.items():
            if v >> f & 1:
                x |= 1 << p
        out.append(x)
    return out


class Quotient:
    """A quotient ``span(space) / span(subspace)``.

    ``representatives`` complete a basis of the subspace to a basis of the
    space; ``project`` sends a vector of the space to its coordinates in
    the quotient with respect to those representatives.
    """

    def __init__(self, space: Sequence[int], subspace: Sequence[int]):
        ambient = Echelon()
        for v in space:
            ambient.add(v)
        for v in subspace:
            if not ambient.contains(v):
                raise ValueError("subspace is not contained in space")
        self._ech = Echelon()
        for v in subspace:
            self._ech.add(v)
        self.subspace_dim = len(self._ech)
        self.representatives: list[int] = []
        self._slot: dict[int, int] = {}
        for v in space:
            index = self._ech.inserted
            if self._ech.add(v)[0]:
                self._slot[index] = len(self.representatives)
                self.representatives.append(v)

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def project(self, v: int) -> int:
        t = self._ech.combination(v)
        if t is None:
            raise ValueError("vector is not in the space")
        out = 0
        for b in bits(t):
            k = self._slot.get(b)
            if k is not None:
                out ^= 1 << k
        return out

    def lift(self, coords: int) -> int:
        out = 0
        for k in bits(coords):
            out ^= self.representatives[k]
        return out


def quotient_basis(space: Sequence[int], subspace: Sequence[int]) -> Quotient:
    return Quotient(space, subspace)

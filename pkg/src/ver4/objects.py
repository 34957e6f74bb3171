"""Objects and morphisms of Ver4+: spaces with a square-zero differential.

An object is a finite basis together with the matrix of ``d``.  The
canonical object ``V_{m+n|n}`` has basis ``x1..x(m+n), w1..wn`` with
``d(xi) = wi`` for ``i <= n`` and every other basis vector closed.
Tensor bases are ordered row-major in the left factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .f2 import BitMatrix, Echelon, bits, kernel_basis, rank


@dataclass(frozen=True)
class Ver4Object:
    labels: tuple[str, ...]
    d: BitMatrix
    mK: int = field(init=False)
    nP: int = field(init=False)

    def __post_init__(self) -> None:
        n = len(self.labels)
        if self.d.rows != n or self.d.cols != n:
            raise ValueError("differential has the wrong shape")
        if not (self.d @ self.d).is_zero():
            raise ValueError("differential does not square to zero")
        r = rank(self.d)
        object.__setattr__(self, "nP", r)
        object.__setattr__(self, "mK", n - 2 * r)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def diff(self, v: int) -> int:
        return self.d.apply(v)

    def decomposition(self) -> tuple[int, int]:
        """(copies of k, copies of P)."""
        return self.mK, self.nP

    def canonical_basis(self) -> list[int]:
        """A basis ``x1..x(m+n), w1..wn`` of this object in canonical form.

        The returned vectors give an isomorphism from ``V_{m+n|n}`` with
        ``m = mK`` and ``n = nP``.
        """
        n = self.dim
        cols = self.d.columns()
        # choose x's whose images form a basis of im d
        img = Echelon()
        active = []
        for j in range(n):
            if img.add(cols[j])[0]:
                active.append(1 << j)
        ws = [self.diff(x) for x in active]
        # complete im d to ker d by closed vectors
        ker = Echelon()
        for w in ws:
            ker.add(w)
        closed = []
        for z in kernel_basis(self.d):
            if ker.add(z)[0]:
                closed.append(z)
        return active + closed + ws


def make_object(m: int, n: int) -> Ver4Object:
    """The canonical object ``V_{m+n|n}``: m copies of k and n of P."""
    if m < 0 or n < 0:
        raise ValueError("counts must be non-negative")
    total = m + 2 * n
    cols = [0] * total
    for i in range(n):
        cols[i] = 1 << (m + n + i)
    labels = tuple(f"x{i + 1}" for i in range(m + n)) + tuple(f"w{i + 1}" for i in range(n))
    return Ver4Object(labels, BitMatrix.from_columns(cols, total))


def unit() -> Ver4Object:
    return make_object(1, 0)


def projective() -> Ver4Object:
    return make_object(0, 1)


@dataclass(frozen=True)
class Ver4Map:
    source: Ver4Object
    target: Ver4Object
    matrix: BitMatrix

    def __post_init__(self) -> None:
        if self.matrix.rows != self.target.dim or self.matrix.cols != self.source.dim:
            raise ValueError("matrix shape does not match source and target")
        if self.matrix @ self.source.d != self.target.d @ self.matrix:
            raise ValueError("map does not commute with d")

    def __call__(self, v: int) -> int:
        return self.matrix.apply(v)

    def compose(self, other: "Ver4Map") -> "Ver4Map":
        """``self`` after ``other``."""
        if other.target != self.source:
            raise ValueError("maps are not composable")
        return Ver4Map(other.source, self.target, self.matrix @ other.matrix)


def identity_map(A: Ver4Object) -> Ver4Map:
    return Ver4Map(A, A, BitMatrix.identity(A.dim))


def tensor(A: Ver4Object, B: Ver4Object) -> tuple[Ver4Object, dict[tuple[int, int], int]]:
    """``A (x) B`` with differential ``d(a (x) b) = da (x) b + a (x) db``."""
    index = {(i, j): i * B.dim + j for i in range(A.dim) for j in range(B.dim)}
    labels = tuple(f"{a}*{b}" for a in A.labels for b in B.labels)
    IA = BitMatrix.identity(A.dim)
    IB = BitMatrix.identity(B.dim)
    d = A.d.kron(IB) + IA.kron(B.d)
    return Ver4Object(labels, d), index


def tensor_map(f: Ver4Map, g: Ver4Map) -> Ver4Map:
    src, _ = tensor(f.source, g.source)
    tgt, _ = tensor(f.target, g.target)
    return Ver4Map(src, tgt, f.matrix.kron(g.matrix))


def braiding(A: Ver4Object, B: Ver4Object) -> Ver4Map:
    """``s(a (x) b) = b (x) a + db (x) da`` as a map ``A (x) B -> B (x) A``."""
    AB, _ = tensor(A, B)
    BA, _ = tensor(B, A)
    dA = A.d.columns()
    dB = B.d.columns()
    cols = []
    for i in range(A.dim):
        for j in range(B.dim):
            v = 1 << (j * A.dim + i)
            for q in bits(dB[j]):
                for p in bits(dA[i]):
                    v ^= 1 << (q * A.dim + p)
            cols.append(v)
    return Ver4Map(AB, BA, BitMatrix.from_columns(cols, BA.dim))


def dual_pairing(A: Ver4Object) -> tuple[Ver4Object, Ver4Map]:
    """The dual ``A*`` (transposed differential) and evaluation ``A* (x) A -> 1``."""
    D = Ver4Object(tuple(f"{a}^" for a in A.labels), A.d.transpose())
    DA, _ = tensor(D, A)
    row = 0
    for i in range(A.dim):
        row |= 1 << (i * A.dim + i)
    ev = Ver4Map(DA, unit(), BitMatrix(1, DA.dim, (row,)))
    return D, ev


def is_isomorphic(A: Ver4Object, B: Ver4Object) -> bool:
    return A.decomposition() == B.decomposition()


def canonical_iso(A: Ver4Object) -> Ver4Map:
    """An isomorphism ``V_{m+n|n} -> A`` onto the canonical form of ``A``."""
    V = make_object(A.mK, A.nP)
    return Ver4Map(V, A, BitMatrix.from_columns(A.canonical_basis(), A.dim))

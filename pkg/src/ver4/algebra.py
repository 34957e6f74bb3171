"""Commutative algebras in Ver4+ and their truncated local models.

A commutative algebra here satisfies ``ab + ba = da.db`` rather than
``ab = ba``.  Everything is finite dimensional: a local algebra is
``O / m^N`` for a filtration-adapted monomial basis, so ``m^i`` is spanned
by the basis elements of degree at least ``i`` and the truncation simply
drops products of degree ``N`` or more.

Elements are bitsets over the basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .f2 import BitMatrix, Echelon, bits
from .objects import Ver4Object
from .report import Report


class Algebra:
    """A finite-dimensional associative unital algebra with differential.

    Subclasses provide ``_product(i, j)``, the product of two basis
    elements as a bitset.  Products are cached.
    """

    def __init__(self, labels: Sequence[str], unit: int, dvecs: Sequence[int]):
        self.labels = tuple(labels)
        self.unit = unit
        self.dvecs = tuple(dvecs)
        self._cache: dict[tuple[int, int], int] = {}
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    @property
    def dim(self) -> int:
        return len(self.labels)

    def _product(self, i: int, j: int) -> int:
        raise NotImplementedError

    def basis_product(self, i: int, j: int) -> int:
        key = (i, j)
        r = self._cache.get(key)
        if r is None:
            r = self._product(i, j)
            self._cache[key] = r
        return r

    def mul(self, a: int, b: int) -> int:
        out = 0
        if not a or not b:
            return 0
        bl = list(bits(b))
        for i in bits(a):
            for j in bl:
                out ^= self.basis_product(i, j)
        return out

    def d(self, a: int) -> int:
        out = 0
        for i in bits(a):
            out ^= self.dvecs[i]
        return out

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ValueError(f"unknown basis label {label!r}") from None

    def basis_vector(self, label: str) -> int:
        return 1 << self.index(label)

    def element(self, v: int) -> "AlgebraElement":
        return AlgebraElement(self, v)

    def format(self, v: int) -> str:
        if not v:
            return "0"
        return " + ".join(self.labels[i] for i in bits(v))

    def object(self) -> Ver4Object:
        return Ver4Object(self.labels, BitMatrix.from_columns(list(self.dvecs), self.dim))

    def mult_table(self) -> dict[tuple[int, int], int]:
        return {(i, j): self.basis_product(i, j) for i in range(self.dim) for j in range(self.dim)}

    def pow(self, a: int, k: int) -> int:
        out = self.unit
        for _ in range(k):
            out = self.mul(out, a)
        return out


class TableAlgebra(Algebra):
    """An algebra given by an explicit product function on basis indices."""

    def __init__(self, labels, unit, dvecs, product: Callable[[int, int], int]):
        super().__init__(labels, unit, dvecs)
        self._fn = product

    def _product(self, i: int, j: int) -> int:
        return self._fn(i, j)


class LocalAlgebra(Algebra):
    """A truncated augmented algebra ``O / m^N`` with an adapted basis.

    ``degrees[i]`` is the filtration degree of basis element ``i``;
    ``m^k`` is spanned by the basis elements of degree ``>= k``.  The
    augmentation is the coefficient of the degree-0 part, which must be
    one-dimensional and spanned by the unit.
    """

    def __init__(self, labels, degrees: Sequence[int], N: int, dvecs, unit: int = 1):
        super().__init__(labels, unit, dvecs)
        self.degrees = tuple(degrees)
        self.N = N
        if any(g >= N for g in self.degrees):
            raise ValueError("basis element of degree >= truncation")
        if [i for i, g in enumerate(self.degrees) if g == 0] != [unit.bit_length() - 1] or unit & (unit - 1):
            raise ValueError("degree-0 part must be the unit basis element")
        self._masks = [0] * (N + 2)
        for k in range(N + 2):
            m = 0
            for i, g in enumerate(self.degrees):
                if g >= k:
                    m |= 1 << i
            self._masks[k] = m

    @property
    def truncationN(self) -> int:
        return self.N

    def power_mask(self, k: int) -> int:
        """Bitset of basis elements spanning ``m^k``."""
        if k <= 0:
            return self._masks[0]
        if k >= len(self._masks):
            return 0
        return self._masks[k]

    def filtration(self) -> list[list[int]]:
        """Bases of ``m^i`` for ``0 <= i <= N``."""
        return [[1 << j for j in bits(self.power_mask(i))] for i in range(self.N + 1)]

    def aug(self, a: int) -> int:
        return 1 if a & self.unit else 0

    def in_power(self, a: int, k: int) -> bool:
        return a & ~self.power_mask(k) == 0

    def order(self, a: int) -> int:
        """Largest ``k`` with ``a`` in ``m^k`` (``N`` for zero)."""
        if not a:
            return self.N
        return min(self.degrees[i] for i in bits(a))

    def reduce_mod_power(self, a: int, k: int) -> int:
        """Image of ``a`` in ``O / m^k``."""
        return a & ~self.power_mask(k)

    def cotangent_basis(self) -> list[int]:
        """Indices of basis elements spanning ``m / m^2``."""
        return [i for i, g in enumerate(self.degrees) if g == 1]


@dataclass(frozen=True)
class Monomial:
    """Normal-form monomial: x's in non-decreasing index order, then w's."""

    xExponents: tuple[int, ...]
    wSet: frozenset[int]

    @property
    def degree(self) -> int:
        return sum(self.xExponents) + len(self.wSet)


def _insert_x(xs: tuple[int, ...], j: int, active: int) -> list[tuple[tuple[int, ...], int]]:
    """Normal form of ``x_xs * x_j`` as a list of (x-word, w-mask) terms.

    Uses ``x_a x_j = x_j x_a + w_a w_j`` for ``a > j``; the w-term only
    exists when both generators carry a w (index below ``active``).
    """
    if not xs or xs[-1] <= j:
        return [(xs + (j,), 0)]
    a = xs[-1]
    out = [(t + (a,), wm) for t, wm in _insert_x(xs[:-1], j, active)]
    if a < active and j < active:
        out.append((xs[:-1], (1 << a) | (1 << j)))
    return out


_insert_x = lru_cache(maxsize=None)(_insert_x)  # type: ignore[assignment]


class FreeCommutative(LocalAlgebra):
    """Truncation of the free commutative algebra on ``V_{m+n|n}``.

    Generators ``x_1..x_{m+n}`` with ``d x_i = w_i`` for ``i <= n``.  The
    relations are ``w_i^2 = 0``, ``x_i w_j = w_j x_i`` and
    ``x_i x_j + x_j x_i = w_i w_j``.
    """

    def __init__(self, m: int, n: int, N: int, xlabels: Sequence[str] | None = None,
                 wlabels: Sequence[str] | None = None):
        if N < 1:
            raise ValueError("truncation must be at least 1")
        if m < 0 or n < 0:
            raise ValueError("counts must be non-negative")
        self.m, self.n = m, n
        self.nx = m + n
        self.xlabels = tuple(xlabels) if xlabels else tuple(f"x{i + 1}" for i in range(self.nx))
        self.wlabels = tuple(wlabels) if wlabels else tuple(f"w{i + 1}" for i in range(n))
        if len(self.xlabels) != self.nx or len(self.wlabels) != n:
            raise ValueError("generator label count mismatch")
        monos = []
        for deg in range(N):
            for wdeg in range(min(deg, n) + 1):
                for xs in _sorted_words(self.nx, deg - wdeg):
                    for wm in _masks_of_size(n, wdeg):
                        monos.append((xs, wm))
        monos.sort(key=lambda t: (len(t[0]) + bin(t[1]).count("1"),
                                  tuple(-e for e in _exps(t[0], self.nx)), _wlist(t[1])))
        self.monomials = monos
        self._mono_index = {mono: i for i, mono in enumerate(monos)}
        labels = [self._label(xs, wm) for xs, wm in monos]
        degrees = [len(xs) + bin(wm).count("1") for xs, wm in monos]
        dvecs = [self._d_mono(xs, wm, N) for xs, wm in monos]
        super().__init__(labels, degrees, N, dvecs, unit=1)

    def _label(self, xs: tuple[int, ...], wm: int) -> str:
        if not xs and not wm:
            return "1"
        parts = []
        exps = _exps(xs, self.nx)
        for i, e in enumerate(exps):
            if e == 1:
                parts.append(self.xlabels[i])
            elif e > 1:
                parts.append(f"{self.xlabels[i]}^{e}")
        parts.extend(self.wlabels[i] for i in _wlist(wm))
        return "*".join(parts)

    def _d_mono(self, xs, wm, N) -> int:
        # d(x_{a1}...x_{ak} W) = sum_r x_{a1}..w_{ar}..x_{ak} W
        out = 0
        for r, a in enumerate(xs):
            if a >= self.n or (wm >> a) & 1:
                continue
            rest = xs[:r] + xs[r + 1:]
            out ^= 1 << self._mono_index[(rest, wm | (1 << a))]
        return out

    def monomial(self, i: int) -> Monomial:
        xs, wm = self.monomials[i]
        return Monomial(tuple(_exps(xs, self.nx)), frozenset(_wlist(wm)))

    def _mono_vec(self, terms: Iterable[tuple[tuple[int, ...], int]]) -> int:
        out = 0
        for xs, wm in terms:
            if len(xs) + bin(wm).count("1") >= self.N:
                continue
            out ^= 1 << self._mono_index[(xs, wm)]
        return out

    def _mul_words(self, left: tuple[int, ...], lw: int, right: tuple[int, ...], rw: int) -> int:
        terms = {(left, lw)}
        for j in right:
            new: set = set()
            for xs, w in terms:
                for xs2, wm in _insert_x(xs, j, self.n):
                    if wm & w:
                        continue
                    new ^= {(xs2, w | wm)}
            terms = new
        final: set = set()
        for xs, w in terms:
            if w & rw:
                continue
            final ^= {(xs, w | rw)}
        return self._mono_vec(final)

    def _product(self, i: int, j: int) -> int:
        if self.degrees[i] + self.degrees[j] >= self.N:
            return 0
        xs1, w1 = self.monomials[i]
        xs2, w2 = self.monomials[j]
        if w1 & w2:
            return 0
        return self._mul_words(xs1, w1, xs2, w2)

    def generator(self, label: str) -> int:
        """Bitset of a degree-one generator (an x or a w)."""
        return self.basis_vector(label)

    def normal_form(self, word: Sequence[str]) -> int:
        """Normal form of a product of generators given by label."""
        out = self.unit
        for g in word:
            if g in self.xlabels:
                gi = self.xlabels.index(g)
                out = self.mul(out, 1 << self._mono_index[((gi,), 0)]) if self.N > 1 else 0
            elif g in self.wlabels:
                gi = self.wlabels.index(g)
                out = self.mul(out, 1 << self._mono_index[((), 1 << gi)]) if self.N > 1 else 0
            else:
                raise ValueError(f"unknown generator {g!r}")
        return out

    def object(self) -> Ver4Object:
        return super().object()


def _exps(xs: tuple[int, ...], nx: int) -> list[int]:
    e = [0] * nx
    for a in xs:
        e[a] += 1
    return e


def _wlist(wm: int) -> list[int]:
    return list(bits(wm))


def _sorted_words(nx: int, k: int) -> list[tuple[int, ...]]:
    if k == 0:
        return [()]
    out = []

    def rec(start: int, left: int, acc: tuple[int, ...]) -> None:
        if left == 0:
            out.append(acc)
            return
        for a in range(start, nx):
            rec(a, left - 1, acc + (a,))

    rec(0, k, ())
    return out


def _masks_of_size(n: int, k: int) -> list[int]:
    from itertools import combinations

    return [sum(1 << i for i in c) for c in combinations(range(n), k)]


def free_commutative(m: int, n: int, N: int) -> FreeCommutative:
    """Free commutative algebra on ``V_{m+n|n}`` truncated at degree ``N``."""
    return FreeCommutative(m, n, N)


def normal_form(word: Sequence[str], target: FreeCommutative) -> "AlgebraElement":
    return AlgebraElement(target, target.normal_form(word))


class TensorAlgebra(LocalAlgebra):
    """Twisted tensor product ``A (x) B`` truncated at total degree ``N``.

    ``(a (x) b)(a' (x) b') = aa' (x) bb' + a.da' (x) db.b'``.
    """

    def __init__(self, A: LocalAlgebra, B: LocalAlgebra):
        if A.N != B.N:
            raise ValueError("factors must share the truncation degree")
        self.A, self.B = A, B
        pairs = [(i, j) for i in range(A.dim) for j in range(B.dim)
                 if A.degrees[i] + B.degrees[j] < A.N]
        self.pairs = pairs
        self.pair_index = {p: k for k, p in enumerate(pairs)}
        labels = [_pair_label(A.labels[i], B.labels[j]) for i, j in pairs]
        degrees = [A.degrees[i] + B.degrees[j] for i, j in pairs]
        # d(a (x) b) = da (x) b + a (x) db
        dvecs = [self.pure(A.dvecs[i], 1 << j) ^ self.pure(1 << i, B.dvecs[j]) for i, j in pairs]
        unit = 1 << pairs.index((A.unit.bit_length() - 1, B.unit.bit_length() - 1))
        super().__init__(labels, degrees, A.N, dvecs, unit=unit)

    def pure(self, a: int, b: int) -> int:
        """The truncated image of ``a (x) b``."""
        out = 0
        if not a or not b:
            return 0
        bl = list(bits(b))
        idx = self.pair_index
        for i in bits(a):
            for j in bl:
                k = idx.get((i, j))
                if k is not None:
                    out ^= 1 << k
        return out

    def _product(self, p: int, q: int) -> int:
        i, j = self.pairs[p]
        k, l = self.pairs[q]
        A, B = self.A, self.B
        if self.degrees[p] + self.degrees[q] >= self.N:
            return 0
        out = self.pure(A.basis_product(i, k), B.basis_product(j, l))
        da = A.dvecs[k]
        db = B.dvecs[j]
        if da and db:
            out ^= self.pure(A.mul(1 << i, da), B.mul(db, 1 << l))
        return out

    def split(self, v: int) -> list[tuple[int, int]]:
        return [self.pairs[k] for k in bits(v)]


def _pair_label(a: str, b: str) -> str:
    return f"{_wrap(a)}(x){_wrap(b)}"


def _wrap(s: str) -> str:
    return f"({s})" if "(x)" in s else s


def twisted_tensor(A: LocalAlgebra, B: LocalAlgebra) -> TensorAlgebra:
    return TensorAlgebra(A, B)


def tensor_linear(T: TensorAlgebra, S: TensorAlgebra, f: Sequence[int], g: Sequence[int]) -> list[int]:
    """Matrix columns of ``f (x) g : T -> S`` on truncated tensor bases.

    ``f`` and ``g`` are column lists of maps ``T.A -> S.A`` and ``T.B -> S.B``.
    """
    return [S.pure(f[i], g[j]) for i, j in T.pairs]


class QuotientAlgebra(LocalAlgebra):
    """``A / I`` for a two-sided ideal ``I``, with an adapted basis of representatives."""

    def __init__(self, A: LocalAlgebra, ideal: Sequence[int]):
        self.parent = A
        self.ideal = list(ideal)
        ech = Echelon()
        for v in self.ideal:
            ech.add(v)
        self._ideal_dim = len(ech)
        if ech.contains(A.unit):
            raise ValueError("inconsistent presentation: the ideal contains 1")
        reps: list[int] = []
        slot: dict[int, int] = {}
        order = sorted(range(A.dim), key=lambda i: -A.degrees[i])
        for i in order:
            t = ech.inserted
            if ech.add(1 << i)[0]:
                slot[t] = len(reps)
                reps.append(i)
        perm = sorted(range(len(reps)), key=lambda k: (A.degrees[reps[k]], reps[k]))
        self.reps = [reps[k] for k in perm]
        inverse = {old: new for new, old in enumerate(perm)}
        self._slot = {t: inverse[k] for t, k in slot.items()}
        self._ech = ech
        labels = [A.labels[i] for i in self.reps]
        degrees = [A.degrees[i] for i in self.reps]
        dvecs = [self.project(A.dvecs[i]) for i in self.reps]
        unit = self.project(A.unit)
        super().__init__(labels, degrees, A.N, dvecs, unit=unit)

    def project(self, v: int) -> int:
        t = self._ech.combination(v)
        if t is None:
            raise AssertionError("echelon must span the ambient algebra")
        out = 0
        for b in bits(t):
            k = self._slot.get(b)
            if k is not None:
                out ^= 1 << k
        return out

    def lift(self, v: int) -> int:
        out = 0
        for k in bits(v):
            out ^= 1 << self.reps[k]
        return out

    def _product(self, i: int, j: int) -> int:
        P = self.parent
        return self.project(P.basis_product(self.reps[i], self.reps[j]))


def ideal_span(A: Algebra, gens: Iterable[int], d_stable: bool = True) -> list[int]:
    """Basis of the two-sided ideal generated by ``gens`` (and their d's)."""
    ech = Echelon()
    todo = [g for g in gens if g]
    basis: list[int] = []
    while todo:
        v = todo.pop()
        if not ech.add(v)[0]:
            continue
        basis.append(v)
        for i in range(A.dim):
            todo.append(A.mul(1 << i, v))
            todo.append(A.mul(v, 1 << i))
        if d_stable:
            todo.append(A.d(v))
    return basis


def quotient(A: LocalAlgebra, ideal_gens: Sequence[int], d_stable: bool = True) -> QuotientAlgebra:
    """``A`` modulo the ideal generated by ``ideal_gens``.

    With ``d_stable`` the ideal is closed under ``d`` so that the quotient
    is again an algebra in Ver4+.  Without it the ideal must already be
    d-stable, otherwise ``d`` does not descend and ValueError is raised.
    """
    span = ideal_span(A, ideal_gens, d_stable=d_stable)
    if not d_stable:
        ech = Echelon()
        for v in span:
            ech.add(v)
        if ech.contains(A.unit):
            raise ValueError("inconsistent presentation: the ideal contains 1")
        for v in span:
            if not ech.contains(A.d(v)):
                raise ValueError("ideal is not d-stable, so d does not descend to the quotient")
    return QuotientAlgebra(A, span)


def invert_mod_m(A: LocalAlgebra, a: int) -> int:
    """Inverse of an element with augmentation 1, as a geometric series."""
    if not A.aug(a):
        raise ValueError("not invertible: augmentation is zero")
    n = a ^ A.unit
    out = A.unit
    term = A.unit
    for _ in range(A.N):
        term = A.mul(term, n)
        if not term:
            break
        out ^= term
    return out


def underlying_commutative(A: LocalAlgebra) -> QuotientAlgebra:
    """The ordinary commutative algebra ``A / span{a.db}``."""
    gens = []
    for j in range(A.dim):
        if A.dvecs[j]:
            for i in range(A.dim):
                gens.append(A.mul(1 << i, A.dvecs[j]))
    return QuotientAlgebra(A, ideal_span(A, gens))


def verify_commutativity(A: Algebra) -> Report:
    """``ab + ba = da.db`` on every ordered pair of basis elements."""
    rep = Report("commutativity")
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = A.basis_product(i, j) ^ A.basis_product(j, i)
            rhs = A.mul(A.dvecs[i], A.dvecs[j])
            if not rep.check(lhs == rhs, "ab+ba=da.db", a=A.labels[i], b=A.labels[j]):
                break
    return rep


def verify_algebra(A: Algebra) -> Report:
    """Associativity, unit, Leibniz rule and ``d^2 = 0`` on basis elements.

    For local algebras also the augmentation and the filtration.
    """
    rep = Report("algebra")
    n = A.dim
    for i in range(n):
        rep.check(A.mul(A.unit, 1 << i) == 1 << i == A.mul(1 << i, A.unit), "unit", a=A.labels[i])
        rep.check(A.d(A.dvecs[i]) == 0, "d^2=0", a=A.labels[i])
    rep.check(A.d(A.unit) == 0, "d(1)=0")
    local = isinstance(A, LocalAlgebra)
    for i in range(n):
        for j in range(n):
            if local and A.degrees[i] + A.degrees[j] >= A.N:
                rep.check(A.basis_product(i, j) == 0, "truncation", a=A.labels[i], b=A.labels[j])
                continue
            ab = A.basis_product(i, j)
            rep.check(A.d(ab) == A.mul(A.dvecs[i], 1 << j) ^ A.mul(1 << i, A.dvecs[j]),
                      "leibniz", a=A.labels[i], b=A.labels[j])
            if local:
                rep.check(A.aug(ab) == A.aug(1 << i) & A.aug(1 << j), "augmentation",
                          a=A.labels[i], b=A.labels[j])
                rep.check(A.in_power(ab, A.degrees[i] + A.degrees[j]), "filtration",
                          a=A.labels[i], b=A.labels[j])
            for k in range(n):
                if local and A.degrees[i] + A.degrees[j] + A.degrees[k] >= A.N:
                    continue
                rep.check(A.mul(ab, 1 << k) == A.mul(1 << i, A.basis_product(j, k)),
                          "associativity", a=A.labels[i], b=A.labels[j], c=A.labels[k])
    if local:
        for i in range(n):
            rep.check(A.in_power(A.dvecs[i], A.degrees[i]), "d preserves filtration", a=A.labels[i])
    return rep


@dataclass(frozen=True)
class AlgebraElement:
    algebra: Algebra
    coords: int

    def _coerce(self, other) -> int:
        if isinstance(other, AlgebraElement):
            if other.algebra is not self.algebra:
                raise ValueError("elements of different algebras")
            return other.coords
        if other in (0, 1):
            return self.algebra.unit if other else 0
        raise TypeError(f"cannot combine with {other!r}")

    def __add__(self, other) -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.coords ^ self._coerce(other))

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other) -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.algebra.mul(self.coords, self._coerce(other)))

    def __rmul__(self, other) -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.algebra.mul(self._coerce(other), self.coords))

    def __pow__(self, k: int) -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.algebra.pow(self.coords, k))

    def __eq__(self, other) -> bool:
        try:
            return self.coords == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.algebra), self.coords))

    def __bool__(self) -> bool:
        return bool(self.coords)

    def d(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.algebra.d(self.coords))

    def eta(self) -> int:
        return self.algebra.aug(self.coords)  # type: ignore[attr-defined]

    def inverse(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, invert_mod_m(self.algebra, self.coords))  # type: ignore[arg-type]

    def __repr__(self) -> str:
        return self.algebra.format(self.coords)

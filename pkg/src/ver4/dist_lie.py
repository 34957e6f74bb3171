"""Distributions, the commutator map, and restricted Lie algebras in Ver4+.

A distribution of order ``<= k`` is a functional on ``O/m^N`` vanishing on
``m^(k+1)``; it is stored as the bitset of its values on the monomial
basis, so the dual of a degree ``p`` monomial has order ``p``.

Tensors of functionals pair with tensors of algebra elements in nested
order, ``<phi (x) psi, a (x) b> = phi(b) psi(a)``.  The product is
``(phi psi)(a) = sum psi(a_1) phi(a_2)``, which makes ``O`` a left module
via ``phi . a = (phi (x) 1) Delta(a)`` and matches composition of the
right-invariant derivations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .algebra import Algebra, TableAlgebra
from .f2 import BitMatrix, Echelon, bits, kernel_basis, nullspace, span_basis
from .hopf import HopfData, braid_at
from .objects import Ver4Object
from .report import Report
from .tangent import EpsDerivation, dual_d, tangent_basis, tangent_indices, tangent_labels

Pair = tuple[int, int]


def _toggle(S: set, t) -> None:
    if t in S:
        S.remove(t)
    else:
        S.add(t)


# ---------------------------------------------------------------- Dist


class DistAlgebra:
    """``Dist_k(G)`` for ``k <= maxOrder`` with product, ``d`` and braiding."""

    def __init__(self, H: HopfData, maxOrder: int):
        if maxOrder < 0:
            raise ValueError("maxOrder must be non-negative")
        if maxOrder > H.N - 1:
            raise ValueError(f"maxOrder {maxOrder} exceeds the faithful range N-1 = {H.N - 1}")
        self.H = H
        self.O = H.algebra
        self.maxOrder = maxOrder
        O = self.O
        self.basis = [i for i in range(O.dim) if O.degrees[i] <= maxOrder]
        # pair (p, q) -> set of a with (p, q) a term of Delta(a)
        self._co: dict[Pair, int] = {}
        # pair (p, q) -> set of a with (p, q) a term of (1 - s) Delta(a)
        self._co_beta: dict[Pair, int] = {}
        for a in range(O.dim):
            terms = set(H.delta_pairs(a))
            for t in terms:
                self._co[t] = self._co.get(t, 0) ^ (1 << a)
            for t in terms ^ braid_at(H, terms, 0):
                self._co_beta[t] = self._co_beta.get(t, 0) ^ (1 << a)
        # transpose of the braiding on O (x) O
        self._braid_t: dict[Pair, set] = {}
        for a, b in H.T2.pairs:
            for t in braid_at(H, [(a, b)], 0):
                _toggle(self._braid_t.setdefault(t, set()), (a, b))
        self._mu_cache: dict[Pair, int] = {}
        self._beta_cache: dict[Pair, int] = {}
        self.unit = O.unit

    # -- functionals

    def order(self, phi: int) -> int:
        """Least ``k`` with ``phi`` in ``Dist_k``; ``-1`` for zero."""
        dg = self.O.degrees
        return max((dg[i] for i in bits(phi)), default=-1)

    def layer_basis(self, k: int) -> list[int]:
        return [1 << i for i in self.basis if self.O.degrees[i] <= k]

    def d(self, phi: int) -> int:
        return dual_d(self.O, phi)

    def evaluate(self, phi: int, a: int) -> int:
        return bin(phi & a).count("1") & 1

    def label(self, phi: int) -> str:
        if not phi:
            return "0"
        return "+".join("<" + self.O.labels[i] + ">" for i in bits(phi))

    # -- tensors

    def braid(self, r: int, s: int) -> set:
        """``s(delta_r (x) delta_s)`` via the transposed braiding of ``O (x) O``."""
        return {(b, a) for a, b in self._braid_t.get((s, r), ())}

    def mul_basis(self, r: int, s: int) -> int:
        key = (r, s)
        v = self._mu_cache.get(key)
        if v is None:
            v = self._co.get((s, r), 0)
            self._mu_cache[key] = v
        return v

    def beta_basis(self, r: int, s: int) -> int:
        """``mu (1 - s)`` on ``delta_r (x) delta_s``."""
        key = (r, s)
        v = self._beta_cache.get(key)
        if v is None:
            v = self.mul_basis(r, s)
            for u, w in self.braid(r, s):
                v ^= self.mul_basis(u, w)
            self._beta_cache[key] = v
        return v

    def beta_direct(self, r: int, s: int) -> int:
        """The same value read off the transpose of ``(1 - s) Delta``."""
        return self._co_beta.get((s, r), 0)

    def _bilinear(self, f: Callable[[int, int], int], phi: int, psi: int, what: str) -> int:
        if self.order(phi) + self.order(psi) > self.maxOrder:
            raise ValueError(f"layer overflow in {what}: orders {self.order(phi)} + "
                             f"{self.order(psi)} exceed maxOrder {self.maxOrder}")
        out = 0
        ps = list(bits(psi))
        for r in bits(phi):
            for s in ps:
                out ^= f(r, s)
        return out

    def mul(self, phi: int, psi: int) -> int:
        return self._bilinear(self.mul_basis, phi, psi, "product")

    def beta(self, phi: int, psi: int) -> int:
        return self._bilinear(self.beta_basis, phi, psi, "commutator")

    def braid_element(self, S: set) -> set:
        out: set = set()
        for r, s in S:
            for t in self.braid(r, s):
                _toggle(out, t)
        return out


def convolution(D: DistAlgebra, phi: int, psi: int) -> int:
    return D.mul(phi, psi)


def commutator_beta(D: DistAlgebra, phi: int, psi: int) -> int:
    return D.beta(phi, psi)


def _tuples(D: DistAlgebra, arity: int, limit: int):
    dg = D.O.degrees
    for t in itertools.product(D.basis, repeat=arity):
        if sum(dg[i] for i in t) <= limit:
            yield t


def _braid_triples(D: DistAlgebra, S: set, slot: int) -> set:
    out: set = set()
    for t in S:
        for u, v in D.braid(t[slot], t[slot + 1]):
            _toggle(out, t[:slot] + (u, v) + t[slot + 2:])
    return out


def verify_dist_identities(D: DistAlgebra, maxOrder: int | None = None) -> Report:
    """Product, Poisson, anticommutativity, Jacobi and filtration checks on
    basis tuples of total order ``<= maxOrder``."""
    k = D.maxOrder if maxOrder is None else maxOrder
    if k > D.maxOrder:
        raise ValueError("maxOrder exceeds the range of this Dist algebra")
    rep = Report("dist")
    O, dg, lab = D.O, D.O.degrees, D.O.labels
    mu, beta = D.mul_basis, D.beta_basis

    def xor_mu(vec: int, right: int, left_first: bool = True) -> int:
        out = 0
        for x in bits(vec):
            out ^= mu(x, right) if left_first else mu(right, x)
        return out

    def xor_beta(left: int, vec: int) -> int:
        out = 0
        for x in bits(vec):
            out ^= beta(left, x)
        return out

    for r in D.basis:
        if dg[r] > k:
            continue
        rep.check(mu(O.unit.bit_length() - 1, r) == 1 << r and mu(r, O.unit.bit_length() - 1) == 1 << r,
                  "eta is a unit", x=lab[r])

    for r, s in _tuples(D, 2, k):
        i, j = dg[r], dg[s]
        where = {"x": lab[r], "y": lab[s]}
        rep.check(D.order(mu(r, s)) <= i + j, "product respects the filtration", **where)
        rep.check(D.d(mu(r, s)) == xor_mu(D.d(1 << r), s) ^ xor_mu(D.d(1 << s), r, False),
                  "d is a derivation of the product", **where)
        b = beta(r, s)
        rep.check(b == D.beta_direct(r, s), "beta equals the transpose of (1-s)Delta", **where)
        rep.check(D.order(b) <= i + j - 1, "beta drops the filtration by one", **where)
        sym = mu(r, s)
        for u, v in D.braid(r, s):
            sym ^= mu(u, v)
        rep.check(not any(dg[a] == i + j for a in bits(sym)),
                  "Gr(Dist) is commutative", **where)
        anti = b
        for u, v in D.braid(r, s):
            anti ^= beta(u, v)
        rep.check(anti == 0, "anticommutativity", **where)

    for r, s, t in _tuples(D, 3, k):
        where = {"x": lab[r], "y": lab[s], "z": lab[t]}
        rep.check(xor_mu(mu(r, s), t) == xor_mu(mu(s, t), r, False), "associativity", **where)
        lhs = xor_beta(r, mu(s, t))
        rhs = xor_mu(beta(r, s), t)
        for u, v in D.braid(r, s):
            rhs ^= xor_mu(beta(v, t), u, False)
        rep.check(lhs == rhs, "Poisson identity", **where)
        T = {(r, s, t)}
        T ^= _braid_triples(D, _braid_triples(D, {(r, s, t)}, 1), 0)
        T ^= _braid_triples(D, _braid_triples(D, {(r, s, t)}, 0), 1)
        jac = 0
        for x, y, z in T:
            for u in bits(beta(x, y)):
                jac ^= beta(u, z)
        rep.check(jac == 0, "Jacobi identity", **where)
    rep.info["maxOrder"] = k
    return rep


# ---------------------------------------------------------------- Lie algebras


@dataclass
class RestrictedLie:
    """A Lie algebra in Ver4+ with a partial square on ``ker d``.

    ``bracket[(i, j)]`` is the bracket of basis vectors as a bitset; the
    square is given on the vectors of ``square`` (a basis of ``ker d``).
    ``power``, when present, computes ``x^[2]`` for any closed ``x`` in a
    realisation (convolution square or associative square).
    """

    obj: Ver4Object
    bracket: dict[Pair, int]
    square: dict[int, int]
    name: str = ""
    power: Callable[[int], int] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        self._closed = Echelon()
        self._closed_basis = list(self.square)
        for v in self._closed_basis:
            if self.obj.diff(v):
                raise ValueError("square given on a vector with dx != 0")
            if not self._closed.add(v)[0]:
                raise ValueError("square domain vectors are dependent")

    @property
    def dim(self) -> int:
        return self.obj.dim

    @property
    def labels(self) -> tuple[str, ...]:
        return self.obj.labels

    def d(self, v: int) -> int:
        return self.obj.diff(v)

    def br(self, x: int, y: int) -> int:
        out = 0
        ys = list(bits(y))
        for i in bits(x):
            for j in ys:
                out ^= self.bracket.get((i, j), 0)
        return out

    def closed_basis(self) -> list[int]:
        return list(self._closed_basis)

    def sq(self, v: int) -> int:
        """``v^[2]`` from the table, extended by ``(x+y)^[2] = x^[2] + y^[2] + [x,y]``."""
        if self.obj.diff(v):
            raise ValueError("square undefined: dx != 0")
        comb = self._closed.combination(v)
        if comb is None:
            raise ValueError("square undefined: vector outside the square domain")
        terms = [self._closed_basis[k] for k in bits(comb)]
        out = 0
        for a in terms:
            out ^= self.square[a]
        for a, b in itertools.combinations(terms, 2):
            out ^= self.br(a, b)
        return out

    def format(self, v: int) -> str:
        if not v:
            return "0"
        return "+".join(self.labels[i] for i in bits(v))

    def with_changes(self, **kw) -> "RestrictedLie":
        data = {"obj": self.obj, "bracket": dict(self.bracket), "square": dict(self.square),
                "name": self.name, "power": self.power}
        data.update(kw)
        return RestrictedLie(**data)

    def to_json(self) -> dict:
        lab = self.labels
        fmt = lambda v: [lab[i] for i in bits(v)]
        return {
            "name": self.name,
            "basis": list(lab),
            "decomposition": {"k": self.obj.mK, "P": self.obj.nP},
            "d": {lab[i]: fmt(self.d(1 << i)) for i in range(self.dim)},
            "bracket": {f"[{lab[i]},{lab[j]}]": fmt(v)
                        for (i, j), v in sorted(self.bracket.items()) if v},
            "square": {self.format(x): fmt(v) for x, v in self.square.items()},
        }


def lie_of_group(H: HopfData) -> RestrictedLie:
    """``Lie(G)``: the tangent space with the commutator and convolution square."""
    if H.N < 3:
        raise ValueError("Lie(G) needs truncation N >= 3")
    D = DistAlgebra(H, 2)
    idx = tangent_indices(H)
    pos = {i: k for k, i in enumerate(idx)}
    O = H.algebra

    def to_lie(phi: int, what: str) -> int:
        v = 0
        for a in bits(phi):
            if a not in pos:
                raise AssertionError(f"{what} left Dist+_1 (value on {O.labels[a]})")
            v |= 1 << pos[a]
        return v

    def to_dist(v: int) -> int:
        out = 0
        for k in bits(v):
            out |= 1 << idx[k]
        return out

    obj = _tangent_obj(H, idx)
    bracket = {}
    for a, i in enumerate(idx):
        for b, j in enumerate(idx):
            bracket[(a, b)] = to_lie(D.beta_basis(i, j), f"[{O.labels[i]},{O.labels[j]}]")

    def power(v: int) -> int:
        phi = to_dist(v)
        return to_lie(D.mul(phi, phi), "square")

    square = {x: power(x) for x in _closed_basis(obj)}
    L = RestrictedLie(obj, bracket, square, name=f"Lie({H.name})", power=power)
    L.dist = D  # type: ignore[attr-defined]
    return L


def _tangent_obj(H: HopfData, idx: Sequence[int]) -> Ver4Object:
    pos = {i: k for k, i in enumerate(idx)}
    cols = []
    for i in idx:
        v = 0
        for a in bits(dual_d(H.algebra, 1 << i)):
            v |= 1 << pos[a]
        cols.append(v)
    return Ver4Object(tuple(tangent_labels(H)), BitMatrix.from_columns(cols, len(idx)))


def _closed_basis(obj: Ver4Object) -> list[int]:
    return kernel_basis(obj.d)


def end_algebra(V: Ver4Object) -> TableAlgebra:
    """``End(V)`` with ``d(f) = d f + f d``; ``E(i,j)`` sends basis vector j to i."""
    n = V.dim
    dcols = V.d.columns()
    labels = [f"E({V.labels[i]},{V.labels[j]})" for i in range(n) for j in range(n)]
    unit = 0
    for i in range(n):
        unit |= 1 << (i * n + i)
    dvecs = []
    for i in range(n):
        for j in range(n):
            v = 0
            for p in bits(dcols[i]):
                v ^= 1 << (p * n + j)
            for k in range(n):
                if dcols[k] >> j & 1:
                    v ^= 1 << (i * n + k)
            dvecs.append(v)

    def product(a: int, b: int) -> int:
        i, j = divmod(a, n)
        k, l = divmod(b, n)
        return 1 << (i * n + l) if j == k else 0

    return TableAlgebra(labels, unit, dvecs, product)


def lie_from_associative(A: Algebra, name: str = "") -> RestrictedLie:
    """``[x,y] = xy + yx + dy.dx`` and ``x^[2] = x.x`` on ``ker d``."""
    obj = A.object()
    bracket = {}
    for i in range(A.dim):
        for j in range(A.dim):
            x, y = 1 << i, 1 << j
            bracket[(i, j)] = A.mul(x, y) ^ A.mul(y, x) ^ A.mul(A.d(y), A.d(x))
    power = lambda v: A.mul(v, v)
    square = {x: power(x) for x in _closed_basis(obj)}
    return RestrictedLie(obj, bracket, square, name=name, power=power)


# ---------------------------------------------------------------- verifiers


def _closed_span(L: RestrictedLie, cap: int = 10) -> list[int]:
    """All combinations of the closed basis, or basis and pair sums if large."""
    cb = L.closed_basis()
    if len(cb) <= cap:
        out = []
        for mask in range(1, 1 << len(cb)):
            v = 0
            for k in bits(mask):
                v ^= cb[k]
            out.append(v)
        return out
    return cb + [a ^ b for a, b in itertools.combinations(cb, 2)]


def _braid_lie(L: RestrictedLie, S: set, slot: int) -> set:
    """``s`` on factors ``slot, slot+1`` of basis triples: ``y (x) x + dy (x) dx``."""
    out: set = set()
    for t in S:
        a, b = t[slot], t[slot + 1]
        _toggle(out, t[:slot] + (b, a) + t[slot + 2:])
        for q in bits(L.d(1 << b)):
            for p in bits(L.d(1 << a)):
                _toggle(out, t[:slot] + (q, p) + t[slot + 2:])
    return out


def _jacobi_sum(L: RestrictedLie, i: int, j: int, k: int) -> int:
    """``[ , ]([ , ] (x) 1)(1 + (s(x)1)(1(x)s) + (1(x)s)(s(x)1))`` on a basis triple."""
    t = {(i, j, k)}
    T = set(t)
    T ^= _braid_lie(L, _braid_lie(L, t, 1), 0)
    T ^= _braid_lie(L, _braid_lie(L, t, 0), 1)
    out = 0
    for a, b, c in T:
        out ^= L.br(L.bracket.get((a, b), 0), 1 << c)
    return out


def verify_lie_axioms(L: RestrictedLie) -> Report:
    rep = Report("lie")
    n = L.dim
    basis = [1 << i for i in range(n)]
    f = L.format
    for x in basis:
        for y in basis:
            w = {"x": f(x), "y": f(y)}
            rep.check(L.d(L.br(x, y)) == L.br(L.d(x), y) ^ L.br(x, L.d(y)),
                      "(i) d[x,y] = [dx,y] + [x,dy]", **w)
            rep.check(L.br(y, x) == L.br(x, y) ^ L.br(L.d(x), L.d(y)),
                      "(ii) [y,x] = [x,y] + [dx,dy]", **w)
            rep.check(L.br(x, L.d(y)) == L.br(L.d(y), x), "[x,dy] = [dy,x]", **w)
        rep.check(L.br(L.d(x), L.d(x)) == 0, "[dx,dx] = 0", x=f(x))
    for x in basis:
        for y in basis:
            for z in basis:
                dx, dy = L.d(x), L.d(y)
                jac = _jacobi_sum(L, x.bit_length() - 1, y.bit_length() - 1, z.bit_length() - 1)
                w = {"x": f(x), "y": f(y), "z": f(z)}
                rep.check(jac == 0, "(iii) Jacobi identity", **w)
                rep.check(L.br(L.br(x, y), z) == L.br(x, L.br(y, z)) ^ L.br(y, L.br(x, z))
                          ^ L.br(dy, L.br(dx, z)), "Jacobi in ad form", **w)
    for x in _closed_span(L):
        rep.check(L.br(x, x) == 0, "(iv) dx = 0 implies [x,x] = 0", x=f(x))
    return rep


def verify_restricted_axioms(L: RestrictedLie) -> Report:
    rep = Report("restricted")
    f = L.format
    closed = _closed_span(L)
    cb = L.closed_basis()
    if L.power is not None:
        for x in closed:
            rep.check(L.sq(x) == L.power(x), "square table matches the realisation", x=f(x))
    for x in closed:
        sx = L.sq(x)
        for y in cb:
            rep.check(L.sq(x ^ y) == sx ^ L.sq(y) ^ L.br(x, y),
                      "(i) (x+y)^[2] = x^[2] + y^[2] + [x,y]", x=f(x), y=f(y))
        rep.check(L.d(sx) == 0, "(iii) d(x^[2]) = 0", x=f(x))
        for j in range(L.dim):
            y = 1 << j
            rep.check(L.br(x, L.br(x, y)) == L.br(sx, y), "(v) [x,[x,y]] = [x^[2],y]",
                      x=f(x), y=f(y))
    rep.check(L.sq(0) == 0, "(ii) (0.x)^[2] = 0")
    vs = [1 << i for i in range(L.dim)]
    vs += [a ^ b for a, b in itertools.combinations(vs, 2)]
    for x in vs:
        rep.check(L.br(x, x) == L.sq(L.d(x)), "(iv) [x,x] = (dx)^[2]", x=f(x))
    return rep


# ---------------------------------------------------------------- derivations


@dataclass
class Derivation:
    """A linear map ``O/m^N -> O/m^precision`` given on the monomial basis."""

    H: HopfData
    images: list[int]
    precision: int

    def __post_init__(self) -> None:
        m = self.H.algebra.power_mask(self.precision)
        self.images = [v & ~m for v in self.images]

    def __call__(self, v: int) -> int:
        out = 0
        for i in bits(v):
            out ^= self.images[i]
        return out

    def differential(self) -> "Derivation":
        """``dF = d F + F d``."""
        O = self.H.algebra
        return Derivation(self.H, [O.d(self.images[i]) ^ self(O.dvecs[i])
                                   for i in range(O.dim)], self.precision)

    def compose(self, other: "Derivation") -> "Derivation":
        """``self`` after ``other``."""
        p = min(self.precision, other.precision - 1)
        return Derivation(self.H, [self(v) for v in other.images], p)

    def eta(self) -> int:
        """``eta . F`` as a functional."""
        out = 0
        for i, v in enumerate(self.images):
            if self.H.eta(v):
                out |= 1 << i
        return out


def derivation_from_tangent(H: HopfData, f: EpsDerivation | int) -> Derivation:
    """``F = (f' (x) 1) Delta``, a right-invariant derivation."""
    values = f.values if isinstance(f, EpsDerivation) else f
    O = H.algebra
    images = []
    for a in range(O.dim):
        v = 0
        for p, q in H.delta_pairs(a):
            if values >> p & 1:
                v ^= 1 << q
        images.append(v)
    return Derivation(H, images, H.N - 1)


def commutator_of_derivations(F: Derivation, G: Derivation) -> Derivation:
    """``[F,G] = F G + G F + dG dF``, known modulo one further power of m."""
    dF, dG = F.differential(), G.differential()
    a, b, c = F.compose(G), G.compose(F), dG.compose(dF)
    p = min(a.precision, b.precision, c.precision)
    return Derivation(F.H, [x ^ y ^ z for x, y, z in zip(a.images, b.images, c.images)], p)


def derivation_report(F: Derivation) -> Report:
    """Leibniz rule ``F(ab) = F(a)b + aF(b) + da.dF(b)`` and right invariance."""
    H, O = F.H, F.H.algebra
    rep = Report("derivation")
    p = F.precision
    keep = ~O.power_mask(p)
    dF = F.differential()
    for i in range(O.dim):
        for j in range(O.dim):
            if O.degrees[i] + O.degrees[j] >= O.N:
                continue
            a, b = 1 << i, 1 << j
            lhs = F(O.basis_product(i, j))
            rhs = O.mul(F(a), b) ^ O.mul(a, F(b)) ^ O.mul(O.dvecs[i], dF(b))
            rep.check((lhs ^ rhs) & keep == 0, "Leibniz rule", a=O.labels[i], b=O.labels[j])
    T2 = H.T2
    tkeep = ~T2.power_mask(p)
    for i in range(O.dim):
        lhs = 0
        for x, y in H.delta_pairs(i):
            lhs ^= T2.pure(F.images[x], 1 << y)
        rhs = H.delta(F.images[i])
        rep.check((lhs ^ rhs) & tkeep == 0, "right invariance", a=O.labels[i])
    return rep


def _equations(H: HopfData) -> tuple[list[int], int, int]:
    """Linear equations on the matrix entries of a right-invariant derivation."""
    O, T2 = H.algebra, H.T2
    p = H.N - 1
    width = sum(1 for g in O.degrees if g < p)
    keep = (1 << width) - 1

    def u(a: int, c: int) -> int:
        return 1 << (a * width + c)

    rows: list[int] = []

    def emit(E: dict[int, int]) -> None:
        rows.extend(v for v in E.values() if v)

    def add(E: dict[int, int], target: int, form: int) -> None:
        for c in bits(target):
            E[c] = E.get(c, 0) ^ form

    for i in range(O.dim):
        for j in range(O.dim):
            if O.degrees[i] + O.degrees[j] >= O.N:
                continue
            E: dict[int, int] = {}
            for a2 in bits(O.basis_product(i, j)):
                for c in range(width):
                    add(E, 1 << c, u(a2, c))
            di = O.dvecs[i]
            for c in range(width):
                cv = 1 << c
                add(E, O.mul(cv, 1 << j) & keep, u(i, c))
                add(E, O.mul(1 << i, cv) & keep, u(j, c))
                if di:
                    add(E, O.mul(di, O.d(cv)) & keep, u(j, c))
                    for b2 in bits(O.dvecs[j]):
                        add(E, O.mul(di, cv) & keep, u(b2, c))
            emit(E)
    tkeep = ~T2.power_mask(p)
    for a in range(O.dim):
        E = {}
        for x, y in H.delta_pairs(a):
            for c in range(width):
                add(E, T2.pure(1 << c, 1 << y) & tkeep, u(x, c))
        for c in range(width):
            add(E, H.coproduct[c] & tkeep, u(a, c))
        emit(E)
    return rows, O.dim * width, width


def right_invariant_derivations(H: HopfData) -> list[Derivation]:
    """A basis of all right-invariant derivations ``O/m^N -> O/m^(N-1)``."""
    rows, nvars, width = _equations(H)
    out = []
    mask = (1 << width) - 1
    for sol in nullspace(rows, nvars):
        images = [(sol >> (a * width)) & mask for a in range(H.algebra.dim)]
        out.append(Derivation(H, images, H.N - 1))
    return out


def verify_universality(H: HopfData) -> Report:
    """Right-invariant derivations correspond to tangent vectors, and the
    commutator of derivations matches the bracket on ``Lie(G)``."""
    if H.N < 3:
        raise ValueError("universality check needs truncation N >= 3")
    rep = Report("universality")
    O = H.algebra
    sols = right_invariant_derivations(H)
    tb = tangent_basis(H)
    rep.info["derivations"] = len(sols)
    rep.info["tangent"] = len(tb)
    rep.check(len(sols) == len(tb), "dimension of derivations equals tangent dimension",
              derivations=len(sols), tangent=len(tb))
    tangent_mask = 0
    for f in tb:
        tangent_mask |= f.values
    etas = Echelon()
    for F in sols:
        e = F.eta()
        rep.check(e & ~tangent_mask == 0, "eta.F is a tangent vector")
        rep.check(etas.add(e)[0], "F -> eta.F is injective")
    span = Echelon()
    for F in sols:
        span.add(_flat(F))
    Fs = []
    for f in tb:
        F = derivation_from_tangent(H, f)
        Fs.append(F)
        name = O.labels[f.values.bit_length() - 1]
        rep.check(span.contains(_flat(F)), "(f' (x) 1) Delta is among the solutions", x=name)
        rep.check(F.eta() == f.values, "eta . (f' (x) 1) Delta = f'", x=name)
        rep.absorb(derivation_report(F))
    D = DistAlgebra(H, 2)
    for f, F in zip(tb, Fs):
        for g, G in zip(tb, Fs):
            br = commutator_of_derivations(F, G)
            rep.check(br.eta() == D.beta(f.values, g.values),
                      "eta [F_x, F_y] = [x, y]",
                      x=O.labels[f.values.bit_length() - 1], y=O.labels[g.values.bit_length() - 1])
    return rep


def _flat(F: Derivation) -> int:
    width = sum(1 for g in F.H.algebra.degrees if g < F.H.N - 1)
    v = 0
    for a, img in enumerate(F.images):
        v |= img << (a * width)
    return v


def _pure(L: RestrictedLie, x: int, y: int) -> int:
    """``x (x) y`` in ``L (x) L``; basis ``i (x) j`` is bit ``i*dim + j``."""
    n = L.dim
    out = 0
    ys = list(bits(y))
    for i in bits(x):
        for j in ys:
            out ^= 1 << (i * n + j)
    return out


def gamma2_generators(L: RestrictedLie) -> list[tuple[int, int]]:
    """Spanning tensors of ``Gamma^2 L`` with their images under ``phi_2``:
    ``x(x)y + y(x)x + dy(x)dx -> [x,y]`` for basis pairs and ``x(x)x -> x^[2]``
    for the closed basis."""
    out = []
    for i in range(L.dim):
        for j in range(i, L.dim):
            x, y = 1 << i, 1 << j
            t = _pure(L, x, y) ^ _pure(L, y, x) ^ _pure(L, L.d(y), L.d(x))
            out.append((t, L.br(x, y)))
    for x in L.closed_basis():
        out.append((_pure(L, x, x), L.sq(x)))
    return out


def gamma2_span(L: RestrictedLie) -> list[int]:
    """A basis of ``Gamma^2 L`` inside ``L (x) L``."""
    return span_basis(t for t, _ in gamma2_generators(L))


def braided_invariants(L: RestrictedLie) -> list[int]:
    """A basis of the tensors fixed by ``s(x(x)y) = y(x)x + dy(x)dx``."""
    n = L.dim
    cols = []
    for i in range(n):
        for j in range(n):
            x, y = 1 << i, 1 << j
            cols.append(_pure(L, y, x) ^ _pure(L, L.d(y), L.d(x)) ^ (1 << (i * n + j)))
    return kernel_basis(BitMatrix.from_columns(cols, n * n))


def phi2(L: RestrictedLie, t: int) -> int:
    """The structure map ``Gamma^2 L -> L``."""
    gens = gamma2_generators(L)
    e = Echelon()
    for g, _ in gens:
        e.add(g)
    comb = e.combination(t)
    if comb is None:
        raise ValueError("tensor is not in Gamma^2 L")
    out = 0
    for k in bits(comb):
        out ^= gens[k][1]
    return out


def verify_gamma2(L: RestrictedLie) -> Report:
    """``phi_2`` is well defined: every relation among the spanning tensors
    is respected by the images."""
    rep = Report("gamma2")
    gens = gamma2_generators(L)
    e = Echelon()
    for k, (g, _) in enumerate(gens):
        ok, tag = e.add(g)
        if ok:
            continue
        img = 0
        for q in bits(tag):
            img ^= gens[q][1]
        rep.check(img == 0, "phi_2 respects the relations of Gamma^2", relation=k)
    inv = braided_invariants(L)
    rep.check(len(e) == len(inv) and all(e.contains(v) for v in inv),
              "Gamma^2 equals the braided-symmetric tensors", span=len(e), invariants=len(inv))
    return rep

"""Truncated Hopf data at the identity for the additive, multiplicative and
general linear group schemes of Ver4+, with axiom and filtration checks.

Coproducts land in the twisted tensor square truncated at total degree
``N``; since ``Delta(m^k)`` lies in the ``k``-th power of the augmentation
ideal of ``O (x) O``, this is exactly ``O/m^N -> (O (x) O)/I^N``.
Iterated tensor powers are handled as sets of index tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .algebra import (FreeCommutative, LocalAlgebra, QuotientAlgebra, TensorAlgebra,
                      invert_mod_m, underlying_commutative)
from .f2 import bits
from .report import Report

Tuple = tuple[int, ...]


@dataclass
class HopfData:
    algebra: LocalAlgebra
    coproduct: list[int]
    counit: int
    antipode: list[int]
    name: str = ""
    generatorFormulas: dict[str, str] = field(default_factory=dict)
    extras: dict[str, int] = field(default_factory=dict)
    tensor2: TensorAlgebra | None = None

    def __post_init__(self) -> None:
        if self.tensor2 is None:
            self.tensor2 = TensorAlgebra(self.algebra, self.algebra)
        self._pair_cache: list[list[tuple[int, int]]] | None = None

    @property
    def N(self) -> int:
        return self.algebra.N

    @property
    def T2(self) -> TensorAlgebra:
        assert self.tensor2 is not None
        return self.tensor2

    def delta(self, a: int) -> int:
        out = 0
        for i in bits(a):
            out ^= self.coproduct[i]
        return out

    def delta_pairs(self, i: int) -> list[tuple[int, int]]:
        """Coproduct of basis element ``i`` as a list of index pairs."""
        if self._pair_cache is None:
            self._pair_cache = [self.T2.split(c) for c in self.coproduct]
        return self._pair_cache[i]

    def eta(self, a: int) -> int:
        return bin(a & self.counit).count("1") & 1

    def tau(self, a: int) -> int:
        out = 0
        for i in bits(a):
            out ^= self.antipode[i]
        return out

    def with_changes(self, **kw) -> "HopfData":
        """A copy with some structure maps replaced (used for fault injection)."""
        h = replace(self, **kw)
        h._pair_cache = None
        return h


# ---------------------------------------------------------------- builders


def _extend_multiplicatively(O: FreeCommutative, target_mul, target_unit: int,
                             images: dict[tuple[str, int], int]) -> list[int]:
    """Images of all monomials under the algebra map fixed on generators."""
    out = [0] * O.dim
    for k, (xs, wm) in enumerate(O.monomials):
        if not xs and not wm:
            out[k] = target_unit
            continue
        if wm:
            b = wm.bit_length() - 1
            prev = O._mono_index[(xs, wm & ~(1 << b))]
            gen = images[("w", b)]
        else:
            prev = O._mono_index[(xs[:-1], 0)]
            gen = images[("x", xs[-1])]
        out[k] = target_mul(out[prev], gen)
    return out


def _assemble(O: FreeCommutative, delta_gen: dict, tau_gen: dict, name: str,
              formulas: dict[str, str], extras: dict[str, int] | None = None) -> HopfData:
    T2 = TensorAlgebra(O, O)
    coproduct = _extend_multiplicatively(O, T2.mul, T2.unit, delta_gen)
    antipode = _extend_multiplicatively(O, O.mul, O.unit, tau_gen)
    return HopfData(O, coproduct, O.unit, antipode, name, formulas, extras or {}, T2)


def build_ga(N: int) -> HopfData:
    """Additive group: ``Delta x = x(x)1 + 1(x)x``, ``tau x = x``."""
    if N < 2:
        raise ValueError("truncation must be at least 2")
    O = FreeCommutative(0, 1, N, ["x"], ["w"])
    T2 = TensorAlgebra(O, O)
    x, w = O.basis_vector("x"), O.basis_vector("w")
    dg = {("x", 0): T2.pure(x, O.unit) ^ T2.pure(O.unit, x),
          ("w", 0): T2.pure(w, O.unit) ^ T2.pure(O.unit, w)}
    tg = {("x", 0): x, ("w", 0): w}
    formulas = {"Delta(x)": "x(x)1 + 1(x)x", "Delta(w)": "w(x)1 + 1(x)w",
                "eta(x)": "0", "eta(w)": "0", "tau(x)": "x", "tau(w)": "w"}
    return _assemble(O, dg, tg, "ga", formulas)


def build_gm(N: int) -> HopfData:
    """Multiplicative group in the local variable ``t = x - 1``."""
    if N < 2:
        raise ValueError("truncation must be at least 2")
    O = FreeCommutative(0, 1, N, ["t"], ["w"])
    T2 = TensorAlgebra(O, O)
    one = O.unit
    t, w = O.basis_vector("t"), O.basis_vector("w")
    x = one ^ t
    dg = {("x", 0): T2.pure(t, t) ^ T2.pure(t, one) ^ T2.pure(one, t),
          ("w", 0): T2.pure(w, x) ^ T2.pure(x, w)}
    xinv = invert_mod_m(O, x)
    tg = {("x", 0): xinv ^ one, ("w", 0): O.mul(O.mul(xinv, xinv), w)}
    formulas = {"Delta(t)": "t(x)t + t(x)1 + 1(x)t", "Delta(w)": "w(x)(1+t) + (1+t)(x)w",
                "eta(t)": "0", "eta(w)": "0", "tau(1+t)": "(1+t)^-1",
                "tau(w)": "(1+t)^-2 w"}
    return _assemble(O, dg, tg, "gm", formulas)


def _lab(i: int, j: int, size: int) -> str:
    return f"{i}{j}" if size < 10 else f"{i}_{j}"


def gl_variables(m: int, n: int) -> list[tuple[int, int]]:
    """Matrix positions in generator order: the ``n x n`` block first, lexicographic."""
    size = m + n
    lex = [(i, j) for i in range(1, size + 1) for j in range(1, size + 1)]
    return [p for p in lex if p[0] <= n and p[1] <= n] + [p for p in lex if not (p[0] <= n and p[1] <= n)]


def _det(O: LocalAlgebra, X: list[list[int]], rows: Sequence[int], cols: Sequence[int]) -> int:
    """Determinant with each term a product in increasing row order."""
    memo: dict[tuple[int, frozenset], int] = {}

    def rec(r: int, avail: frozenset) -> int:
        if r == len(rows):
            return O.unit
        key = (r, avail)
        if key in memo:
            return memo[key]
        out = 0
        for c in sorted(avail):
            entry = X[rows[r]][c]
            if entry:
                out ^= O.mul(entry, rec(r + 1, avail - {c}))
        memo[key] = out
        return out

    return rec(0, frozenset(cols))


def _matmul(O: LocalAlgebra, A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    k = len(A)
    out = []
    for i in range(k):
        row = []
        for j in range(k):
            acc = 0
            for l in range(k):
                acc ^= O.mul(A[i][l], B[l][j])
            row.append(acc)
        out.append(row)
    return out


def _scale_right(O: LocalAlgebra, A: list[list[int]], u: int) -> list[list[int]]:
    return [[O.mul(a, u) for a in row] for row in A]


def build_gl(m: int, n: int, N: int, antipode: str = "closed") -> HopfData:
    """``GL(m+n|n)`` in the local variables ``t_ij = x_ij - delta_ij``.

    ``antipode="closed"`` (default) uses ``Adj.u.X.Adj.u``; ``antipode="series"`` uses
    ``Adj.u.(X.Adj.u)^-1`` with the inverse summed as a geometric series,
    which stays exact when ``(X.Adj.u - 1)^2 != 0``.
    """
    if antipode not in ("closed", "series"):
        raise ValueError(f"unknown antipode formula {antipode!r}")
    if N < 2:
        raise ValueError("truncation must be at least 2")
    if m < 0 or n < 0 or m + n < 1:
        raise ValueError("need m, n >= 0 and m + n >= 1")
    size = m + n
    pos = gl_variables(m, n)
    xl = [f"t{_lab(i, j, size)}" for i, j in pos]
    wl = [f"w{_lab(i, j, size)}" for i, j in pos[: n * n]]
    O = FreeCommutative(size * size - n * n, n * n, N, xl, wl)
    T2 = TensorAlgebra(O, O)
    one = O.unit
    gen = {p: k for k, p in enumerate(pos)}
    X = [[O.basis_vector(xl[gen[(i, j)]]) ^ (one if i == j else 0)
          for j in range(1, size + 1)] for i in range(1, size + 1)]
    dg: dict[tuple[str, int], int] = {}
    for (i, j), k in gen.items():
        acc = 0
        for l in range(size):
            acc ^= T2.pure(X[i - 1][l], X[l][j - 1])
        # acc is Delta(t_ij) = sum_l x_il (x) x_lj - delta_ij 1(x)1
        acc ^= T2.unit if i == j else 0
        dg[("x", k)] = acc
        if k < n * n:
            dg[("w", k)] = T2.d(acc)
    idx = list(range(size))
    det = _det(O, X, idx, idx)
    u = invert_mod_m(O, det)
    adj = [[_det(O, X, [r for r in idx if r != j], [c for c in idx if c != i])
            for j in idx] for i in idx]
    if antipode == "closed":
        inv = _scale_right(O, _matmul(O, _matmul(O, _scale_right(O, adj, u), X), adj), u)
    else:
        F = _scale_right(O, _matmul(O, X, adj), u)
        for i in idx:
            F[i][i] ^= one
        series = [[one if i == j else 0 for j in idx] for i in idx]
        power = series
        for _ in range(N):
            power = _matmul(O, power, F)
            series = [[a ^ b for a, b in zip(r1, r2)] for r1, r2 in zip(series, power)]
        inv = _matmul(O, _scale_right(O, adj, u), series)
    tg: dict[tuple[str, int], int] = {}
    for (i, j), k in gen.items():
        tt = inv[i - 1][j - 1] ^ (one if i == j else 0)
        tg[("x", k)] = tt
        if k < n * n:
            tg[("w", k)] = O.d(tt)
    formulas = {"Delta(x_ij)": "sum_l x_il (x) x_lj", "Delta(u)": "u(x)u",
                "eta(x_ij)": "delta_ij", "eta(dx_ij)": "0",
                "tau(X)": "Adj(X).u.X.Adj(X).u", "tau(dx_ij)": "d tau(x_ij)",
                "det": "lexicographic order"}
    if antipode == "series":
        formulas["tau(X)"] = "Adj(X).u.(X.Adj(X).u)^-1"
    H = _assemble(O, dg, tg, f"gl({m},{n})", formulas, {"det": det, "u": u})
    H.extras["matrix_size"] = size
    H.extras["m"], H.extras["n"] = m, n
    return H


def build(group: str, m: int = 0, n: int = 1, N: int = 4, antipode: str = "closed") -> HopfData:
    group = group.lower()
    if group == "ga":
        return build_ga(N)
    if group == "gm":
        return build_gm(N)
    if group == "gl":
        return build_gl(m, n, N, antipode)
    raise ValueError(f"unknown group {group!r}")


# ---------------------------------------------------------- tuple tensors


def _deg(H: HopfData, t: Tuple) -> int:
    dg = H.algebra.degrees
    return sum(dg[i] for i in t)


def _toggle(S: set, t: Tuple) -> None:
    if t in S:
        S.remove(t)
    else:
        S.add(t)


def delta_at(H: HopfData, S: Iterable[Tuple], slot: int) -> set:
    """Apply ``Delta`` to factor ``slot`` of each tuple, truncating."""
    out: set = set()
    dg = H.algebra.degrees
    N = H.N
    for t in S:
        rest = _deg(H, t) - dg[t[slot]]
        for p, q in H.delta_pairs(t[slot]):
            if rest + dg[p] + dg[q] < N:
                _toggle(out, t[:slot] + (p, q) + t[slot + 1:])
    return out


def braid_at(H: HopfData, S: Iterable[Tuple], slot: int) -> set:
    """Apply ``s`` to factors ``slot, slot+1``: ``a(x)b -> b(x)a + db(x)da``."""
    out: set = set()
    dv = H.algebra.dvecs
    for t in S:
        a, b = t[slot], t[slot + 1]
        _toggle(out, t[:slot] + (b, a) + t[slot + 2:])
        if dv[a] and dv[b]:
            for q in bits(dv[b]):
                for p in bits(dv[a]):
                    _toggle(out, t[:slot] + (q, p) + t[slot + 2:])
    return out


def one_minus_s_at(H: HopfData, S: set, slot: int) -> set:
    return set(S) ^ braid_at(H, S, slot)


def pairs_of(H: HopfData, i: int) -> set:
    return set(H.delta_pairs(i))


# ---------------------------------------------------------------- verifiers


def verify_hopf(H: HopfData) -> Report:
    """Counit, coassociativity, multiplicativity, antipode and d-compatibility."""
    O, T2 = H.algebra, H.T2
    rep = Report("hopf")
    lab = O.labels
    dim = O.dim
    # unit and counit on the unit
    rep.check(H.coproduct[O.unit.bit_length() - 1] == T2.unit, "Delta(1)=1(x)1")
    rep.check(H.eta(O.unit) == 1, "eta(1)=1")
    for a in range(dim):
        pairs = H.delta_pairs(a)
        left = 0
        right = 0
        for p, q in pairs:
            if H.eta(1 << p):
                left ^= 1 << q
            if H.eta(1 << q):
                right ^= 1 << p
        rep.check(left == 1 << a, "counit (eta(x)1)Delta=id", a=lab[a])
        rep.check(right == 1 << a, "counit (1(x)eta)Delta=id", a=lab[a])
    # Delta preserves the filtration, which makes the truncated checks exact
    for a in range(dim):
        ok = all(O.degrees[p] + O.degrees[q] >= O.degrees[a] for p, q in H.delta_pairs(a))
        rep.check(ok, "Delta(m^k) in I^k", a=lab[a])
    for a in range(dim):
        s = {(p, q) for p, q in H.delta_pairs(a)}
        lhs = delta_at(H, s, 0)
        rhs = delta_at(H, s, 1)
        rep.check(lhs == rhs, "coassociativity", a=lab[a])
    # algebra maps
    for a in range(dim):
        for b in range(dim):
            if O.degrees[a] + O.degrees[b] >= O.N:
                continue
            ab = O.basis_product(a, b)
            rep.check(H.delta(ab) == T2.mul(H.coproduct[a], H.coproduct[b]),
                      "Delta multiplicative", a=lab[a], b=lab[b])
            rep.check(H.eta(ab) == H.eta(1 << a) & H.eta(1 << b), "eta multiplicative",
                      a=lab[a], b=lab[b])
    # antipode
    for a in range(dim):
        lhs = rhs = 0
        for p, q in H.delta_pairs(a):
            lhs ^= O.mul(H.antipode[p], 1 << q)
            rhs ^= O.mul(1 << p, H.antipode[q])
        unit = O.unit if H.eta(1 << a) else 0
        rep.check(lhs == unit, "antipode mu(tau(x)1)Delta=eta", a=lab[a])
        rep.check(rhs == unit, "antipode mu(1(x)tau)Delta=eta", a=lab[a])
    # compatibility with d
    for a in range(dim):
        da = O.dvecs[a]
        rep.check(H.delta(da) == T2.d(H.coproduct[a]), "Delta commutes with d", a=lab[a])
        rep.check(H.eta(da) == 0, "eta commutes with d", a=lab[a])
        rep.check(H.tau(da) == O.d(H.antipode[a]), "tau commutes with d", a=lab[a])
    if "det" in H.extras:
        det, u = H.extras["det"], H.extras["u"]
        rep.check(O.mul(det, u) == O.unit, "det.u=1")
        rep.check(O.mul(u, det) == O.unit, "u.det=1")
        rep.check(T2.mul(H.delta(u), H.delta(det)) == T2.unit, "Delta(u).Delta(det)=1")
    return rep


def group_like_report(H: HopfData, g: int) -> Report:
    """Whether ``Delta(g) = g (x) g`` holds exactly.

    For ``g = u`` in the general linear family this fails in the twisted
    tensor product, because ``(x(x)x)(x^-1 (x) x^-1)`` picks up the term
    ``x.d(x^-1) (x) dx.x^-1``; the correct value is ``Delta(det)^-1``.
    """
    rep = Report("group-like")
    rep.check(H.delta(g) == H.T2.pure(g, g), "Delta(g)=g(x)g", element=H.algebra.format(g))
    return rep


def _in_filtration_sum(H: HopfData, S: Iterable[Tuple], total: int) -> Tuple | None:
    """First tuple not in ``sum m^{i1} (x) ... (x) m^{ik}`` with each ``i >= 1``
    and ``i1 + ... + ik = total``; None if all are."""
    dg = H.algebra.degrees
    for t in sorted(S):
        if any(dg[i] < 1 for i in t) or sum(dg[i] for i in t) < total:
            return t
    return None


def _fmt(H: HopfData, t: Tuple) -> str:
    return "(x)".join(H.algebra.labels[i] for i in t)


def verify_delta_filtration(H: HopfData, j: int) -> Report:
    """``(1-s)Delta`` sends ``O`` into ``m(x)m`` and ``m^j`` into
    ``sum_{i=1..j} m^i (x) m^{j+1-i}``."""
    if not 0 <= j < H.N:
        raise ValueError("filtration index must satisfy 0 <= j < N")
    O = H.algebra
    rep = Report("delta-filtration")
    for a in range(O.dim):
        img = one_minus_s_at(H, pairs_of(H, a), 0)
        bad = _in_filtration_sum(H, img, 2)
        rep.check(bad is None, "(1-s)Delta(O) in m(x)m", a=O.labels[a],
                  term=_fmt(H, bad) if bad else None)
        if j >= 1 and O.degrees[a] >= j:
            bad = _in_filtration_sum(H, img, j + 1)
            rep.check(bad is None, f"(1-s)Delta(m^{j}) filtration", a=O.labels[a],
                      term=_fmt(H, bad) if bad else None)
    return rep


def verify_gr_cocommutative(H: HopfData) -> Report:
    """The coproduct induced on the associated graded is cocommutative."""
    O = H.algebra
    rep = Report("gr-cocommutative")
    for a in range(O.dim):
        k = O.degrees[a]
        img = one_minus_s_at(H, pairs_of(H, a), 0)
        leading = {t for t in img if _deg(H, t) == k}
        rep.check(not leading, "s.Delta = Delta on Gr", a=O.labels[a],
                  term=_fmt(H, min(leading)) if leading else None)
    return rep


def omega_delta(H: HopfData, a: int, n: int) -> set:
    """``omega_n . Delta^{n-1}`` on basis element ``a`` via the iterated
    composite of ``Delta (x) Id`` and ``(1-s) (x) Id`` steps."""
    S = one_minus_s_at(H, pairs_of(H, a), 0)
    for _ in range(n - 2):
        S = delta_at(H, S, 0)
        S = one_minus_s_at(H, S, 0)
    return S


def omega_filtration_check(H: HopfData, n: int, j: int) -> Report:
    if n < 2:
        raise ValueError("arity must be at least 2")
    if j < 1 or n + j - 1 > H.N:
        raise ValueError("need j >= 1 and n + j - 1 <= N")
    O = H.algebra
    rep = Report(f"omega-{n}")
    for a in range(O.dim):
        if O.degrees[a] < j:
            continue
        img = omega_delta(H, a, n)
        bad = _in_filtration_sum(H, img, n + j - 1)
        rep.check(bad is None, f"omega_{n} Delta^{n - 1}(m^{j}) filtration", a=O.labels[a],
                  term=_fmt(H, bad) if bad else None)
    return rep


def verify_filtrations(H: HopfData, arities: Sequence[int] = (2, 3)) -> Report:
    rep = Report("filtration")
    for j in range(H.N):
        rep.absorb(verify_delta_filtration(H, j))
    rep.absorb(verify_gr_cocommutative(H))
    for n in arities:
        for j in range(1, H.N - n + 2):
            rep.absorb(omega_filtration_check(H, n, j))
    return rep


# ----------------------------------------------------- underlying scheme


def underlying_group_scheme(H: HopfData) -> HopfData:
    """Descend the Hopf structure to ``O / span{a.db}`` (an ordinary Hopf algebra)."""
    O = H.algebra
    U = underlying_commutative(O)
    T2 = TensorAlgebra(U, U)
    coproduct = []
    for r in U.reps:
        acc = 0
        for p, q in H.delta_pairs(r):
            acc ^= T2.pure(U.project(1 << p), U.project(1 << q))
        coproduct.append(acc)
    counit = 0
    for k, r in enumerate(U.reps):
        if H.eta(1 << r):
            counit |= 1 << k
    antipode = [U.project(H.antipode[r]) for r in U.reps]
    return HopfData(U, coproduct, counit, antipode, H.name + "_u", dict(H.generatorFormulas), {}, T2)


def descent_report(H: HopfData) -> Report:
    """Well-definedness of the descent: the ideal is a Hopf ideal."""
    O = H.algebra
    U = underlying_commutative(O)
    T2 = TensorAlgebra(U, U)
    rep = Report("descent")
    for v in U.ideal:
        img = 0
        for i in bits(v):
            for p, q in H.delta_pairs(i):
                img ^= T2.pure(U.project(1 << p), U.project(1 << q))
        rep.check(img == 0, "Delta(J) in J(x)O+O(x)J", element=O.format(v))
        rep.check(H.eta(v) == 0, "eta(J)=0", element=O.format(v))
        rep.check(U.project(H.tau(v)) == 0, "tau(J) in J", element=O.format(v))
    return rep


__all__ = [
    "HopfData", "build", "build_ga", "build_gm", "build_gl", "verify_hopf",
    "verify_delta_filtration", "verify_gr_cocommutative", "omega_filtration_check",
    "verify_filtrations", "underlying_group_scheme", "descent_report", "gl_variables",
    "QuotientAlgebra",
]

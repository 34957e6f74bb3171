"""Dual numbers, tangent spaces at the identity, and the enumeration oracle.

A tangent vector is a functional ``f'`` on ``O/m^N`` that vanishes on
``1`` and on ``m^2``.  It corresponds to the algebra map
``a -> eta(a) + f'(da) eps + f'(a) deps`` into the dual numbers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import FreeCommutative, LocalAlgebra
from .f2 import BitMatrix, bits
from .hopf import HopfData
from .objects import Ver4Object
from .report import Report

ORACLE_LIMIT = 20


def dual_numbers() -> FreeCommutative:
    """``k[eps, deps] / (eps^2, eps.deps, deps^2)`` with ``d eps = deps``."""
    return FreeCommutative(0, 1, 2, ["eps"], ["deps"])


@dataclass(frozen=True)
class EpsDerivation:
    """A functional ``f'`` on the truncated algebra, as a bitset of values."""

    algebra: LocalAlgebra
    values: int

    def __call__(self, a: int) -> int:
        return bin(self.values & a).count("1") & 1

    def violations(self, eta=None) -> list[str]:
        A = self.algebra
        eta = eta or A.aug
        out = []
        if self(A.unit):
            out.append("f'(1) != 0")
        if self.values & A.power_mask(2):
            out.append("f' does not vanish on m^2")
        for i in range(A.dim):
            for j in range(A.dim):
                if A.degrees[i] + A.degrees[j] >= A.N:
                    continue
                ab = A.basis_product(i, j)
                rhs = (self(1 << i) & eta(1 << j)) ^ (eta(1 << i) & self(1 << j))
                if self(ab) != rhs:
                    out.append(f"f'(ab) rule fails at ({A.labels[i]}, {A.labels[j]})")
                    return out
        return out


def _lie_label(label: str) -> str:
    if label.startswith("t") or label.startswith("x"):
        return "e" + label[1:]
    if label.startswith("w"):
        return "f" + label[1:]
    return label + "^"


def tangent_indices(H: HopfData) -> list[int]:
    """Indices of the degree-one basis elements, ordered e's (lexicographic) then f's."""
    O = H.algebra
    idx = O.cotangent_basis()
    return sorted(idx, key=lambda i: (O.labels[i].startswith("w"), _sort_key(O.labels[i])))


def _sort_key(label: str):
    body = label[1:]
    if "_" in body:
        return tuple(int(p) for p in body.split("_"))
    return tuple(int(c) for c in body) if body.isdigit() else (body,)


def tangent_basis(H: HopfData) -> list[EpsDerivation]:
    """Functionals dual to a basis of ``m/m^2``, extended by zero."""
    if H.N < 2:
        raise ValueError("tangent space needs truncation N >= 2")
    return [EpsDerivation(H.algebra, 1 << i) for i in tangent_indices(H)]


def tangent_labels(H: HopfData) -> list[str]:
    return [_lie_label(H.algebra.labels[i]) for i in tangent_indices(H)]


def dual_d(A: LocalAlgebra, phi: int) -> int:
    """``(d phi)(a) = phi(da)``."""
    out = 0
    for a in range(A.dim):
        if bin(A.dvecs[a] & phi).count("1") & 1:
            out |= 1 << a
    return out


def tangent_object(H: HopfData) -> Ver4Object:
    """The tangent space with differential ``(d f')(a) = f'(da)``."""
    basis = tangent_indices(H)
    pos = {i: k for k, i in enumerate(basis)}
    O = H.algebra
    cols = []
    for i in basis:
        img = dual_d(O, 1 << i)
        v = 0
        for a in bits(img):
            if a not in pos:
                raise AssertionError("dual differential left the tangent space")
            v |= 1 << pos[a]
        cols.append(v)
    return Ver4Object(tuple(tangent_labels(H)), BitMatrix.from_columns(cols, len(basis)))


def hom_to_dual_numbers(H: HopfData, f: EpsDerivation, check: bool = True) -> list[int]:
    """Images in the dual numbers of every basis element of ``O``.

    ``f(a) = eta(a) + f'(da) eps + f'(a) deps``.
    """
    if check:
        bad = f.violations(H.eta)
        if bad:
            raise ValueError(f"not an eps-derivation: {bad[0]}")
    E = dual_numbers()
    one, eps, deps = 1 << E.index("1"), 1 << E.index("eps"), 1 << E.index("deps")
    O = H.algebra
    images = []
    for a in range(O.dim):
        v = one if H.eta(1 << a) else 0
        if f(O.dvecs[a]):
            v ^= eps
        if f(1 << a):
            v ^= deps
        images.append(v)
    return images


def hom_report(H: HopfData, images: list[int]) -> Report:
    """Brute-force check that ``images`` define an algebra map ``O -> E``
    over the identity: unit, multiplicativity, ``d`` and augmentation."""
    E = dual_numbers()
    O = H.algebra
    rep = Report("hom-to-dual-numbers")

    def img(v: int) -> int:
        out = 0
        for i in bits(v):
            out ^= images[i]
        return out

    rep.check(img(O.unit) == E.unit, "f(1)=1")
    for i in range(O.dim):
        rep.check(img(O.dvecs[i]) == E.d(images[i]), "f commutes with d", a=O.labels[i])
        rep.check(E.aug(images[i]) == H.eta(1 << i), "eta_E f = eta", a=O.labels[i])
        for j in range(O.dim):
            if O.degrees[i] + O.degrees[j] >= O.N:
                continue
            rep.check(img(O.basis_product(i, j)) == E.mul(images[i], images[j]),
                      "f multiplicative", a=O.labels[i], b=O.labels[j])
    return rep


def _is_hom(H: HopfData, images: list[int]) -> bool:
    return hom_report(H, images).passed


def enumerate_tangent_oracle(H: HopfData) -> tuple[int, list[int]]:
    """Enumerate every functional on ``m/m^2`` and keep those giving algebra maps.

    Returns the count and the kept functionals (as value bitsets on
    ``O``) in increasing order.
    """
    idx = H.algebra.cotangent_basis()
    if len(idx) > ORACLE_LIMIT:
        raise ValueError("oracle too large")
    kept = []
    for choice in itertools.product((0, 1), repeat=len(idx)):
        values = 0
        for c, i in zip(choice, idx):
            if c:
                values |= 1 << i
        f = EpsDerivation(H.algebra, values)
        if _is_hom(H, hom_to_dual_numbers(H, f, check=False)):
            kept.append(values)
    kept.sort()
    return len(kept), kept

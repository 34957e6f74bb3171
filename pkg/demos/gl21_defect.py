"""Why GL(2|1) is not a group scheme in this category: d(Delta x12) != Delta(d x12)."""

from ver4.hopf import build_gl

H = build_gl(1, 1, 3)
O, T2 = H.algebra, H.T2
t12 = O.basis_vector("t12")
lhs = T2.d(H.delta(t12))
rhs = H.delta(O.d(t12))
print("d Delta(t12) =", T2.format(lhs))
print("Delta d(t12) =", T2.format(rhs) if rhs else "0")

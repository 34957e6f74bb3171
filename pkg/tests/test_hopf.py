import pytest
from hypothesis import given, strategies as st

from ver4.algebra import invert_mod_m
from ver4.hopf import (build, build_ga, build_gl, build_gm, descent_report, group_like_report,
                       omega_filtration_check, underlying_group_scheme, verify_delta_filtration,
                       verify_filtrations, verify_gr_cocommutative, verify_hopf)

# families whose coproduct commutes with d
GOOD = [("ga", 0, 1), ("gm", 0, 1), ("gl", 0, 1), ("gl", 0, 2)]


def test_ga_formulas():
    H = build_ga(4)
    O, T2 = H.algebra, H.T2
    x, w = O.basis_vector("x"), O.basis_vector("w")
    assert H.eta(x) == 0 and H.eta(w) == 0
    assert H.tau(x) == x
    assert H.delta(w) == T2.pure(w, O.unit) ^ T2.pure(O.unit, w)


def test_gm_formulas():
    H = build_gm(4)
    O, T2 = H.algebra, H.T2
    t, w = O.basis_vector("t"), O.basis_vector("w")
    one = O.unit
    assert H.eta(t) == 0 and H.eta(w) == 0
    xinv = invert_mod_m(O, one ^ t)
    assert H.tau(one ^ t) == xinv
    assert H.tau(w) == O.mul(O.mul(xinv, xinv), w)
    assert H.delta(t) == T2.pure(t, t) ^ T2.pure(t, one) ^ T2.pure(one, t)


def test_gl11_coincides_with_gm():
    G, M = build_gl(0, 1, 4), build_gm(4)
    assert G.T2.pairs == M.T2.pairs
    assert G.coproduct == M.coproduct
    assert G.antipode == M.antipode
    assert G.algebra.labels == ("1", "t11", "w11", "t11^2", "t11*w11", "t11^3", "t11^2*w11")


@pytest.mark.parametrize("fam", GOOD)
@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_verify_hopf_passes(fam, N):
    antipode = "series" if fam == ("gl", 0, 2) and N == 5 else "closed"
    rep = verify_hopf(build(fam[0], fam[1], fam[2], N, antipode))
    assert rep.passed, rep


def test_gl_det_u_and_inverse_coproduct():
    for m, n in [(0, 1), (0, 2), (1, 1)]:
        H = build_gl(m, n, 4)
        O, T2 = H.algebra, H.T2
        det, u = H.extras["det"], H.extras["u"]
        assert O.mul(det, u) == O.unit == O.mul(u, det)
        assert T2.mul(H.delta(u), H.delta(det)) == T2.unit


def test_u_is_not_group_like():
    # Delta(u) = u (x) u fails in the twisted tensor product
    H = build_gl(0, 1, 4)
    rep = group_like_report(H, H.extras["u"])
    assert not rep.passed
    # whereas Delta(x) = x (x) x holds for x = 1 + t
    O = H.algebra
    assert group_like_report(H, O.unit ^ O.basis_vector("t11")).passed


def test_closed_antipode_is_inexact_from_degree_four():
    # (X.Adj.u - 1)^2 = w11 w12 w21 w22 for GL(2|2), so Adj.u.X.Adj.u
    # inverts X only modulo m^4
    assert verify_hopf(build_gl(0, 2, 4)).passed
    rep = verify_hopf(build_gl(0, 2, 5))
    assert not rep.passed
    assert {c["check"] for c in rep.counterexamples} <= {"antipode mu(tau(x)1)Delta=eta",
                                                         "antipode mu(1(x)tau)Delta=eta"}
    assert {c["a"] for c in rep.counterexamples} == {"t11", "t22"}
    assert verify_hopf(build_gl(0, 2, 5, antipode="series")).passed
    assert build_gl(0, 2, 4, "series").antipode == build_gl(0, 2, 4).antipode


def test_gl21_coproduct_does_not_commute_with_d():
    # with dx_12 = 0: d(Delta x_12) = w_11 (x) x_12 != 0 = Delta(d x_12)
    H = build_gl(1, 1, 3)
    O, T2 = H.algebra, H.T2
    t12 = O.basis_vector("t12")
    assert O.d(t12) == 0
    assert T2.d(H.delta(t12)) == T2.pure(O.basis_vector("w11"), t12)
    rep = verify_hopf(H)
    assert not rep.passed
    assert {c["check"] for c in rep.counterexamples} >= {"Delta commutes with d"}
    assert verify_hopf(build_gl(1, 1, 2)).passed


@pytest.mark.parametrize("fam", GOOD + [("gl", 1, 1)])
def test_filtrations(fam):
    H = build(fam[0], fam[1], fam[2], 4)
    for j in range(4):
        assert verify_delta_filtration(H, j).passed
    assert verify_gr_cocommutative(H).passed
    assert verify_filtrations(H).passed


def test_filtration_examples():
    assert verify_delta_filtration(build_ga(4), 1).passed
    assert verify_delta_filtration(build_gm(4), 2).passed
    assert verify_delta_filtration(build_gl(1, 1, 4), 1).passed
    assert omega_filtration_check(build_ga(4), 2, 1).passed
    assert omega_filtration_check(build_gm(4), 2, 2).passed
    assert omega_filtration_check(build_gl(1, 1, 4), 3, 1).passed
    with pytest.raises(ValueError):
        omega_filtration_check(build_ga(4), 3, 3)
    with pytest.raises(ValueError):
        verify_delta_filtration(build_ga(4), 4)


def test_fault_injection_antipode():
    H = build_ga(4)
    O = H.algebra
    x = O.basis_vector("x")
    bad = list(H.antipode)
    bad[x.bit_length() - 1] = x ^ O.mul(x, x)
    rep = verify_hopf(H.with_changes(antipode=bad))
    assert not rep.passed
    assert rep.first_failure().startswith("antipode")


def test_fault_injection_coproduct():
    H = build_gm(4)
    bad = list(H.coproduct)
    bad[3] ^= 1 << 1
    assert not verify_hopf(H.with_changes(coproduct=bad)).passed


def test_tau_commutes_with_d_on_generators():
    for fam in GOOD:
        H = build(fam[0], fam[1], fam[2], 4)
        O = H.algebra
        for i in O.cotangent_basis():
            assert H.tau(O.dvecs[i]) == O.d(H.antipode[i])


@pytest.mark.parametrize("group", ["ga", "gm"])
def test_underlying_group_scheme(group):
    H = build(group, 0, 1, 4)
    U = underlying_group_scheme(H)
    A = U.algebra
    assert A.dim == 4 and all(v == 0 for v in A.dvecs)
    assert descent_report(H).passed
    assert verify_hopf(U).passed
    for i in range(A.dim):
        for j in range(A.dim):
            assert A.basis_product(i, j) == A.basis_product(j, i)
    T2 = U.T2
    x = 1 << 1
    if group == "ga":
        assert U.delta(x) == T2.pure(x, A.unit) ^ T2.pure(A.unit, x)
    else:
        assert U.delta(x) == T2.pure(x, x) ^ T2.pure(x, A.unit) ^ T2.pure(A.unit, x)


@given(st.integers(0, 2 ** 20), st.integers(0, 2 ** 20))
def test_coproduct_multiplicative_on_random_elements(a, b):
    H = build_gl(0, 2, 3)
    O, T2 = H.algebra, H.T2
    # elements of m so that products stay faithful at N = 3
    a &= O.power_mask(1) & ~O.power_mask(2)
    b &= O.power_mask(1) & ~O.power_mask(2)
    assert H.delta(O.mul(a, b)) == T2.mul(H.delta(a), H.delta(b))


def test_build_rejects_bad_input():
    with pytest.raises(ValueError):
        build("sl", 0, 1, 4)
    with pytest.raises(ValueError):
        build_ga(1)

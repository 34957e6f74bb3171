import itertools

import pytest
from hypothesis import given, settings, strategies as st

from gl_tables import bracket_mismatches, expected_bracket, square_mismatches
from ver4.algebra import TableAlgebra
from ver4.dist_lie import (Derivation, DistAlgebra, RestrictedLie, braided_invariants,
                           commutator_beta, commutator_of_derivations, convolution,
                           derivation_from_tangent, derivation_report, end_algebra,
                           gamma2_generators, gamma2_span, lie_from_associative, lie_of_group,
                           phi2, right_invariant_derivations, verify_dist_identities,
                           verify_gamma2, verify_lie_axioms, verify_restricted_axioms,
                           verify_universality)
from ver4.f2 import BitMatrix, bits
from ver4.hopf import build, build_ga, build_gl, build_gm
from ver4.objects import Ver4Object, make_object, projective
from ver4.tangent import dual_d, dual_numbers, tangent_basis

GOOD = [("ga", 0, 1), ("gm", 0, 1), ("gl", 0, 1), ("gl", 0, 2)]


# ---------------------------------------------------------------- oracles


def product_oracle(H, phi, psi):
    """(phi psi)(a) = sum over Delta(a) = sum a1 (x) a2 of psi(a1) phi(a2)."""
    O = H.algebra
    out = 0
    for a in range(O.dim):
        val = 0
        for p, q in H.delta_pairs(a):
            val ^= (psi >> p & 1) & (phi >> q & 1)
        out |= val << a
    return out


def braid_oracle(O, r, s):
    """Dual braiding from the closed formula v (x) v' -> v' (x) v + dv' (x) dv."""
    out = {(s, r)}
    for q in bits(dual_d(O, 1 << s)):
        for p in bits(dual_d(O, 1 << r)):
            out ^= {(q, p)}
    return out


def beta_oracle(H, phi, psi):
    O = H.algebra
    out = 0
    for r in bits(phi):
        for s in bits(psi):
            out ^= product_oracle(H, 1 << r, 1 << s)
            for u, v in braid_oracle(O, r, s):
                out ^= product_oracle(H, 1 << u, 1 << v)
    return out


def functionals(D, k):
    """Strategy for an element of Dist_k."""
    basis = [b for b in D.basis if D.O.degrees[b] <= k]
    return st.sets(st.sampled_from(basis)).map(lambda S: sum(1 << i for i in S))


# ---------------------------------------------------------------- Dist


def test_dist_layers_and_unit():
    D = DistAlgebra(build_ga(4), 1)
    assert [D.label(v) for v in D.layer_basis(1)] == ["<1>", "<x>", "<w>"]
    assert len(D.layer_basis(0)) == 1
    eta = D.unit
    for phi in D.layer_basis(1):
        assert D.mul(eta, phi) == phi == D.mul(phi, eta)
        assert D.beta(eta, phi) == 0


def test_dist_errors():
    H = build_ga(4)
    with pytest.raises(ValueError, match="faithful range"):
        DistAlgebra(H, 4)
    with pytest.raises(ValueError):
        DistAlgebra(H, -1)
    D = DistAlgebra(H, 2)
    x2 = H.algebra.basis_vector("x^2")
    with pytest.raises(ValueError, match="layer overflow"):
        D.beta(x2, H.algebra.basis_vector("x"))
    with pytest.raises(ValueError):
        verify_dist_identities(D, 3)


def test_gm_square_of_e():
    H = build_gm(3)
    D = DistAlgebra(H, 2)
    e = H.algebra.basis_vector("t")
    ee = convolution(D, e, e)
    low = sum(1 << i for i in bits(ee) if H.algebra.degrees[i] <= 1)
    assert low == e


def test_small_commutators():
    H = build_gl(0, 1, 3)
    D = DistAlgebra(H, 2)
    O = H.algebra
    f, e = O.basis_vector("w11"), O.basis_vector("t11")
    assert commutator_beta(D, f, f) == e
    G = build_ga(3)
    DG = DistAlgebra(G, 2)
    assert DG.beta(G.algebra.basis_vector("x"), G.algebra.basis_vector("w")) == 0


@pytest.mark.parametrize("fam", GOOD + [("gl", 1, 1)])
def test_dual_braiding_matches_formula(fam):
    H = build(*fam, 3)
    D = DistAlgebra(H, 2)
    dg = H.algebra.degrees
    for r, s in itertools.product(D.basis, repeat=2):
        if dg[r] + dg[s] < H.N:
            assert D.braid(r, s) == braid_oracle(H.algebra, r, s)


@pytest.mark.parametrize("fam", GOOD + [("gl", 1, 1)])
def test_beta_three_ways(fam):
    H = build(*fam, 4)
    D = DistAlgebra(H, 3)
    dg = H.algebra.degrees
    for r, s in itertools.product(D.basis, repeat=2):
        if dg[r] + dg[s] <= 3:
            b = D.beta_basis(r, s)
            assert b == D.beta_direct(r, s) == beta_oracle(H, 1 << r, 1 << s)
            assert D.mul_basis(r, s) == product_oracle(H, 1 << r, 1 << s)


@pytest.mark.parametrize("fam", GOOD)
def test_dist_identities_good_families(fam):
    H = build(*fam, 4)
    assert verify_dist_identities(DistAlgebra(H, 3)).passed


def test_dist_identities_gl21_defect():
    rep = verify_dist_identities(DistAlgebra(build_gl(1, 1, 4), 3))
    assert rep.failed_checks == {"d is a derivation of the product": 16,
                                 "Poisson identity": 9, "associativity": 4}


@settings(max_examples=30)
@given(st.sampled_from(GOOD), st.data())
def test_poisson_and_jacobi_on_random_functionals(fam, data):
    # independent route: product and braiding from the oracles above
    H = build(*fam, 4)
    D = DistAlgebra(H, 3)
    phi = data.draw(functionals(D, 1))
    psi = data.draw(functionals(D, 1))
    chi = data.draw(functionals(D, 1))
    mu = lambda a, b: product_oracle(H, a, b)
    beta = lambda a, b: beta_oracle(H, a, b)

    def braid(a, b):
        out = set()
        for r in bits(a):
            for s in bits(b):
                out ^= braid_oracle(H.algebra, r, s)
        return out

    # Poisson: beta(phi, psi chi) = beta(phi, psi) chi + (braided psi) beta(phi, chi)
    rhs = mu(beta(phi, psi), chi)
    for u, v in braid(phi, psi):
        rhs ^= mu(1 << u, beta(1 << v, chi))
    assert beta(phi, mu(psi, chi)) == rhs
    # associativity and anticommutativity
    assert mu(mu(phi, psi), chi) == mu(phi, mu(psi, chi))
    anti = beta(phi, psi)
    for u, v in braid(phi, psi):
        anti ^= beta(1 << u, 1 << v)
    assert anti == 0
    # filtration drop
    if phi and psi:
        assert D.order(beta(phi, psi)) <= D.order(phi) + D.order(psi) - 1


# ---------------------------------------------------------------- Lie tables


def _table(L):
    return {(L.labels[i], L.labels[j]): L.format(L.br(1 << i, 1 << j))
            for i in range(L.dim) for j in range(L.dim)}


def test_lie_ga_gm_golden():
    for H, sq, ff in [(build_ga(3), "0", "0"), (build_gm(3), "e", "e")]:
        L = lie_of_group(H)
        assert L.labels == ("e", "f")
        assert L.d(0b10) == 0b01 and L.d(0b01) == 0
        table = _table(L)
        assert table.pop(("f", "f")) == ff
        assert set(table.values()) == {"0"}
        assert L.format(L.sq(0b01)) == sq
        with pytest.raises(ValueError, match="square undefined"):
            L.sq(0b10)


def test_gm_with_all_brackets_zero_is_not_restricted():
    # [f,f] = (df)^[2] = e^[2] = e is forced, so a zero [f,f] breaks (iv)
    L = lie_of_group(build_gm(3))
    zero = L.with_changes(bracket={k: 0 for k in L.bracket}, power=None)
    rep = verify_restricted_axioms(zero)
    assert {c["check"] for c in rep.counterexamples} == {"(iv) [x,x] = (dx)^[2]"}
    assert lie_of_group(build_gl(0, 1, 3)).bracket == L.bracket


@pytest.mark.parametrize("mn", [(0, 1), (1, 1), (0, 2), (2, 1)])
def test_lie_gl_computed_closed_forms(mn):
    m, n = mn
    L = lie_of_group(build_gl(m, n, 3))
    assert bracket_mismatches(L, expected_bracket(m, n)) == []
    assert square_mismatches(L, m, n) == []


def test_lie_gl_stated_forms_where_they_differ():
    # the stated e_jk term and the stated [f,f] split differ from the computed table
    assert bracket_mismatches(lie_of_group(build_gl(0, 2, 3)), expected_bracket(0, 2, ff="stated"))
    assert bracket_mismatches(lie_of_group(build_gl(1, 1, 3)), expected_bracket(1, 1, ee="stated"))
    # for n = 1 the stated [f,f] agrees
    L = lie_of_group(build_gl(1, 1, 3))
    assert bracket_mismatches(L, expected_bracket(1, 1, ff="stated")) == []


def test_lie_needs_n_3():
    with pytest.raises(ValueError):
        lie_of_group(build_ga(2))


@pytest.mark.parametrize("fam", GOOD)
def test_lie_axioms_good_families(fam):
    L = lie_of_group(build(*fam, 3))
    assert verify_lie_axioms(L).passed
    assert verify_restricted_axioms(L).passed


def test_lie_gl21_defect():
    L = lie_of_group(build_gl(1, 1, 3))
    failed = {c["check"] for c in verify_lie_axioms(L).counterexamples}
    assert "(i) d[x,y] = [dx,y] + [x,dy]" in failed
    assert "(ii) [y,x] = [x,y] + [dx,dy]" not in failed
    assert "(iii) Jacobi identity" not in failed
    assert verify_restricted_axioms(L).passed


@pytest.mark.parametrize("V", [projective(), make_object(1, 1), make_object(2, 0)])
def test_end_algebra_is_restricted(V):
    L = lie_from_associative(end_algebra(V), "End")
    assert verify_lie_axioms(L).passed
    assert verify_restricted_axioms(L).passed


def test_matrix_algebra_bracket_is_commutator():
    L = lie_from_associative(end_algebra(make_object(2, 0)))
    n = 2
    for a, b in itertools.product(range(4), repeat=2):
        i, j = divmod(a, n)
        k, l = divmod(b, n)
        want = 0
        if j == k:
            want ^= 1 << (i * n + l)
        if l == i:
            want ^= 1 << (k * n + j)
        assert L.br(1 << a, 1 << b) == want


def test_dual_numbers_bracket():
    E = dual_numbers()
    L = lie_from_associative(E)
    eps, deps = E.basis_vector("eps"), E.basis_vector("deps")
    assert L.br(eps, deps) == 0


def test_commutative_d0_is_abelian():
    A = TableAlgebra(["1", "a"], 0b01, [0, 0], lambda i, j: 1 << (i + j) if i + j < 2 else 0)
    L = lie_from_associative(A)
    assert all(v == 0 for v in L.bracket.values())
    assert L.sq(0b10) == 0 and L.sq(0b01) == 0b01


def test_abelian_trivial_lie():
    V = make_object(2, 0)
    L = RestrictedLie(V, {}, {0b01: 0, 0b10: 0})
    assert verify_lie_axioms(L).passed and verify_restricted_axioms(L).passed


def test_fault_injection_bracket_and_square():
    L = lie_of_group(build_gl(0, 1, 3))
    e, f = 0, 1
    bad = L.with_changes(bracket={**L.bracket, (e, f): L.bracket[(e, f)] ^ 0b01})
    rep = verify_lie_axioms(bad)
    assert not rep.passed
    assert rep.counterexamples[0]["check"].startswith("(ii)")
    assert {rep.counterexamples[0]["x"], rep.counterexamples[0]["y"]} == {"e11", "f11"}
    closed = L.closed_basis()[0]
    bad = L.with_changes(square={closed: L.square[closed] ^ closed}, power=None)
    assert not verify_restricted_axioms(bad).passed


def test_square_domain_errors():
    V = projective()
    with pytest.raises(ValueError):
        RestrictedLie(V, {}, {0b01: 0})  # x1 has dx1 = w1
    with pytest.raises(ValueError):
        RestrictedLie(make_object(1, 0), {}, {0b1: 0, 0b1 ^ 0: 0} | {0: 0})


# ---------------------------------------------------------------- Gamma^2


def _symmetric_tensors_brute(L):
    n = L.dim
    out = []
    for t in range(1 << (n * n)):
        s = 0
        for pos in bits(t):
            i, j = divmod(pos, n)
            s ^= 1 << (j * n + i)
            for q in bits(L.d(1 << j)):
                for p in bits(L.d(1 << i)):
                    s ^= 1 << (q * n + p)
        if s == t:
            out.append(t)
    return out


@pytest.mark.parametrize("name", ["ga", "gm", "P", "V21"])
def test_gamma2_against_exhaustive_invariants(name):
    if name in ("ga", "gm"):
        L = lie_of_group(build(name, 0, 1, 3))
    elif name == "P":
        L = RestrictedLie(projective(), {}, {0b10: 0})
    else:
        V = make_object(1, 1)
        L = RestrictedLie(V, {}, {v: 0 for v in (0b010, 0b100)})
    fixed = _symmetric_tensors_brute(L)
    dim = len(gamma2_span(L))
    assert 2 ** dim == len(fixed)
    assert len(braided_invariants(L)) == dim
    assert verify_gamma2(L).passed


def test_gamma2_ga_e_tensor_e():
    L = lie_of_group(build_ga(3))
    ee = 1 << (0 * L.dim + 0)
    assert any(t == ee for t, _ in gamma2_generators(L))
    assert phi2(L, ee) == 0
    Lm = lie_of_group(build_gm(3))
    assert phi2(Lm, ee) == 0b01
    with pytest.raises(ValueError):
        phi2(L, 1 << 1)  # e (x) f alone is not symmetric


def test_gamma2_closed_diagonal_is_bracket_zero():
    L = lie_of_group(build_gl(0, 2, 3))
    for x in L.closed_basis():
        t = 0
        for i in bits(x):
            for j in bits(x):
                t ^= 1 << (i * L.dim + j)
        assert phi2(L, t) == L.sq(x)
    assert verify_gamma2(L).passed


# ---------------------------------------------------------------- derivations


def test_derivation_examples():
    H = build_ga(4)
    O = H.algebra
    zero = derivation_from_tangent(H, 0)
    assert all(v == 0 for v in zero.images)
    tb = tangent_basis(H)
    F = derivation_from_tangent(H, tb[0])
    assert F(O.basis_vector("x")) == O.unit
    assert F(O.basis_vector("x^2")) == 0
    assert derivation_report(F).passed
    assert F.eta() == tb[0].values
    FF = commutator_of_derivations(F, F)
    dF = F.differential()
    assert FF.images == dF.compose(dF).images
    Z = Derivation(H, [0] * O.dim, H.N - 1)
    assert all(v == 0 for v in commutator_of_derivations(F, Z).images)


def test_gm_right_invariance():
    H = build_gm(4)
    for f in tangent_basis(H):
        assert derivation_report(derivation_from_tangent(H, f)).passed


def test_gl11_derivation_bracket_f_f():
    H = build_gl(0, 1, 4)
    O = H.algebra
    f = [t for t in tangent_basis(H) if t.values == O.basis_vector("w11")][0]
    F = derivation_from_tangent(H, f)
    br = commutator_of_derivations(F, F)
    assert br.eta() == O.basis_vector("t11")
    assert derivation_report(br).passed


@pytest.mark.parametrize("fam", GOOD)
@pytest.mark.parametrize("N", [3, 4])
def test_universality_good(fam, N):
    H = build(*fam, N)
    rep = verify_universality(H)
    assert rep.passed, rep.first_failure()
    assert rep.info["derivations"] == rep.info["tangent"] == len(tangent_basis(H))


def test_universality_gl21():
    assert verify_universality(build_gl(1, 1, 3)).passed
    rep = verify_universality(build_gl(1, 1, 4))
    assert not rep.passed
    assert (rep.info["derivations"], rep.info["tangent"]) == (2, 5)


def test_universality_needs_n_3():
    with pytest.raises(ValueError):
        verify_universality(build_ga(2))


def test_solved_derivations_are_derivations():
    H = build_gm(4)
    sols = right_invariant_derivations(H)
    assert len(sols) == 2
    for F in sols:
        assert derivation_report(F).passed

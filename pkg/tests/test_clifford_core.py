from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bvlab import clifford_core as cc
from bvlab.errors import UnsupportedPattern

from conftest import seeds


def test_gamma_trace_orthogonality():
    g = cc.build_gamma_set()
    gram = np.einsum("kab,lba->kl", g.plus, g.minus)
    assert np.allclose(gram, 4 * np.eye(6), atol=1e-14)


def test_dual_gamma_is_adjoint():
    g = cc.build_gamma_set()
    assert np.allclose(g.minus, g.plus.conj().transpose(0, 2, 1), atol=1e-15)


def test_gamma_plus_antisymmetric():
    g = cc.build_gamma_set()
    assert np.allclose(g.plus, -g.plus.transpose(0, 2, 1))


def test_paravector_anticommutator(basis):
    c = basis.para[2:]
    for k in range(4):
        for l in range(4):
            anti = c[k] @ c[l] + c[l] @ c[k]
            assert np.allclose(anti, -2 * (k == l) * np.eye(4), atol=1e-13)


def test_c0_is_minus_identity(basis):
    assert np.allclose(basis.c(0), -np.eye(4))


def test_hurwitz_radon(basis):
    assert cc.hurwitz_radon_residual(basis) <= 1e-13


def test_fermion_operators_from_paravectors(basis):
    for k in (1, 2):
        a = 0.5 * (basis.c(2 * k) - 1j * basis.c(2 * k - 1))
        assert np.allclose(a, basis.a[k - 1], atol=1e-14)


def test_car(basis):
    a, ad = basis.a, basis.adag
    I = np.eye(4)
    for k in range(2):
        for l in range(2):
            assert np.allclose(ad[k] @ a[l] + a[l] @ ad[k], (k == l) * I)
            assert np.allclose(a[k] @ a[l] + a[l] @ a[k], 0)


def test_vacuum(basis):
    assert np.allclose(basis.a @ basis.vacuum, 0)
    assert np.isclose(np.linalg.norm(basis.vacuum), 1)


def test_fock_states_orthonormal(basis):
    S = np.stack(list(cc.fock_states(basis).values()))
    assert np.allclose(S.conj() @ S.T, np.eye(4))


def test_basis_is_immutable(basis):
    with pytest.raises(ValueError):
        basis.bip[0, 0, 0] = 1.0


def test_biparavectors_square_to_minus_one(basis):
    for M in basis.bip:
        assert np.allclose(M @ M, -np.eye(4), atol=1e-13)
        assert np.allclose(M.conj().T, -M)


def test_biparavector_trace_orthogonality(basis):
    G = np.einsum("mab,nab->mn", basis.bip.conj(), basis.bip)
    assert np.allclose(G, 4 * np.eye(15))
    assert np.allclose(np.einsum("maa->m", basis.bip), 0)


def test_cb_antisymmetric_extension(basis):
    assert np.allclose(basis.cb(2, 1), -basis.cb(1, 2))
    assert np.allclose(basis.cb(3, 3), 0)


def test_bip_definition(basis):
    # ĉ_(m,n) = ½(ĉ_m† ĉ_n − ĉ_n† ĉ_m)
    for m, n in cc.BIP_PAIRS:
        cm, cn = basis.c(m), basis.c(n)
        ref = 0.5 * (cm.conj().T @ cn - cn.conj().T @ cm)
        assert np.allclose(basis.cb(m, n), ref, atol=1e-14)


@given(seeds)
def test_expansion_reconstructs_any_matrix(seed):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    t0, t = cc.bip_coefficients(X)
    assert np.allclose(cc.from_bip_coefficients(t0, t), X, atol=1e-12)


def test_product_structure(basis):
    assert cc.product_structure_residual(basis) <= 1e-12


def test_product_structure_single_pair(basis):
    s, coeffs = cc.bip_product_structure((1, 2), (3, 4))
    rhs = s * np.eye(4) + np.einsum("m,mab->ab", coeffs, basis.bip)
    assert np.allclose(basis.cb(1, 2) @ basis.cb(3, 4), rhs)


def test_commutator_and_anticommutator_structure(basis):
    rng = np.random.default_rng(1)
    for P, Q in rng.integers(0, 15, size=(20, 2)):
        comm = cc.bip_commutator_structure(P, Q)
        s, anti = cc.bip_anticommutator_structure(P, Q)
        A, B = basis.bip[P], basis.bip[Q]
        assert np.allclose(A @ B - B @ A, np.einsum("m,mab->ab", comm, basis.bip))
        assert np.allclose(A @ B + B @ A, s * np.eye(4) + np.einsum("m,mab->ab", anti, basis.bip))


def test_pentade(basis):
    assert cc.pentade_residual(basis) <= 1e-12


def test_pauli_identity(basis):
    assert cc.pauli_identity_residual(basis) <= 1e-12


def test_levi_civita_normalization():
    e = cc.levi_civita(6)
    assert e[0, 1, 2, 3, 4, 5] == 1
    assert e[1, 0, 2, 3, 4, 5] == -1
    assert np.count_nonzero(e) == 720


def test_bip_vector_roundtrip(rng):
    v = rng.normal(size=15)
    assert np.allclose(cc.bip_vector(cc.antisym_from_bip(v)), v)


def test_monomial_coefficients_roundtrip(rng):
    t = rng.normal(size=15) + 1j * rng.normal(size=15)
    g = cc.monomial_coefficients(t)
    assert [len(g[k]) for k in (1, 2, 3, 4)] == [4, 6, 4, 1]
    assert np.allclose(cc.bip_from_monomial_coefficients(g), t)


def test_monomial_coefficients_against_matrices(basis):
    # grade-1 part of ĉ_(0,m) is −c_m
    t = np.zeros(15)
    t[cc.bip_position(0, 3)] = 1.0
    g = cc.monomial_coefficients(t)
    assert np.allclose(g[1], [0, 0, -1, 0])
    assert np.allclose(basis.cb(0, 3), -basis.c(3))


def test_fermion_monomials(basis):
    mons = cc.fermion_monomials(basis)
    assert len(mons) == 16
    n1 = basis.adag[0] @ basis.a[0]
    assert np.allclose(mons["1|1"], n1)
    assert np.allclose(mons["1,2|1,2"], basis.adag[0] @ basis.adag[1] @ basis.a[0] @ basis.a[1])
    M = np.stack([m.reshape(16) for m in mons.values()])
    assert np.linalg.matrix_rank(M) == 16


@pytest.mark.parametrize("variant", ["symmetric", "gamma"])
def test_quaternion_pair(basis, variant):
    q = cc.quaternion_pair(basis, variant)
    I = np.eye(4)
    for triple in (q.set1, q.set2):
        i, j, k = triple
        for x in triple:
            assert np.allclose(x @ x, -I, atol=1e-13)
        assert np.allclose(i @ j, k, atol=1e-13)
        assert np.allclose(j @ k, i, atol=1e-13)
        assert np.allclose(k @ i, j, atol=1e-13)
    for x, y in product(q.set1, q.set2):
        assert np.allclose(x @ y, y @ x, atol=1e-13)


def test_quaternion_pair_examples(basis):
    c = basis.c
    sym = cc.quaternion_pair(basis, "symmetric")
    assert np.allclose(sym.set1[2], c(1) @ c(2))
    gam = cc.quaternion_pair(basis, "gamma")
    assert np.any(np.abs(gam.set1[0]) > 0)


def test_quaternion_unknown_variant(basis):
    with pytest.raises(ValueError):
        cc.quaternion_pair(basis, "other")


def test_closed_trace_examples():
    assert cc.closed_trace([3, 3]) == 4
    assert cc.closed_trace([1, 2]) == 0
    assert np.isclose(cc.closed_trace([1, 1, 2, 2]), 4)
    assert np.isclose(cc.closed_trace([-1, 0, 1, 2, 3, 4]), 4j)


@given(st.integers(0, 3), st.lists(st.integers(-1, 4), min_size=6, max_size=6), st.booleans())
def test_closed_trace_matches_matrix_trace(n_pairs, idx, start_dagger):
    length = [0, 2, 4, 6][n_pairs]
    idx = idx[:length]
    daggers = [(i % 2 == 0) == start_dagger for i in range(length)]
    assert np.isclose(cc.closed_trace(idx, daggers), cc.direct_trace(idx, daggers), atol=1e-12)


@given(st.lists(st.integers(-1, 4), min_size=1, max_size=5).filter(lambda x: len(x) % 2))
def test_closed_trace_odd_lengths(idx):
    assert np.isclose(cc.closed_trace(idx), cc.direct_trace(idx), atol=1e-12)


def test_closed_trace_random_sample(rng):
    worst = 0.0
    for _ in range(1000):
        n = rng.choice([2, 4, 6])
        idx = list(rng.integers(-1, 5, size=n))
        worst = max(worst, abs(cc.closed_trace(idx) - cc.direct_trace(idx)))
    assert worst <= 1e-12


def test_closed_trace_rejects_bad_patterns():
    with pytest.raises(UnsupportedPattern):
        cc.closed_trace([1, 2], [True, True])
    with pytest.raises(UnsupportedPattern):
        cc.closed_trace([1] * 8)
    with pytest.raises(UnsupportedPattern):
        cc.closed_trace([7, 1])

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bvlab import clifford_core as cc
from bvlab import exterior_algebra as ea
from bvlab import group_maps as gm
from bvlab import hamiltonian_lab as hl
from bvlab.errors import NotAntisymmetric, NotHermitian

from conftest import seeds


def swap_unitary(basis):
    f = cc.fock_states(basis)
    P = (np.outer(f[(0, 0)], f[(0, 0)].conj()) + np.outer(f[(0, 1)], f[(1, 0)].conj())
         + np.outer(f[(1, 0)], f[(0, 1)].conj()) - np.outer(f[(1, 1)], f[(1, 1)].conj()))
    return P


def test_label_helpers():
    assert hl.adjoint_label("1|0") == ("0|1", 1)
    assert hl.adjoint_label("1,2|0") == ("0|1,2", -1)
    assert hl.adjoint_label("1,2|1") == ("1|1,2", -1)
    assert hl.exchange_label("1|1") == ("2|2", 1)
    assert hl.exchange_label("1,2|0") == ("1,2|0", -1)


def test_hermiticity_relations():
    rel = hl.hermiticity_relations()
    assert len(rel) == 10
    assert sum(lab == partner for lab, partner, _ in rel) == 4


@given(seeds)
def test_random_hamiltonian_is_hermitian(seed):
    h = hl.random_hamiltonian(np.random.default_rng(seed))
    ok, res = hl.validate_hermiticity(h)
    assert ok and max(res.values()) == 0
    H = hl.hamiltonian_matrix(h)
    assert np.allclose(H, H.conj().T)


def test_hermiticity_violation():
    h = hl.HamiltonianCoeffs.from_dict({"1,2|0": 1.0})
    ok, res = hl.validate_hermiticity(h)
    assert not ok
    assert res["h[1,2|0] = -conj h[0|1,2]"] == 1.0
    with pytest.raises(NotHermitian):
        hl.hamiltonian_matrix(h)
    with pytest.raises(NotHermitian):
        hl.quasiparticle_form({"1|1": 1j})


def test_from_dict_rejects_unknown_label():
    with pytest.raises(KeyError):
        hl.HamiltonianCoeffs.from_dict({"3|3": 1.0})


def test_json_roundtrip(rng):
    h = hl.random_hamiltonian(rng)
    back = hl.HamiltonianCoeffs.from_json(h.to_json())
    assert np.allclose(back.values, h.values)
    assert hl.HamiltonianCoeffs.from_json({"1|1": 2.0})["1|1"] == 2.0


def test_exchange_matches_swap_unitary(rng, basis):
    h = hl.random_hamiltonian(rng)
    P = swap_unitary(basis)
    assert np.allclose(P @ basis.a[0] @ P.conj().T, basis.a[1])
    H = hl.hamiltonian_matrix(h, basis)
    assert np.allclose(hl.hamiltonian_matrix(h.exchanged(), basis), P @ H @ P.conj().T)
    assert np.allclose(h.exchanged().exchanged().values, h.values)
    s = h.symmetrized()
    assert np.allclose(s.exchanged().values, s.values)


def test_trace_offset(rng):
    h = hl.random_hamiltonian(rng)
    assert np.isclose(hl.trace_offset(h), np.trace(hl.hamiltonian_matrix(h)).real / 4)


@given(seeds)
def test_y_matrix_routes_agree(seed):
    h = hl.random_hamiltonian(np.random.default_rng(seed))
    Y, c0 = hl.y_matrix(h)
    Yp, cp, imag = hl.y_from_matrix(hl.hamiltonian_matrix(h))
    assert np.allclose(Y, -Y.T)
    assert np.allclose(Y, Yp, atol=1e-13)
    assert np.isclose(c0, cp) and imag <= 1e-13
    assert np.allclose(hl.biparavector_form(Y, c0), hl.hamiltonian_matrix(h))


def test_free_hamiltonian():
    w1, w2 = 1.5, 0.7
    q = hl.quasiparticle_form({"1|1": w1, "2|2": w2})
    sd = q.spectral
    assert np.allclose(sd.nu, [0, w1, w2])
    assert sd.separable and sd.rank == 2 and not sd.degenerate
    assert np.allclose(sd.L, np.eye(6))
    assert np.allclose(sd.levels(), [0, w2, w1, w1 + w2])


def test_pure_interaction():
    g = 0.8
    h = {"1,2|1,2": g}
    Y, _ = hl.y_matrix(h)
    assert np.isclose(Y[0, 1], -g / 2)
    assert np.isclose(Y[2, 3], -g / 2) and np.isclose(Y[4, 5], -g / 2)
    q = hl.quasiparticle_form(h)
    assert np.allclose(np.abs(q.spectral.nu), g / 2)
    assert not q.spectral.separable
    assert q.residuals["spectrum"] <= 1e-12


def test_quadratic_hamiltonian_is_separable(rng):
    d = {}
    for lab in ("1|1", "2|2"):
        d[lab] = rng.normal()
    z = complex(rng.normal(), rng.normal())
    d["1|2"], d["2|1"] = z, np.conj(z)
    p = complex(rng.normal(), rng.normal())
    d["1,2|0"], d["0|1,2"] = p, -np.conj(p)
    q = hl.quasiparticle_form(d)
    assert q.spectral.separable
    assert np.allclose(q.stated_levels(), np.linalg.eigvalsh(hl.hamiltonian_matrix(d)))


@given(seeds)
def test_block_diagonalization(seed):
    h = hl.random_hamiltonian(np.random.default_rng(seed))
    Y, c0 = hl.y_matrix(h)
    sd = hl.block_diagonalize(Y, c0)
    assert np.allclose(sd.L @ sd.L.T, np.eye(6))
    assert np.isclose(np.linalg.det(sd.L), 1)
    assert np.allclose(sd.L @ Y @ sd.L.T, sd.Z, atol=1e-10)
    assert np.allclose(sd.Z, hl.block_form(sd.nu))
    assert sd.nu[1] >= 0 and sd.nu[2] >= 0
    assert np.sign(sd.nu[0]) == np.sign(ea.pfaffian(Y)) or abs(sd.nu[0]) < 1e-9
    assert max(sd.residuals.values()) <= 1e-10


def test_block_diagonalize_rejects_bad_input(rng):
    with pytest.raises(NotAntisymmetric):
        hl.block_diagonalize(rng.normal(size=(6, 6)))


def test_block_diagonalize_degenerate(rng):
    L = gm.random_so6(rng)
    Z = hl.block_form((0.4, 1.0, 1.0))
    sd = hl.block_diagonalize(L.T @ Z @ L)
    # the interaction slot may take either member of the equal pair
    assert sd.degenerate == bool(abs(sd.nu[1] - sd.nu[2]) <= 1e-9)
    assert np.allclose(np.sort(np.abs(sd.nu)), [0.4, 1.0, 1.0])
    assert np.allclose(sd.L @ (L.T @ Z @ L) @ sd.L.T, sd.Z, atol=1e-10)


def test_block_diagonalize_zero():
    sd = hl.block_diagonalize(np.zeros((6, 6)), 2.0)
    assert sd.rank == 0 and sd.separable
    assert np.allclose(sd.levels(), 2.0)


@given(seeds)
def test_spectrum_preservation(seed):
    h = hl.random_hamiltonian(np.random.default_rng(seed))
    q = hl.quasiparticle_form(h)
    evals = np.linalg.eigvalsh(hl.hamiltonian_matrix(h))
    radius = max(1.0, np.max(np.abs(evals)))
    assert np.max(np.abs(q.spectral.levels() - evals)) / radius <= 1e-9
    assert q.residuals["normal_form"] <= 1e-9
    assert q.residuals["conjugation"] <= 1e-9
    assert q.residuals["trace_free"] <= 1e-12


@given(seeds)
def test_quasiparticles_are_fermions(seed):
    q = hl.quasiparticle_form(hl.random_hamiltonian(np.random.default_rng(seed)))
    b1, b2 = q.b
    I = np.eye(4)
    assert np.allclose(b1 @ b1.conj().T + b1.conj().T @ b1, I)
    assert np.allclose(b1 @ b2 + b2 @ b1, 0, atol=1e-12)
    assert np.allclose(b1 @ b2.conj().T + b2.conj().T @ b1, 0, atol=1e-12)


def test_number_coefficients(rng):
    h = hl.random_hamiltonian(rng)
    q = hl.quasiparticle_form(h)
    n10, n12, n34 = q.spectral.nu
    c = q.number_coefficients
    assert np.isclose(c["N1"], n12 - n10) and np.isclose(c["N2"], n34 - n10)
    assert np.isclose(c["N1N2"], 2 * n10)
    assert np.isclose(c["1"], q.spectral.normal_constant)
    assert np.allclose(hl.normal_form_matrix(q.spectral, q.b), hl.hamiltonian_matrix(h), atol=1e-9)


def test_stated_levels_coincide_only_without_interaction(rng):
    q = hl.quasiparticle_form(hl.random_hamiltonian(rng))
    true = q.spectral.levels()
    assert not np.allclose(q.stated_levels(), true)
    free = hl.quasiparticle_form({"1|1": 0.3, "2|2": 1.2, "0|0": -0.5})
    assert np.allclose(free.stated_levels(), free.spectral.levels())


@given(seeds)
def test_characteristic_cubic(seed):
    h = hl.random_hamiltonian(np.random.default_rng(seed))
    Y, _ = hl.y_matrix(h)
    ci = hl.characteristic_invariants(Y)
    nu2 = np.sort(np.abs(np.linalg.eigvals(Y)) ** 2)[::2]
    assert np.max(np.abs(np.sort(-ci.roots) - nu2)) <= 1e-9 * max(1.0, nu2.max())
    assert np.isclose(ci.det, np.linalg.det(Y))
    assert np.isclose(ci.pf, ea.pfaffian(Y))


@given(seeds, st.floats(0.1, 2.0), st.floats(0.0, 2.0))
def test_degenerate_pair(seed, nu, n10):
    L = gm.random_so6(np.random.default_rng(seed))
    Y = L.T @ hl.block_form((n10, nu, nu)) @ L
    ci = hl.characteristic_invariants(Y)
    assert ci.degenerate_pair is not None
    nu2, n102 = ci.degenerate_pair
    assert np.isclose(nu2, nu ** 2, atol=1e-6) and np.isclose(n102, n10 ** 2, atol=1e-6)
    assert np.allclose(np.sort(-ci.roots), np.sort([n10 ** 2, nu ** 2, nu ** 2]), atol=1e-6)


def test_cubic_triple_root():
    Y = hl.block_form((1.0, 1.0, 1.0))
    ci = hl.characteristic_invariants(Y)
    assert np.allclose(ci.roots, -1.0)


@given(seeds)
def test_invariant_identities(seed):
    h = hl.random_hamiltonian(np.random.default_rng(seed))
    sd = hl.quasiparticle_form(h).spectral
    assert max(hl.invariant_identities(sd).values()) <= 1e-10


def test_mode_exchange_without_mixing(rng):
    for _ in range(20):
        w, g, e = rng.normal(size=3)
        h = {"0|0": e, "1|1": w, "2|2": w, "1,2|1,2": g}
        sd = hl.quasiparticle_form(h).spectral
        assert abs(sd.nu[1] - sd.nu[2]) <= 1e-9
        assert sd.degenerate


def test_spectral_json(rng):
    sd = hl.quasiparticle_form(hl.random_hamiltonian(rng)).spectral
    js = sd.to_json()
    assert set(js["nu"]) == {"(-1,0)", "(1,2)", "(3,4)"}
    assert np.allclose(js["levels"], sd.levels())

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from bvlab import hamiltonian_lab as hl
from bvlab import spin_maps as sm

from conftest import seeds

VARIANTS = sm.SPIN_HALF_VARIANTS


def fermions(basis):
    return (basis.a[0], basis.adag[0], basis.a[1], basis.adag[1])


@pytest.mark.parametrize("variant", VARIANTS)
def test_spin_half_algebra(basis, variant):
    s = sm.jw_spin_half(basis, variant)
    r = sm.spin_half_residuals(s)
    assert r["su2"] <= 1e-13 and r["site_commutation"] <= 1e-13 and r["z_squared"] <= 1e-13
    for k in range(2):
        assert np.allclose(s.minus[k], s.plus[k].conj().T)
        assert np.allclose(s.plus[k] @ s.plus[k], 0)


def test_spin_half_hole_forms(basis):
    s = sm.jw_spin_half(basis, "hole")
    n1, n2 = basis.number
    I = np.eye(4)
    assert np.allclose(s.z[0], 0.5 * I - n1)
    assert np.allclose(s.plus[0], (1j / np.sqrt(2)) * basis.a[0] @ ((1 + 1j) * I - 2 * n2))
    # the raising operator removes a particle
    assert np.allclose(s.plus[0] @ basis.vacuum, 0)


def test_spin_half_particle_forms(basis):
    s = sm.jw_spin_half(basis, "particle")
    n1, n2 = basis.number
    I = np.eye(4)
    assert np.allclose(s.z[1], n2 - 0.5 * I)
    assert np.allclose(s.plus[1], basis.adag[1] @ (I - (1 - 1j) * n1))


def test_unknown_variant(basis):
    with pytest.raises(ValueError):
        sm.jw_spin_half(basis, "other")


@pytest.mark.parametrize("variant", VARIANTS)
def test_spin_half_roundtrip(basis, variant):
    back = sm.fermion_from_spin_half(sm.jw_spin_half(basis, variant))
    for x, y in zip(back, fermions(basis)):
        assert np.max(np.abs(x - y)) <= 1e-12


@pytest.mark.parametrize("variant", VARIANTS)
def test_spin_half_roundtrip_on_combinations(basis, variant, rng):
    back = np.stack(sm.fermion_from_spin_half(sm.jw_spin_half(basis, variant)))
    ref = np.stack(fermions(basis))
    c = rng.normal(size=(1000, 4)) + 1j * rng.normal(size=(1000, 4))
    diff = np.einsum("si,iab->sab", c, back - ref)
    assert np.max(np.abs(diff)) <= 1e-11


@given(seeds)
def test_spin_half_on_quasiparticles(seed):
    q = hl.quasiparticle_form(hl.random_hamiltonian(np.random.default_rng(seed)))
    for variant in VARIANTS:
        s = sm.jw_spin_half(variant=variant, fermions=q.b)
        assert max(sm.spin_half_residuals(s).values()) <= 1e-12
        ref = sm.jw_spin_half(variant=variant).conjugated(q.V)
        assert np.allclose(s.plus[0], ref.plus[0]) and np.allclose(s.z[1], ref.z[1])


def test_spin_three_half_forms(basis):
    J = sm.jw_spin_three_half(basis)
    n1, n2 = basis.number
    a1, c1, a2, c2 = fermions(basis)
    assert np.allclose(J.plus, np.sqrt(3) * c2 + 2 * c1 @ a2)
    assert np.allclose(J.minus, np.sqrt(3) * a2 + 2 * c2 @ a1)
    assert np.allclose(J.z, 2 * n1 + n2 - 1.5 * np.eye(4))
    assert np.allclose(np.linalg.eigvalsh(J.z), [-1.5, -0.5, 0.5, 1.5], atol=1e-12)


def test_spin_three_half_algebra(basis):
    r = sm.spin_three_half_residuals(sm.jw_spin_three_half(basis))
    assert r["su2"] <= 1e-12 and r["ladder"] <= 1e-12 and r["casimir"] <= 1e-12


def test_spin_three_half_roundtrip(basis, rng):
    back = np.stack(sm.fermion_from_spin_three_half(sm.jw_spin_three_half(basis)))
    ref = np.stack(fermions(basis))
    assert np.max(np.abs(back - ref)) <= 1e-12
    c = rng.normal(size=(1000, 4)) + 1j * rng.normal(size=(1000, 4))
    assert np.max(np.abs(np.einsum("si,iab->sab", c, back - ref))) <= 1e-11


def test_spin_three_half_inverse_example(basis):
    J = sm.jw_spin_three_half(basis)
    assert np.allclose(-J.plus @ J.z @ J.plus / np.sqrt(3), basis.adag[0])


@pytest.mark.parametrize("variant", VARIANTS)
def test_cross_map(basis, variant):
    spins = sm.jw_spin_half(basis, variant)
    J = sm.spin_three_half_from_spin_half(spins)
    assert max(sm.spin_three_half_residuals(J).values()) <= 1e-12
    ref = sm.jw_spin_three_half(basis)
    assert np.allclose(J.plus, ref.plus) and np.allclose(J.z, ref.z)


def test_spin_half_coefficients_examples():
    w, E = 0.9, -0.3
    c = sm.spin_half_coefficients((0.0, w, w), E, "hole")
    assert c == {"1": E, "T1z": -w, "T2z": -w, "T1zT2z": 0.0}
    g = 0.4
    assert sm.spin_half_coefficients((g, 0.0, 0.0), 0.0)["T1zT2z"] == 2 * g
    assert sm.spin_half_coefficients((0.0, w, w), E, "particle")["T1z"] == w


@given(seeds)
def test_spin_three_half_closed_form(seed):
    rng = np.random.default_rng(seed)
    nu, offset = tuple(rng.normal(size=3)), rng.normal()
    a = sm.spin_three_half_coefficients(nu, offset)
    b = sm.spin_three_half_closed_form(nu, offset)
    assert all(np.isclose(a[k], b[k]) for k in a)


@given(seeds)
def test_quasi_spin_forms_reproduce_hamiltonian(seed):
    h = hl.random_hamiltonian(np.random.default_rng(seed))
    q = hl.quasiparticle_form(h)
    H = hl.hamiltonian_matrix(h)
    for variant in VARIANTS:
        f = sm.quasi_spin_forms(q.spectral, q.V, H, variant=variant)
        assert f.residuals["spin_half_matrix"] <= 1e-9
        assert f.residuals["spin_three_half_matrix"] <= 1e-9
        assert f.residuals["closed_form"] <= 1e-12


def test_reference_tables_are_rational():
    for table in (sm.REFERENCE_SPIN_THREE_HALF,):
        for fr in table.values():
            assert all(isinstance(x, Fraction) for x in fr)
    assert set(sm.REFERENCE_SPIN_HALF) == {"T1z", "T2z", "T1zT2z"}


def test_reference_discrepancy_vanishes_without_interaction(rng):
    q = hl.quasiparticle_form({"1|1": 0.8, "2|2": 0.8})
    f = sm.quasi_spin_forms(q.spectral, q.V)
    assert f.reference_discrepancy()["spin_half"] <= 1e-12
    q = hl.quasiparticle_form(hl.random_hamiltonian(rng))
    d = sm.quasi_spin_forms(q.spectral, q.V).reference_discrepancy()
    assert d["spin_three_half"] > 1e-3

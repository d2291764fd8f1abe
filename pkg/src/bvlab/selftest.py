"""A quick, seeded battery of identity checks across the whole library.

Each check is a named residual with its own tolerance; :func:`run_selftest`
returns them all so the command-line front end can report and gate on
them.  Sample sizes are small — the test suite does the heavy lifting.
"""

from dataclasses import dataclass

import numpy as np

from . import bv_transform as bv
from . import clifford_core as cc
from . import exterior_algebra as ea
from . import group_maps as gm
from . import hamiltonian_lab as hl
from . import spin_maps as sm


@dataclass
class Check:
    tag: str
    residual: float
    tol: float

    @property
    def passed(self):
        return bool(np.isfinite(self.residual) and self.residual <= self.tol)

    def as_dict(self):
        return {"tag": self.tag, "residual": float(self.residual),
                "tol": float(self.tol), "passed": self.passed}


def _generic_so6(rng, min_det=0.05):
    while True:
        L = gm.random_so6(rng)
        if ea.determinant(np.eye(6) + L) > min_det and abs(L[1, 1]) > 0.1:
            return L


def _clifford_checks(b):
    g = b.gamma
    gram = np.einsum("kab,lba->kl", g.plus, g.minus)
    anti = np.einsum("kab,lbc->klac", b.para[2:], b.para[2:])
    anti = anti + anti.transpose(1, 0, 2, 3)
    target = -2.0 * np.einsum("kl,ac->klac", np.eye(4), np.eye(4))
    return [
        Check("gamma_trace_orthogonality", float(np.max(np.abs(gram - 4 * np.eye(6)))), 1e-14),
        Check("clifford_anticommutator", float(np.max(np.abs(anti - target))), 1e-13),
        Check("hurwitz_radon", cc.hurwitz_radon_residual(b), 1e-13),
        Check("biparavector_product_expansion", cc.product_structure_residual(b), 1e-12),
        Check("pentade", cc.pentade_residual(b), 1e-12),
        Check("pauli_completeness", cc.pauli_identity_residual(b), 1e-12),
    ]


def _exterior_checks(rng):
    pf_det = binet = laplace = 0.0
    for _ in range(20):
        T = gm.random_antisym(rng)
        pf_det = max(pf_det, abs(ea.pfaffian(T) ** 2 - ea.determinant(T))
                     / max(1.0, abs(ea.determinant(T))))
        M, N = rng.normal(size=(6, 6)), rng.normal(size=(6, 6))
        for k in (2, 3):
            lhs, rhs = ea.compound(M @ N, k), ea.compound(M, k) @ ea.compound(N, k)
            binet = max(binet, np.max(np.abs(lhs - rhs)) / max(1.0, np.max(np.abs(lhs))))
            lap = ea.compound(M, k) @ ea.supplementary_compound(M, k)
            d = ea.determinant(M)
            laplace = max(laplace, np.max(np.abs(lap - d * np.eye(len(lap)))) / max(1.0, abs(d)))
    return [
        Check("pfaffian_squared_is_det", pf_det, 1e-10),
        Check("binet_cauchy", binet, 1e-9),
        Check("laplace_expansion", laplace, 1e-9),
    ]


def _group_checks(rng, b):
    cover = cycle = chi = lift = ostl = 0.0
    for _ in range(10):
        U = gm.random_su4(rng)
        L = gm.so6_from_su4(U)
        cover = max(cover, np.max(np.abs(gm.adjoint_rep(U) - ea.compound(L.T, 2))),
                    np.max(np.abs(gm.so6_from_su4(-U) - L)))
        lift = max(lift, np.max(np.abs(gm.so6_from_su4(gm.su4_from_L(L)) - L)))
        X, Y = gm.random_su4(rng), gm.random_su4(rng)
        ostl = max(ostl, np.max(np.abs(gm.ostlund_matrix(X) @ gm.ostlund_matrix(Y)
                                       - gm.ostlund_matrix(X @ Y))))
    for _ in range(10):
        L = _generic_so6(rng)
        A = gm.cayley_A_from_L(L)
        p = gm.su4_from_A(A)
        U = gm.matrix_from_params(p)
        cycle = max(cycle, np.max(np.abs(gm.so6_from_su4(U) - L)))
        C = gm.chi_from_L(L)
        Lr = gm.L_from_chi(C)
        sign = 1.0 if L[1, 1] > 0 else -1.0
        chi = max(chi, np.max(np.abs(Lr - sign * L)))
    return [
        Check("double_cover_adjoint_compound", cover, 1e-10),
        Check("so6_lift_roundtrip", lift, 1e-9),
        Check("cayley_cycle_closure", cycle, 1e-9),
        Check("chi_inversion", chi, 1e-8),
        Check("ostlund_homomorphism", ostl, 1e-11),
    ]


def _bv_checks(rng, b):
    car = solve = one = 0.0
    for _ in range(5):
        L = gm.random_so6(rng)
        lam = bv.lambda_from_L(L)
        rep = bv.verify_car(bv.chi_tensors_from_kappa(bv.kappa_from_lambda(lam)), b)
        car = max(car, rep.matrix_residual, rep.scalar_residual)
        Lr = bv.so6_from_lambda(lam)
        solve = max(solve, min(np.max(np.abs(Lr - L)), np.max(np.abs(Lr + L))))
    for _ in range(5):
        x = rng.normal(size=2) + 1j * rng.normal(size=2)
        x /= np.linalg.norm(x)
        triple = (x[0] ** 2, -x[1] ** 2, 2 * x[0] * x[1])
        lam, _ = bv.one_mode_embedding(triple)
        ref = bv.one_mode_partner(triple)
        m2 = lam.mode(2)
        one = max(one, max(abs(m2[k] - ref.get(k, 0.0)) for k in m2))
    return [
        Check("car_preservation", car, 1e-11),
        Check("structural_solve", solve, 1e-8),
        Check("one_mode_partner", one, 1e-12),
    ]


def _hamiltonian_checks(rng, b):
    spectrum = cubic = forms = 0.0
    for _ in range(10):
        h = hl.random_hamiltonian(rng)
        q = hl.quasiparticle_form(h, b)
        spectrum = max(spectrum, q.residuals["spectrum"], q.residuals["normal_form"])
        Y, _ = hl.y_matrix(h)
        ci = hl.characteristic_invariants(Y)
        nu2 = np.sort(q.spectral.nu ** 2)
        cubic = max(cubic, np.max(np.abs(np.sort(-ci.roots) - nu2)) / max(1.0, nu2.max()))
        H = hl.hamiltonian_matrix(h, b)
        f = sm.quasi_spin_forms(q.spectral, q.V, H, b)
        forms = max(forms, f.residuals["spin_half_matrix"], f.residuals["spin_three_half_matrix"])
    return [
        Check("normal_form_spectrum", spectrum, 1e-9),
        Check("characteristic_cubic", cubic, 1e-9),
        Check("quasi_spin_forms", forms, 1e-9),
    ]


def _spin_checks(b):
    out = []
    for v in sm.SPIN_HALF_VARIANTS:
        s = sm.jw_spin_half(b, v)
        r = sm.spin_half_residuals(s)
        ferm = sm.fermion_from_spin_half(s)
        rt = max(np.max(np.abs(x - y)) for x, y in
                 zip(ferm, (b.a[0], b.adag[0], b.a[1], b.adag[1])))
        out += [Check(f"spin_half_su2_{v}", max(r["su2"], r["site_commutation"]), 1e-13),
                Check(f"spin_half_roundtrip_{v}", float(rt), 1e-12)]
    J = sm.jw_spin_three_half(b)
    r = sm.spin_three_half_residuals(J)
    ferm = sm.fermion_from_spin_three_half(J)
    rt = max(np.max(np.abs(x - y)) for x, y in
             zip(ferm, (b.a[0], b.adag[0], b.a[1], b.adag[1])))
    out += [Check("spin_three_half_algebra", max(r.values()), 1e-12),
            Check("spin_three_half_roundtrip", float(rt), 1e-12)]
    return out


def run_selftest(seed=0):
    """Run every check; returns a list of :class:`Check`."""
    rng = np.random.default_rng(seed)
    b = cc.default_basis()
    checks = []
    checks += _clifford_checks(b)
    checks += _exterior_checks(rng)
    checks += _group_checks(rng, b)
    checks += _bv_checks(rng, b)
    checks += _hamiltonian_checks(rng, b)
    checks += _spin_checks(b)
    return checks

"""Bring a random two-mode Hamiltonian to quasi-particle normal form.

Run with ``python3 demos/diagonalize_hamiltonian.py``.
"""

import numpy as np

from bvlab import hamiltonian_lab as hl
from bvlab import spin_maps as sm
from bvlab.clifford_core import default_basis


def main(seed=7):
    rng = np.random.default_rng(seed)
    b = default_basis()
    h = hl.random_hamiltonian(rng)
    H = hl.hamiltonian_matrix(h, b)

    # the antisymmetric 6x6 matrix Y carries everything but the trace
    Y, c0 = hl.y_matrix(h)
    q = hl.quasiparticle_form(h, b)
    nu10, nu12, nu34 = q.spectral.nu
    print(f"trace offset c0       = {c0:+.6f}")
    print(f"nu(-1,0), nu12, nu34  = {nu10:+.6f} {nu12:+.6f} {nu34:+.6f}")
    print("normal form coefficients:")
    for k, v in q.number_coefficients.items():
        print(f"  {k:5s} {v:+.6f}")

    ev = np.linalg.eigvalsh(H)
    print("eigensolver levels    =", np.round(ev, 6))
    print("normal-form levels    =", np.round(q.spectral.levels(), 6))

    # the cubic in nu^2 gives the same energies without any eigensolver
    ci = hl.characteristic_invariants(Y)
    print("nu^2 from the cubic   =", np.round(np.sort(-ci.roots), 6))

    # quasi-spin rewritings of the same operator
    f = sm.quasi_spin_forms(q.spectral, q.V, H, b)
    print("spin-1/2 form         =", {k: round(v, 6) for k, v in f.spin_half.items()})
    print("spin-3/2 form         =", {k: round(v, 6) for k, v in f.spin_three_half.items()})
    print("largest residual      =", max(q.residuals["normal_form"], *f.residuals.values()))


if __name__ == "__main__":
    main()

"""Walk one SU(4) element around every parametrization of the double cover.

Run with ``python3 demos/conversion_web.py``.
"""

import numpy as np

from bvlab import bv_transform as bv
from bvlab import group_maps as gm


def gap(X, Y):
    return float(np.max(np.abs(np.asarray(X) - np.asarray(Y))))


def main(seed=3):
    rng = np.random.default_rng(seed)
    U = gm.random_su4(rng)
    L = gm.so6_from_su4(U)
    print("U and -U share L:", gap(gm.so6_from_su4(-U), L))

    p = gm.params_from_matrix(U)
    print(f"T0 = {p.t0:.6f}, |T0|^2 from traces of L = {gm.t0_modulus_squared(L):.6f}")

    # Cayley: L = (1 + A)(1 - A)^-1 with A real antisymmetric
    A = gm.cayley_A_from_L(L)
    Uc = gm.matrix_from_params(gm.su4_from_A(A))
    print("Cayley route reproduces the rotation:", gap(gm.so6_from_su4(Uc), L))

    # the trace route finds T0 only up to a fourth root of unity
    res = gm.su4_candidates_from_L(L)
    for c, ok in zip(res.candidates, res.valid):
        print(f"  candidate T0 = {c.t0:+.4f}  lifts L: {ok}")

    # chi = C2(L) acts on the 15 biparavectors; L comes back up to sign
    chi = gm.chi_from_L(L)
    Lr = gm.L_from_chi(chi)
    print("chi inversion (up to sign):", min(gap(Lr, L), gap(Lr, -L)))

    # the nonlinear Bogolyubov-Valatin coefficients of the same rotation
    lam = bv.lambda_from_L(L)
    print("CAR residual:", bv.verify_car(bv.chi_tensors_from_kappa(bv.kappa_from_lambda(lam))).matrix_residual)
    Ls = bv.so6_from_lambda(lam)
    print("structural solve (up to sign):", min(gap(Ls, L), gap(Ls, -L)))

    X = gm.ostlund_from_matrix(U)
    print("matrix-unit coordinates round trip:", gap(gm.ostlund_matrix(X), U))


if __name__ == "__main__":
    main()

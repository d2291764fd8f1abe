"""Jordan-Wigner dictionaries between two fermion modes and spins.

Run with ``python3 demos/spin_dictionaries.py``.
"""

import numpy as np

from bvlab import spin_maps as sm
from bvlab.clifford_core import default_basis, fock_states


def main():
    b = default_basis()
    fock = fock_states(b)
    for variant in sm.SPIN_HALF_VARIANTS:
        s = sm.jw_spin_half(b, variant)
        r = sm.spin_half_residuals(s)
        print(f"two spin-1/2 sites ({variant}): su(2) residual {r['su2']:.1e}, "
              f"sites commute to {r['site_commutation']:.1e}")
        vals = [np.vdot(v, s.z[0] @ v).real for v in fock.values()]
        print("  <S1z> on |00>,|10>,|01>,|11>:", np.round(vals, 3))

    J = sm.jw_spin_three_half(b)
    print("one spin-3/2: spectrum of Iz =", np.round(np.linalg.eigvalsh(J.z), 12))
    back = sm.fermion_from_spin_three_half(J)
    err = max(np.max(np.abs(x - y)) for x, y in zip(back, (b.a[0], b.adag[0], b.a[1], b.adag[1])))
    print(f"fermions rebuilt from spin-3/2 operators to {err:.1e}")


if __name__ == "__main__":
    main()

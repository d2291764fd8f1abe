"""Default numerical tolerances.

The values are module-level constants; every function that uses one also
accepts a ``tol`` keyword so callers can override it locally.
"""

import os

#: algebraic identities on exact 4×4 representatives
EPS_ALG = 1e-12
#: round trips through SU(4) / SO(6) conversions
EPS_GRP = 1e-10
#: guard against the eigenvalue −1 singularity of the Cayley map
EPS_CAYLEY = 1e-8
#: structural reconstructions (χ → L, λ → L)
EPS_REC = 1e-6
#: sanity checks on inputs (unitarity/orthogonality of user data)
EPS_INPUT = 1e-8
#: anticommutator residuals
EPS_CAR = 1e-10
#: Hamiltonian diagonalization
EPS_DIAG = 1e-9


def env_tolerance(default):
    """Return ``BVLAB_TOL`` from the environment as a float, else `default`."""
    value = os.environ.get("BVLAB_TOL")
    if value is None or value.strip() == "":
        return default
    return float(value)

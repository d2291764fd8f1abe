"""Bogoliubov-Valatin transformations of two fermion modes via Cl(6).

Submodules
----------
clifford_core     paravector/biparavector operator basis on the two-mode Fock space
exterior_algebra  determinants, Pfaffians, compound matrices
group_maps        SU(4) ↔ SO(6) and its parametrizations (Cayley, χ, Östlund)
bv_transform      transformation coefficients, CAR checks, structural solve
hamiltonian_lab   quadratic-plus-quartic Hamiltonians and their normal form
spin_maps         Jordan-Wigner dictionaries to spin ½ ⊗ ½ and spin 3/2
cli               the ``bvlab`` command
"""

from ._version import __version__
from .clifford_core import default_basis
from .errors import BVLabError
from .group_maps import SU4Params, so6_from_su4, su4_from_L
from .hamiltonian_lab import HamiltonianCoeffs, quasiparticle_form
from .bv_transform import LambdaCoeffs, verify_car

__all__ = [
    "__version__", "default_basis", "BVLabError", "SU4Params", "so6_from_su4",
    "su4_from_L", "HamiltonianCoeffs", "quasiparticle_form", "LambdaCoeffs",
    "verify_car",
]

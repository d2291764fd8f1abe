"""Exception hierarchy for bvlab.

Every mathematical precondition failure raises a subclass of
:class:`BVLabError`, which itself derives from :class:`ValueError` so that
callers who only care about "bad input" can catch the builtin.
"""


class BVLabError(ValueError):
    """Base class for all bvlab precondition violations."""


class GammaInvariantViolation(BVLabError):
    """A candidate Γ-matrix set fails the Clifford anticommutator."""


class UnsupportedPattern(BVLabError):
    """A trace request has no closed form available."""


class BadOrder(BVLabError):
    """Compound order k outside 0 ≤ k ≤ n."""


class NotAntisymmetric(BVLabError):
    """Matrix is not (numerically) antisymmetric or has odd dimension."""


class NotSpecialUnitary(BVLabError):
    """Matrix is not in SU(4) within tolerance."""


class ParamConstraintViolation(BVLabError):
    """(T0, T) parameters violate the SU(4) normalization constraints."""


class CayleySingular(BVLabError):
    """The Cayley map is singular (eigenvalue −1 of L or +1 of A)."""


class DegenerateT0(BVLabError):
    """|T0| vanishes, so the phase route through T0 is undefined."""


class NotOrthogonal(BVLabError):
    """Matrix is not orthogonal (or not special orthogonal)."""


class ZeroL00(BVLabError):
    """The reference entry L00 vanishes; χ inversion through it fails."""


class CanonicalViolation(BVLabError):
    """Transformation coefficients do not preserve the CAR."""


class DegenerateFactorization(BVLabError):
    """A bivector that should be simple has numerical rank ≠ 2."""


class OneModeConstraintViolation(BVLabError):
    """The one-mode coefficient triple violates its normalization."""


class NotHermitian(BVLabError):
    """Hamiltonian coefficients violate the hermiticity relations."""

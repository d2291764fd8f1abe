"""Jordan-Wigner dictionaries between two fermion modes and spin systems.

The four-dimensional Fock space of two fermion modes carries either two
spin-½ sites or a single spin-3/2.  Both dictionaries are explicit
polynomials in ``a_k, a_k†``, and each has a polynomial inverse.  Applied
to quasi-particles ``b_k = V a_k V†`` they give quasi-spin operators
``V S V†``, in which the normal form of any Hamiltonian becomes a diagonal
spin Hamiltonian.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .clifford_core import default_basis

_SQ2 = np.sqrt(2.0)
_SQ3 = np.sqrt(3.0)

SPIN_HALF_VARIANTS = ("hole", "particle")


def _dag(X):
    return X.conj().T


def _comm(X, Y):
    return X @ Y - Y @ X


# ---------------------------------------------------------------------------
# Two spin-½ sites
# ---------------------------------------------------------------------------

@dataclass
class SpinHalfOps:
    """Spin operators ``S⁺, S⁻, Sᶻ`` of two sites (index 0 ↔ site 1)."""

    plus: tuple
    minus: tuple
    z: tuple
    variant: str

    def xyz(self, site):
        """``(Sˣ, Sʸ, Sᶻ)`` of `site` ∈ {1, 2}."""
        p, m, z = self.plus[site - 1], self.minus[site - 1], self.z[site - 1]
        return 0.5 * (p + m), -0.5j * (p - m), z

    def conjugated(self, V):
        """``V S V†`` for every operator (quasi-spins of ``b = V a V†``)."""
        c = lambda X: V @ X @ _dag(V)  # noqa: E731
        return SpinHalfOps(tuple(map(c, self.plus)), tuple(map(c, self.minus)),
                           tuple(map(c, self.z)), self.variant)


def _check_variant(variant):
    if variant not in SPIN_HALF_VARIANTS:
        raise ValueError(f"unknown spin-½ variant {variant!r}; use one of {SPIN_HALF_VARIANTS}")


def jw_spin_half(basis=None, variant="hole", fermions=None):
    """Two spin-½ sites from two fermion modes.

    ``variant="hole"``::

        S₁⁺ = (i/√2) a₁[(1+i) − 2n₂],   S₁ᶻ = ½ − n₁
        S₂⁺ = −(i/√2) a₂[(1−i) − 2n₁],  S₂ᶻ = ½ − n₂

    ``variant="particle"``::

        S₁⁺ = a₁†[1 − (1+i)n₂],  S₁ᶻ = n₁ − ½
        S₂⁺ = a₂†[1 − (1−i)n₁],  S₂ᶻ = n₂ − ½

    with ``S⁻ = (S⁺)†``.

    Parameters
    ----------
    basis : OperatorBasis, optional
    variant : {"hole", "particle"}
    fermions : (a1, a2), optional
        Annihilators to use instead of the basis ones (e.g. quasi-particles).
    """
    _check_variant(variant)
    b = default_basis() if basis is None else basis
    a1, a2 = b.a if fermions is None else fermions
    I = b.unit
    c1, c2 = _dag(a1), _dag(a2)
    n1, n2 = c1 @ a1, c2 @ a2
    if variant == "hole":
        p1 = (1j / _SQ2) * a1 @ ((1 + 1j) * I - 2 * n2)
        p2 = -(1j / _SQ2) * a2 @ ((1 - 1j) * I - 2 * n1)
        z1, z2 = 0.5 * I - n1, 0.5 * I - n2
    else:
        p1 = c1 @ (I - (1 + 1j) * n2)
        p2 = c2 @ (I - (1 - 1j) * n1)
        z1, z2 = n1 - 0.5 * I, n2 - 0.5 * I
    return SpinHalfOps((p1, p2), (_dag(p1), _dag(p2)), (z1, z2), variant)


def fermion_from_spin_half(spins):
    """Inverse dictionary: ``(a₁, a₁†, a₂, a₂†)`` from the spin operators.

    ``"hole"``::

        a₁ = −(1/√2) S₁⁺[1 + 2iS₂ᶻ],   a₂ = −(1/√2) S₂⁺[1 − 2iS₁ᶻ]

    ``"particle"``::

        a₁ = −i S₁⁻[½(1+i) + (1−i)S₂ᶻ],  a₂ = i S₂⁻[½(1−i) + (1+i)S₁ᶻ]

    and the creators are the adjoints.
    """
    p1, p2 = spins.plus
    m1, m2 = spins.minus
    z1, z2 = spins.z
    I = np.eye(p1.shape[0])
    if spins.variant == "hole":
        a1 = -(1 / _SQ2) * p1 @ (I + 2j * z2)
        c1 = -(1 / _SQ2) * m1 @ (I - 2j * z2)
        a2 = -(1 / _SQ2) * p2 @ (I - 2j * z1)
        c2 = -(1 / _SQ2) * m2 @ (I + 2j * z1)
    elif spins.variant == "particle":
        a1 = -1j * m1 @ (0.5 * (1 + 1j) * I + (1 - 1j) * z2)
        c1 = 1j * p1 @ (0.5 * (1 - 1j) * I + (1 + 1j) * z2)
        a2 = 1j * m2 @ (0.5 * (1 - 1j) * I + (1 + 1j) * z1)
        c2 = -1j * p2 @ (0.5 * (1 + 1j) * I + (1 - 1j) * z1)
    else:
        _check_variant(spins.variant)
    return a1, c1, a2, c2


def spin_half_residuals(spins):
    """Largest deviations from su(2), site commutation and ``(Sᶻ)² = ¼``."""
    I = np.eye(spins.z[0].shape[0])
    su2 = 0.0
    sq = 0.0
    for site in (1, 2):
        x, y, z = spins.xyz(site)
        su2 = max(su2,
                  np.max(np.abs(_comm(x, y) - 1j * z)),
                  np.max(np.abs(_comm(y, z) - 1j * x)),
                  np.max(np.abs(_comm(z, x) - 1j * y)))
        sq = max(sq, np.max(np.abs(z @ z - 0.25 * I)))
    site = 0.0
    ops1 = spins.xyz(1)
    ops2 = spins.xyz(2)
    for X in ops1:
        for Y in ops2:
            site = max(site, np.max(np.abs(_comm(X, Y))))
    return {"su2": float(su2), "site_commutation": float(site), "z_squared": float(sq)}


# ---------------------------------------------------------------------------
# Single spin-3/2
# ---------------------------------------------------------------------------

@dataclass
class SpinThreeHalfOps:
    """Spin-3/2 operators ``I⁺, I⁻, Iᶻ`` on the two-mode Fock space."""

    plus: np.ndarray
    minus: np.ndarray
    z: np.ndarray

    def xyz(self):
        return 0.5 * (self.plus + self.minus), -0.5j * (self.plus - self.minus), self.z

    def conjugated(self, V):
        c = lambda X: V @ X @ _dag(V)  # noqa: E731
        return SpinThreeHalfOps(c(self.plus), c(self.minus), c(self.z))


def jw_spin_three_half(basis=None, fermions=None):
    """Spin 3/2 from two fermion modes.

    ``I⁺ = √3 a₂† + 2a₁†a₂``, ``I⁻ = √3 a₂ + 2a₂†a₁`` and
    ``Iᶻ = ½[I⁺, I⁻] = 2n₁ + n₂ − 3/2``, so the occupations
    ``(n₁, n₂) = (0,0), (0,1), (1,0), (1,1)`` are the ``Iᶻ`` ladder
    ``−3/2 … 3/2``.
    """
    b = default_basis() if basis is None else basis
    a1, a2 = b.a if fermions is None else fermions
    c1, c2 = _dag(a1), _dag(a2)
    plus = _SQ3 * c2 + 2.0 * c1 @ a2
    minus = _dag(plus)
    z = 0.5 * _comm(plus, minus)
    return SpinThreeHalfOps(plus, minus, z)


def fermion_from_spin_three_half(spin):
    """Inverse dictionary ``(a₁, a₁†, a₂, a₂†)``.

    ``a₁† = −I⁺IᶻI⁺/√3``, ``a₁ = −I⁻IᶻI⁻/√3``,
    ``a₂† = I⁺(½ + Iᶻ)²/√3``, ``a₂ = (½ + Iᶻ)²I⁻/√3``.
    """
    Ip, Im, Iz = spin.plus, spin.minus, spin.z
    half = 0.5 * np.eye(Iz.shape[0]) + Iz
    half2 = half @ half
    c1 = -(Ip @ Iz @ Ip) / _SQ3
    a1 = -(Im @ Iz @ Im) / _SQ3
    c2 = Ip @ half2 / _SQ3
    a2 = half2 @ Im / _SQ3
    return a1, c1, a2, c2


def spin_three_half_residuals(spin):
    """su(2) closure, ladder relations and the Casimir ``15/4``."""
    x, y, z = spin.xyz()
    I = np.eye(z.shape[0])
    return {
        "su2": float(max(np.max(np.abs(_comm(x, y) - 1j * z)),
                         np.max(np.abs(_comm(y, z) - 1j * x)),
                         np.max(np.abs(_comm(z, x) - 1j * y)))),
        "ladder": float(max(np.max(np.abs(_comm(z, spin.plus) - spin.plus)),
                            np.max(np.abs(_comm(z, spin.minus) + spin.minus)))),
        "casimir": float(np.max(np.abs(x @ x + y @ y + z @ z - 3.75 * I))),
    }


def spin_three_half_from_spin_half(spins):
    """Spin-3/2 operators written through two spin-½ sites.

    Composes the spin-½ → fermion inverse with the fermion → spin-3/2 map.
    """
    a1, c1, a2, c2 = fermion_from_spin_half(spins)
    plus = _SQ3 * c2 + 2.0 * c1 @ a2
    minus = _SQ3 * a2 + 2.0 * c2 @ a1
    return SpinThreeHalfOps(plus, minus, 0.5 * _comm(plus, minus))


# ---------------------------------------------------------------------------
# Quasi-spin normal forms
# ---------------------------------------------------------------------------

#: Reference coefficients of the single-quasi-spin form, as rationals
#: multiplying (ν₋₁₀, ν₁₂, ν₃₄); the constant also contains the offset.
REFERENCE_SPIN_THREE_HALF = {
    "1": (Fraction(13, 8), Fraction(0), Fraction(0)),
    "Jz": (Fraction(17, 12), Fraction(-5, 12), Fraction(22, 12)),
    "Jz^2": (Fraction(1, 2), Fraction(0), Fraction(0)),
    "Jz^3": (Fraction(1, 3), Fraction(-1, 3), Fraction(2, 3)),
}

#: Reference two-spin-½ coefficients (ν₋₁₀, ν₁₂, ν₃₄) of T₁ᶻ, T₂ᶻ, T₁ᶻT₂ᶻ.
REFERENCE_SPIN_HALF = {
    "T1z": (-1, -1, 0),
    "T2z": (-1, 0, -1),
    "T1zT2z": (2, 0, 0),
}


def _levels_by_occupation(nu, offset):
    n10, n12, n34 = nu
    k = offset - 0.5 * n12 - 0.5 * n34 + 0.5 * n10
    return {(0, 0): k, (1, 0): k + n12 - n10, (0, 1): k + n34 - n10,
            (1, 1): k + n12 + n34}


def spin_half_coefficients(nu, offset, variant="hole"):
    """Coefficients of ``H = c + α T₁ᶻ + β T₂ᶻ + γ T₁ᶻT₂ᶻ``.

    With ``Tᶻ = σ(N − ½)`` (σ = −1 for ``"hole"``, +1 for ``"particle"``) the
    number form gives ``c = offset``, ``α = σν₁₂``, ``β = σν₃₄``,
    ``γ = 2ν₋₁₀``.
    """
    _check_variant(variant)
    sigma = -1.0 if variant == "hole" else 1.0
    n10, n12, n34 = nu
    return {"1": float(offset), "T1z": sigma * n12, "T2z": sigma * n34,
            "T1zT2z": 2.0 * n10}


_JZ_LADDER = {(0, 0): -1.5, (0, 1): -0.5, (1, 0): 0.5, (1, 1): 1.5}


def spin_three_half_coefficients(nu, offset):
    """Coefficients of ``H = Σ_p c_p (Jᶻ)^p``, p = 0..3, solved exactly.

    The four levels sit at distinct ``Jᶻ`` values, so interpolation on
    ``{1, Jᶻ, (Jᶻ)², (Jᶻ)³}`` is exact.  In closed form::

        c₀ = offset − 5ν₋₁₀/8,     c₁ = (13ν₁₂ − 14ν₃₄)/12,
        c₂ = ν₋₁₀/2,               c₃ = −(ν₁₂ − 2ν₃₄)/3.
    """
    levels = _levels_by_occupation(nu, offset)
    keys = sorted(_JZ_LADDER, key=_JZ_LADDER.get)
    x = np.array([_JZ_LADDER[k] for k in keys])
    E = np.array([levels[k] for k in keys])
    coef = np.linalg.solve(np.vander(x, 4, increasing=True), E)
    return dict(zip(("1", "Jz", "Jz^2", "Jz^3"), coef.tolist()))


def spin_three_half_closed_form(nu, offset):
    """Closed-form version of :func:`spin_three_half_coefficients`."""
    n10, n12, n34 = nu
    return {"1": offset - 5.0 * n10 / 8.0, "Jz": (13.0 * n12 - 14.0 * n34) / 12.0,
            "Jz^2": 0.5 * n10, "Jz^3": -(n12 - 2.0 * n34) / 3.0}


def _reference_values(table, nu, offset=0.0):
    out = {}
    for key, fr in table.items():
        out[key] = float(sum(float(f) * v for f, v in zip(fr, nu)))
    if "1" in out:
        out["1"] += offset
    return out


@dataclass
class QuasiSpinForms:
    """Both quasi-spin normal forms with their matrix-level residuals."""

    spin_half: dict
    spin_three_half: dict
    reference_spin_half: dict
    reference_spin_three_half: dict
    residuals: dict
    quasi_spin_half: SpinHalfOps = None
    quasi_spin_three_half: SpinThreeHalfOps = None

    def reference_discrepancy(self):
        """Largest gap between re-derived and reference coefficients."""
        d_half = max(abs(self.spin_half[k] - self.reference_spin_half[k])
                     for k in self.reference_spin_half)
        d_three = max(abs(self.spin_three_half[k] - self.reference_spin_three_half[k])
                      for k in self.reference_spin_three_half)
        return {"spin_half": float(d_half), "spin_three_half": float(d_three)}


def quasi_spin_forms(spectral, V, H=None, basis=None, variant="hole"):
    """Quasi-spin normal forms of a diagonalized Hamiltonian.

    Parameters
    ----------
    spectral : SpectralData
        Output of the block diagonalization (``nu``, ``offset``).
    V : (4, 4) unitary
        Lift of the diagonalizing rotation, so that ``b_k = V a_k V†``.
    H : (4, 4) array, optional
        Original Hamiltonian matrix; when given, both forms are rebuilt
        from the quasi-spin matrices ``V S V†`` and compared with it.
    variant : {"hole", "particle"}
        Spin-½ convention for the two-site form.

    Returns
    -------
    QuasiSpinForms
    """
    b = default_basis() if basis is None else basis
    nu, offset = tuple(float(x) for x in spectral.nu), float(spectral.offset)
    half = spin_half_coefficients(nu, offset, variant)
    three = spin_three_half_coefficients(nu, offset)
    T = jw_spin_half(b, variant).conjugated(V)
    J = jw_spin_three_half(b).conjugated(V)
    I = b.unit
    H_half = (half["1"] * I + half["T1z"] * T.z[0] + half["T2z"] * T.z[1]
              + half["T1zT2z"] * T.z[0] @ T.z[1])
    Jz = J.z
    H_three = (three["1"] * I + three["Jz"] * Jz + three["Jz^2"] * Jz @ Jz
               + three["Jz^3"] * Jz @ Jz @ Jz)
    residuals = {
        "closed_form": max(abs(three[k] - v) for k, v in
                           spin_three_half_closed_form(nu, offset).items()),
    }
    if H is not None:
        residuals["spin_half_matrix"] = float(np.max(np.abs(H_half - H)))
        residuals["spin_three_half_matrix"] = float(np.max(np.abs(H_three - H)))
    ref_half = _reference_values(REFERENCE_SPIN_HALF, nu)
    ref_half["1"] = offset
    ref_three = _reference_values(REFERENCE_SPIN_THREE_HALF, nu, offset)
    return QuasiSpinForms(half, three, ref_half, ref_three, residuals, T, J)

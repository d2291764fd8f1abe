"""Nonlinear Bogolyubov-Valatin transformations of two fermion modes.

A transformation is specified by the new annihilators ``b_k`` (k = 1, 2)
expanded in the 16 fermion monomials,
``b_k = Σ_X λ_k^X · monomial(X)``.  Three equivalent coordinate systems are
provided:

* ``λ`` — coefficients of the normal-ordered fermion monomials;
* ``κ`` — coefficients of the Clifford monomials, obtained from the
  Hermitian/anti-Hermitian split ``d_{2k−1} = i(b_k + b_k†)``,
  ``d_{2k} = b_k − b_k†``;
* ``χ`` — real grade-wise coefficients of ``d_1..d_4``; equivalently four
  antisymmetric 6×6 matrices ``χ₀ₖ`` with ``d_k = −Σ_M (χ₀ₖ)_M ĉ_M``.

The transformation is canonical iff every ``χ₀ₖ`` is a simple bivector
``r_0 ∧ r_k`` built from orthonormal vectors, in which case the ``r``'s are
rows of a matrix ``L ∈ SO(6)``.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .clifford_core import (
    BIP_PAIRS, MONOMIAL_LABELS, antisym_from_bip, bip_commutator_structure,
    bip_epsilon, bip_from_monomial_coefficients, bip_vector, default_basis,
    fermion_monomials, monomial_coefficients, slot,
)
from .errors import (
    CanonicalViolation, DegenerateFactorization, NotOrthogonal,
    OneModeConstraintViolation,
)
from .exterior_algebra import compound, determinant
from .group_maps import check_so6
from .tolerances import EPS_ALG, EPS_CAR, EPS_INPUT, EPS_REC

_LPOS = {label: i for i, label in enumerate(MONOMIAL_LABELS)}


# ---------------------------------------------------------------------------
# coefficient containers
# ---------------------------------------------------------------------------

class _ModeCoeffs:
    """Two rows of 16 complex coefficients keyed by monomial label."""

    def __init__(self, values):
        values = np.array(values, dtype=complex)
        if values.shape != (2, 16):
            raise ValueError("expected coefficients of shape (2, 16)")
        values.setflags(write=False)
        self.values = values

    def get(self, mode, label):
        return self.values[mode - 1, _LPOS[label]]

    def mode(self, k):
        """``{label: value}`` for mode `k` (1 or 2)."""
        return {lab: self.values[k - 1, i] for i, lab in enumerate(MONOMIAL_LABELS)}

    @classmethod
    def from_modes(cls, mode1, mode2):
        """Build from two ``{label: value}`` dicts; missing labels are zero."""
        vals = np.zeros((2, 16), dtype=complex)
        for row, d in enumerate((mode1, mode2)):
            for lab, v in d.items():
                vals[row, _LPOS[lab]] = v
        return cls(vals)

    def to_json(self):
        return {str(k): {lab: [float(np.real(v)), float(np.imag(v))]
                         for lab, v in self.mode(k).items()} for k in (1, 2)}

    @classmethod
    def from_json(cls, obj):
        modes = []
        for k in ("1", "2"):
            d = obj[k]
            modes.append({lab: complex(v[0], v[1]) for lab, v in d.items()})
        return cls.from_modes(*modes)

    def __repr__(self):
        return f"{type(self).__name__}({self.values!r})"


class LambdaCoeffs(_ModeCoeffs):
    """Fermion-monomial coefficients λ_k^X of ``b_1``, ``b_2``."""

    def trace_residuals(self):
        """``4λ^(0|0) + 2λ^(1|1) + 2λ^(2|2) − λ^(1,2|1,2)`` per mode."""
        v = self.values
        return (4 * v[:, _LPOS["0|0"]] + 2 * v[:, _LPOS["1|1"]]
                + 2 * v[:, _LPOS["2|2"]] - v[:, _LPOS["1,2|1,2"]])


class KappaCoeffs(_ModeCoeffs):
    """Clifford-monomial coefficients κ_k^X."""


# ---------------------------------------------------------------------------
# λ <-> κ
# ---------------------------------------------------------------------------

def _kappa_mode(l):
    g = lambda lab: l[lab]  # noqa: E731
    p, q, r, s = g("1,2|0"), g("0|1,2"), g("1|2"), g("2|1")
    k = {}
    k["0|0"] = g("0|0")
    k["1|0"] = g("1|0") + g("0|1") + 0.5 * g("1,2|2") - 0.5 * g("2|1,2")
    k["0|1"] = -1j * (g("1|0") - g("0|1") + 0.5 * g("1,2|2") + 0.5 * g("2|1,2"))
    k["2|0"] = g("2|0") + g("0|2") - 0.5 * g("1,2|1") + 0.5 * g("1|1,2")
    k["0|2"] = -1j * (g("2|0") - g("0|2") - 0.5 * g("1,2|1") - 0.5 * g("1|1,2"))
    k["1,2|0"] = -0.5j * (p + q + r - s)
    k["1|2"] = 0.5 * (-p + q + r + s)
    k["2|1"] = 0.5 * (-p + q - r - s)
    k["0|1,2"] = 0.5j * (p + q - r + s)
    k["1|1"] = g("1|1") - 0.5 * g("1,2|1,2")
    k["2|2"] = g("2|2") - 0.5 * g("1,2|1,2")
    k["1,2|1"] = 0.5 * (g("1,2|1") - g("1|1,2"))
    k["1|1,2"] = -0.5j * (g("1|1,2") + g("1,2|1"))
    k["1,2|2"] = 0.5 * (g("2|1,2") - g("1,2|2"))
    k["2|1,2"] = 0.5j * (g("2|1,2") + g("1,2|2"))
    k["1,2|1,2"] = 0.5 * g("1,2|1,2")
    return k


def _lambda_mode(k):
    g = lambda lab: k[lab]  # noqa: E731
    l = {}
    l["0|0"] = g("0|0")
    l["1,2|1,2"] = 2 * g("1,2|1,2")
    l["1|1"] = g("1|1") + g("1,2|1,2")
    l["2|2"] = g("2|2") + g("1,2|1,2")
    l["2|1,2"] = g("1,2|2") - 1j * g("2|1,2")
    l["1,2|2"] = -g("1,2|2") - 1j * g("2|1,2")
    l["1,2|1"] = g("1,2|1") + 1j * g("1|1,2")
    l["1|1,2"] = -g("1,2|1") + 1j * g("1|1,2")
    s1 = g("1|0") - 0.5 * l["1,2|2"] + 0.5 * l["2|1,2"]
    d1 = 1j * g("0|1") - 0.5 * l["1,2|2"] - 0.5 * l["2|1,2"]
    l["1|0"], l["0|1"] = 0.5 * (s1 + d1), 0.5 * (s1 - d1)
    s2 = g("2|0") + 0.5 * l["1,2|1"] - 0.5 * l["1|1,2"]
    d2 = 1j * g("0|2") + 0.5 * l["1,2|1"] + 0.5 * l["1|1,2"]
    l["2|0"], l["0|2"] = 0.5 * (s2 + d2), 0.5 * (s2 - d2)
    q_minus_p = g("1|2") + g("2|1")
    r_plus_s = g("1|2") - g("2|1")
    p_plus_q = 1j * (g("1,2|0") - g("0|1,2"))
    r_minus_s = 1j * (g("1,2|0") + g("0|1,2"))
    l["1,2|0"] = 0.5 * (p_plus_q - q_minus_p)
    l["0|1,2"] = 0.5 * (p_plus_q + q_minus_p)
    l["1|2"] = 0.5 * (r_plus_s + r_minus_s)
    l["2|1"] = 0.5 * (r_plus_s - r_minus_s)
    return l


def kappa_from_lambda(lam):
    """Linear map λ → κ (per mode, trace condition not required)."""
    return KappaCoeffs.from_modes(_kappa_mode(lam.mode(1)), _kappa_mode(lam.mode(2)))


def lambda_from_kappa(kap):
    """Inverse of :func:`kappa_from_lambda`."""
    return LambdaCoeffs.from_modes(_lambda_mode(kap.mode(1)), _lambda_mode(kap.mode(2)))


# ---------------------------------------------------------------------------
# κ <-> χ tensors
# ---------------------------------------------------------------------------

# κ label -> (grade, index within grade) of the accompanying Clifford monomial
_KAPPA_GRADE = {
    "1|0": (1, 0), "0|1": (1, 1), "2|0": (1, 2), "0|2": (1, 3),
    "1|1": (2, 0), "1,2|0": (2, 1), "1|2": (2, 2), "2|1": (2, 3), "0|1,2": (2, 4),
    "2|2": (2, 5),
    "1,2|1": (3, 0), "1|1,2": (3, 1), "1,2|2": (3, 2), "2|1,2": (3, 3),
    "1,2|1,2": (4, 0),
}
# Hodge storage: chi3_star[q-1] = sign * (triple coefficient), triples lexicographic
_HODGE3 = {3: (0, 1.0), 2: (1, -1.0), 1: (2, 1.0), 0: (3, -1.0)}


def clifford_monomials(basis=None):
    """κ-label → Clifford monomial matrix (c_m, c_m c_n, i c_m c_n c_p, …)."""
    b = default_basis() if basis is None else basis
    c = b.c
    r = {
        "1|0": c(1), "0|1": c(2), "2|0": c(3), "0|2": c(4),
        "1|1": c(1) @ c(2), "1,2|0": c(1) @ c(3), "1|2": c(1) @ c(4),
        "2|1": c(2) @ c(3), "0|1,2": c(2) @ c(4), "2|2": c(3) @ c(4),
        "1,2|1": 1j * c(1) @ c(2) @ c(3), "1|1,2": 1j * c(1) @ c(2) @ c(4),
        "1,2|2": 1j * c(1) @ c(3) @ c(4), "2|1,2": 1j * c(2) @ c(3) @ c(4),
        "1,2|1,2": 1j * c(1) @ c(2) @ c(3) @ c(4),
    }
    return r


@dataclass(frozen=True)
class ChiTensors:
    """Real grade-wise coefficients of ``d_1 … d_4``.

    Attributes
    ----------
    chi1 : (4, 4)  coefficient of ``c_m`` in ``d_k``
    chi2 : (4, 6)  coefficient of ``c_m c_n``, pairs (12, 13, 14, 23, 24, 34)
    chi3 : (4, 4)  Hodge-dual storage of the ``i c_m c_n c_p`` coefficients:
        ``chi3[k, q−1]`` belongs to the triple complementary to ``q``, with
        sign ``+`` for q = 4, 2 and ``−`` for q = 3, 1
    chi4 : (4,)    coefficient of ``i c_1 c_2 c_3 c_4``
    """

    chi1: np.ndarray
    chi2: np.ndarray
    chi3: np.ndarray
    chi4: np.ndarray

    @classmethod
    def identity(cls):
        return cls(np.eye(4), np.zeros((4, 6)), np.zeros((4, 4)), np.zeros(4))

    def grades(self, k):
        """Grade dict (see :func:`monomial_coefficients`) of ``d_k``."""
        i = k - 1
        triples = np.zeros(4)
        for q, (t, s) in _HODGE3.items():
            triples[t] = s * self.chi3[i, q]
        return {1: self.chi1[i], 2: self.chi2[i], 3: triples, 4: self.chi4[i:i + 1]}

    def bip_rows(self):
        """(4, 15) rows ``(χ₀ₖ)_M`` so that ``d_k = −Σ_M (χ₀ₖ)_M ĉ_M``."""
        return np.stack([-bip_from_monomial_coefficients(self.grades(k)).real
                         for k in range(1, 5)])

    def zero_rows(self):
        """(4, 6, 6) antisymmetric matrices χ₀ₖ."""
        return np.stack([antisym_from_bip(r) for r in self.bip_rows()])

    @classmethod
    def from_bip_rows(cls, rows):
        rows = np.asarray(rows, dtype=float)
        c1, c2, c3, c4 = (np.zeros((4, 4)), np.zeros((4, 6)),
                          np.zeros((4, 4)), np.zeros(4))
        for i in range(4):
            g = monomial_coefficients(-rows[i])
            c1[i], c2[i], c4[i] = g[1], g[2], g[4][0]
            for q, (t, s) in _HODGE3.items():
                c3[i, q] = s * g[3][t]
        return cls(c1, c2, c3, c4)

    def chi2_matrix(self, k):
        """``χ^[2]_k`` as a 4×4 antisymmetric matrix over modes 1..4."""
        M = np.zeros((4, 4))
        pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
        for v, (a, b) in zip(self.chi2[k - 1], pairs):
            M[a, b], M[b, a] = v, -v
        return M


def chi_tensors_from_kappa(kap):
    """Split κ into real tensors: ``d_{2k−1}`` ← Re κ_k, ``d_{2k}`` ← Im κ_k."""
    c1, c2, c4 = np.zeros((4, 4)), np.zeros((4, 6)), np.zeros(4)
    trip = np.zeros((4, 4))
    for k in (1, 2):
        row = kap.mode(k)
        for part, d in ((np.real, 2 * k - 2), (np.imag, 2 * k - 1)):
            for lab, (grade, idx) in _KAPPA_GRADE.items():
                v = part(row[lab])
                if grade == 1:
                    c1[d, idx] = v
                elif grade == 2:
                    c2[d, idx] = v
                elif grade == 3:
                    trip[d, idx] = v
                else:
                    c4[d] = v
    c3 = np.zeros((4, 4))
    for q, (t, s) in _HODGE3.items():
        c3[:, q] = s * trip[:, t]
    return ChiTensors(c1, c2, c3, c4)


def kappa_from_chi_tensors(t, kappa00=None):
    """Reassemble κ from real tensors.

    ``κ^(0|0)`` is not encoded in χ; by default it is fixed by requiring
    the trace condition on the resulting λ.
    """
    modes = []
    for k in (1, 2):
        ga, gb = t.grades(2 * k - 1), t.grades(2 * k)
        d = {}
        for lab, (grade, idx) in _KAPPA_GRADE.items():
            d[lab] = ga[grade][idx] + 1j * gb[grade][idx]
        if kappa00 is None:
            # 4λ00 + 2λ11 + 2λ22 − λ1212 = 4κ00 + 2κ11 + 2κ22 + 2κ1212
            d["0|0"] = -0.5 * (d["1|1"] + d["2|2"] + d["1,2|1,2"])
        else:
            d["0|0"] = kappa00[k - 1]
        modes.append(d)
    return KappaCoeffs.from_modes(*modes)


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------

def b_operators_from_lambda(lam, basis=None):
    """Matrices of ``b_1``, ``b_2`` from the fermion-monomial expansion."""
    mons = fermion_monomials(basis)
    return np.stack([sum(lam.get(k, lab) * mons[lab] for lab in MONOMIAL_LABELS)
                     for k in (1, 2)])


def lambda_from_operators(bops, basis=None):
    """Expand two 4×4 operators in the 16 fermion monomials (linear solve)."""
    mons = fermion_monomials(basis)
    M = np.stack([mons[lab].reshape(16) for lab in MONOMIAL_LABELS], axis=1)
    coeffs = [np.linalg.solve(M, np.asarray(b).reshape(16)) for b in bops]
    return LambdaCoeffs(np.stack(coeffs))


def d_ops_from_chi(t, basis=None):
    """``d_k = −Σ_M (χ₀ₖ)_M ĉ_M`` for k = 1..4, shape (4, 4, 4)."""
    b = default_basis() if basis is None else basis
    return -np.einsum("km,mab->kab", t.bip_rows(), b.bip)


def d_ops_from_grades(t, basis=None):
    """Reference assembly of ``d_k`` from explicit Clifford monomials."""
    mons = clifford_monomials(basis)
    out = []
    for k in range(1, 5):
        g = t.grades(k)
        acc = np.zeros((4, 4), dtype=complex)
        for lab, (grade, idx) in _KAPPA_GRADE.items():
            acc = acc + g[grade][idx] * mons[lab]
        out.append(acc)
    return np.stack(out)


# ---------------------------------------------------------------------------
# CAR verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CarReport:
    """Grade-by-grade residuals of ``{d_k, d_l} + 2δ_kl 𝟙 = 0``.

    Coefficient residuals are measured on the anticommutator itself:
    scalar part ``−2(χ_k·χ_l) + 2δ_kl`` and, for each grade, the largest
    coefficient ``2|Σ χ_k^M χ_l^N ε_MNP|`` over the biparavectors ĉ_P of
    that grade.
    """

    passed: bool
    scalar_residual: float
    vector_residual: float
    bivector_residual: float
    trivector_residual: float
    quadrivector_residual: float
    matrix_residual: float
    consistent: bool

    def as_dict(self):
        return dict(self.__dict__)


def _grade_of_position():
    out = []
    for m1, m2 in BIP_PAIRS:
        if m1 == -1:
            out.append(4 if m2 == 0 else 3)
        elif m1 == 0:
            out.append(1)
        else:
            out.append(2)
    return np.array(out)


_GRADE_OF = _grade_of_position()


def anticommutator_coefficients(t):
    """Scalar and biparavector parts of every ``{d_k, d_l}``.

    Returns
    -------
    scalar : (4, 4)   ``−2 χ_k · χ_l``
    bip : (4, 4, 15)  ``−2i Σ_{MN} χ_k^M χ_l^N ε_MNP``
    """
    R = t.bip_rows()
    scalar = -2.0 * R @ R.T
    bip = -2j * np.einsum("km,ln,mnp->klp", R, R, bip_epsilon())
    return scalar, bip


def verify_car(t, basis=None, tol=EPS_CAR):
    """Check the Clifford form of the CAR at matrix and coefficient level."""
    d = d_ops_from_chi(t, basis)
    anti = np.einsum("kab,lbc->klac", d, d)
    anti = anti + anti.transpose(1, 0, 2, 3)
    target = -2.0 * np.einsum("kl,ac->klac", np.eye(4), np.eye(4))
    matrix_res = float(np.max(np.abs(anti - target)))
    scalar, bip = anticommutator_coefficients(t)
    scalar_res = float(np.max(np.abs(scalar + 2.0 * np.eye(4))))
    grade_res = {}
    for g in (1, 2, 3, 4):
        grade_res[g] = float(np.max(np.abs(bip[:, :, _GRADE_OF == g])))
    coeff_pass = max(scalar_res, *grade_res.values()) <= tol
    matrix_pass = matrix_res <= tol
    return CarReport(
        passed=bool(coeff_pass and matrix_pass),
        scalar_residual=scalar_res,
        vector_residual=grade_res[1],
        bivector_residual=grade_res[2],
        trivector_residual=grade_res[3],
        quadrivector_residual=grade_res[4],
        matrix_residual=matrix_res,
        consistent=bool(coeff_pass == matrix_pass),
    )


# ---------------------------------------------------------------------------
# commutator expansion
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1)
def _commutator_tensor():
    C = np.zeros((15, 15, 15), dtype=complex)
    for P in range(15):
        for Q in range(15):
            C[P, Q] = bip_commutator_structure(P, Q)
    return C


@dataclass(frozen=True)
class GradedExpansion:
    """Expansion ``Σ_N bip[N] ĉ_N`` together with its Clifford-grade split."""

    bip: np.ndarray
    grades: dict


def commutator_expansion(t, k, l):
    """Closed-form expansion of ``[d_k, d_l]`` from the biparavector algebra.

    The ``d``-wedge used in the literature is ``½[d_k, d_l]``.

    Returns
    -------
    GradedExpansion
        ``grades[2]`` holds the coefficients of ``c_m c_n`` etc.
    """
    R = t.bip_rows()
    coeffs = np.einsum("m,n,mnp->p", R[k - 1], R[l - 1], _commutator_tensor())
    return GradedExpansion(bip=coeffs, grades=monomial_coefficients(coeffs))


# ---------------------------------------------------------------------------
# simple-bivector factorization and the structural solve
# ---------------------------------------------------------------------------

def factor_simple_bivector(B, tol=EPS_REC):
    """Write an antisymmetric matrix as ``u ∧ v = u vᵀ − v uᵀ``.

    Returns
    -------
    (u, v) : orthogonal vectors with ``|u| = 1`` and ``|v|`` = the plane
        magnitude, or ``(0, 0)`` for the zero matrix.

    Raises
    ------
    DegenerateFactorization
        If `B` has numerical rank other than 0 or 2.
    """
    B = np.asarray(B, dtype=float)
    U, s, Vt = np.linalg.svd(B)
    scale = max(1.0, s[0])
    if s[0] <= tol:
        z = np.zeros(B.shape[0])
        return z, z
    if len(s) > 2 and s[2] > tol * scale:
        raise DegenerateFactorization(
            f"bivector is not simple (third singular value {s[2]:.2e})")
    u = U[:, 0]
    # (u∧v) u = −v for u ⟂ v, |u| = 1
    v = -(B @ u)
    return u, v


def _row_minus_one(rows):
    """Unit vector completing five orthonormal rows to det = +1."""
    M = np.asarray(rows)  # rows for slots 0..4 in order 0,1,2,3,4
    cof = np.zeros(6)
    for a in range(6):
        keep = [x for x in range(6) if x != a]
        cof[a] = (-1) ** a * determinant(M[:, keep])
    return cof


def so6_from_zero_rows(Z, tol=EPS_REC):
    """Recover ``L`` from the four simple bivectors ``χ₀ₖ = r_0 ∧ r_k``.

    ``r_0`` is the common direction of the four planes (top eigenvector of
    ``Σ_k −χ₀ₖ²``), ``r_k = −χ₀ₖ r_0``, sign fixed by ``L00 > 0`` (or the
    first significant entry of ``r_0`` if ``L00 ≈ 0``), and the row for
    slot −1 is the generalized cross product of the other five.

    Raises
    ------
    DegenerateFactorization
        If a plane is not simple or the common direction is not isolated.
    """
    Z = np.asarray(Z, dtype=float)
    for k in range(4):
        s = np.linalg.svd(Z[k], compute_uv=False)
        if s[2] > tol or abs(s[0] - 1) > tol or abs(s[1] - 1) > tol:
            raise DegenerateFactorization(
                f"χ₀{k + 1} is not a unit simple bivector (σ = {np.round(s, 8)})")
    proj = sum(-(Z[k] @ Z[k]) for k in range(4))
    w, v = np.linalg.eigh(0.5 * (proj + proj.T))
    if abs(w[-1] - 4.0) > tol or w[-2] > 1.0 + tol:
        raise DegenerateFactorization("the four planes share no common direction")
    r0 = v[:, -1]
    lead = slot(0) if abs(r0[slot(0)]) > tol else int(np.argmax(np.abs(r0) > tol))
    if r0[lead] < 0:
        r0 = -r0
    L = np.zeros((6, 6))
    L[slot(0)] = r0
    for k in range(1, 5):
        L[slot(k)] = -Z[k - 1] @ r0
    L[slot(-1)] = _row_minus_one(L[1:])
    return L


def so6_from_lambda(lam, tol=EPS_REC, basis=None):
    """Structural solve: the SO(6) matrix behind canonical λ coefficients.

    Raises
    ------
    CanonicalViolation
        If the λ's do not satisfy the CAR.
    DegenerateFactorization
    """
    t = chi_tensors_from_kappa(kappa_from_lambda(lam))
    rep = verify_car(t, basis, tol=max(EPS_CAR, tol * 1e-2))
    if not rep.passed:
        raise CanonicalViolation(
            f"coefficients violate the CAR (matrix residual {rep.matrix_residual:.2e})")
    tr = lam.trace_residuals()
    if np.max(np.abs(tr)) > max(EPS_CAR, tol * 1e-2):
        raise CanonicalViolation("trace condition violated")
    return so6_from_zero_rows(t.zero_rows(), tol)


def chi_tensors_from_L(L, tol=EPS_INPUT):
    """Real tensors of the transformation induced by ``L`` (rows (0,k) of C₂L)."""
    L = check_so6(L, tol)
    chi = compound(L, 2)
    rows = np.stack([chi[BIP_PAIRS.index((0, k))] for k in range(1, 5)])
    return ChiTensors.from_bip_rows(rows)


def lambda_from_L(L, tol=EPS_INPUT):
    """Fermion-monomial coefficients of the transformation induced by `L`.

    Raises
    ------
    NotOrthogonal
    """
    t = chi_tensors_from_L(L, tol)
    return lambda_from_kappa(kappa_from_chi_tensors(t))


def lambda_from_L_projection(L, basis=None, tol=EPS_INPUT):
    """Reference route: build ``d_k`` as matrices and project ``b_k``."""
    t = chi_tensors_from_L(L, tol)
    d = d_ops_from_chi(t, basis)
    bops = [0.5 * (d[2 * k - 1] - 1j * d[2 * k - 2]) for k in (1, 2)]
    return lambda_from_operators(bops, basis)


def isotropic_vectors(t):
    """Complex 15-vectors ``e′_k = χ₀,2k−1 + i χ₀,2k`` (k = 1, 2)."""
    R = t.bip_rows()
    return np.stack([R[0] + 1j * R[1], R[2] + 1j * R[3]])


# ---------------------------------------------------------------------------
# special cases
# ---------------------------------------------------------------------------

def linear_bv(A, tol=EPS_INPUT):
    """Linear (grade-preserving) transformation ``d_k = Σ_m A_km c_m``.

    Parameters
    ----------
    A : (4, 4) real orthogonal

    Returns
    -------
    L : (6, 6) ``blockdiag(det A, 1, A)``
    block : (16, 16) action on ``[𝟙, ĉ_(−1)0, ĉ_(−1)m, ĉ_(0m), ĉ_(mn)]`` =
        ``blockdiag(1, det A, det A · A, A, C₂(A))``

    Raises
    ------
    NotOrthogonal
    """
    A = np.asarray(A, dtype=float)
    if A.shape != (4, 4) or np.max(np.abs(A @ A.T - np.eye(4))) > tol:
        raise NotOrthogonal("linear BV needs a 4×4 orthogonal matrix")
    dA = determinant(A)
    L = np.zeros((6, 6))
    L[0, 0] = dA
    L[1, 1] = 1.0
    L[2:, 2:] = A
    block = np.zeros((16, 16))
    block[0, 0] = 1.0
    block[1, 1] = dA
    block[2:6, 2:6] = dA * A
    block[6:10, 6:10] = A
    block[10:, 10:] = compound(A, 2)
    return L, block


def one_mode_constraints(triple):
    """Residuals of the normalization and nilpotency conditions of ``b_1``.

    ``triple = (λ^(0|1), λ^(1|0), λ^(1|1))``.
    """
    l01, l10, l11 = (complex(x) for x in triple)
    norm = abs(l10) ** 2 + abs(l01) ** 2 + 0.5 * abs(l11) ** 2 - 1.0
    quad = 4 * l10 * l01 + l11 ** 2
    return abs(norm), abs(quad)


def one_mode_partner(triple):
    """Mode-2 coefficients of the minimal completion (closed form).

    ``b_2 = [(|λ01|² − |λ10|²) + (λ11 λ̄10 − λ̄11 λ01) a_1
    + (λ11 λ̄01 − λ̄11 λ10) a_1†] a_2``.

    This is the unique form compatible with ``{b_1, b_2} = {b_1†, b_2} = 0``;
    exchanging the two mixed coefficients breaks the anticommutation.
    """
    l01, l10, l11 = (complex(x) for x in triple)
    return {
        "0|2": abs(l01) ** 2 - abs(l10) ** 2,
        "0|1,2": l11 * np.conj(l10) - np.conj(l11) * l01,
        "1|2": l11 * np.conj(l01) - np.conj(l11) * l10,
    }


def one_mode_embedding(triple, tol=EPS_CAR):
    """Embed a single-mode transformation of ``a_1`` into SO(6).

    ``b_1 = λ01 a_1 + λ10 a_1† + λ11 (n_1 − ½)`` mixes only the first mode.
    Its two Clifford components span the planes ``r_0 ∧ r_1``,
    ``r_0 ∧ r_2`` inside slots (0, 1, 2); the completion acts trivially on
    slots (−1, 3, 4).

    Parameters
    ----------
    triple : (λ^(0|1), λ^(1|0), λ^(1|1))

    Returns
    -------
    lam : LambdaCoeffs for both modes (mode 2 induced by the completion)
    L : (6, 6) SO(6) matrix

    Raises
    ------
    OneModeConstraintViolation
    """
    norm, quad = one_mode_constraints(triple)
    if norm > tol or quad > tol:
        raise OneModeConstraintViolation(
            f"one-mode constraints violated (norm {norm:.2e}, quadratic {quad:.2e})")
    l01, l10, l11 = (complex(x) for x in triple)
    mode1 = {"0|1": l01, "1|0": l10, "1|1": l11, "0|0": -0.5 * l11}
    lam1 = LambdaCoeffs.from_modes(mode1, {})
    t = chi_tensors_from_kappa(kappa_from_lambda(lam1))
    Z = t.zero_rows()[:2]
    proj = -(Z[0] @ Z[0]) - (Z[1] @ Z[1])
    w, v = np.linalg.eigh(0.5 * (proj + proj.T))
    r0 = v[:, -1]
    idx = [slot(0), slot(1), slot(2)]
    Q = np.stack([r0, -Z[0] @ r0, -Z[1] @ r0])[:, idx]
    if determinant(Q) < 0:
        Q = -Q
    L = np.eye(6)
    L[np.ix_(idx, idx)] = Q
    lam = lambda_from_L(L)
    return lam, L

"""Conversions between SU(4), its (T0, T) parameters, SO(6), Cayley and χ.

A unitary ``U ∈ SU(4)`` is written ``U = T0 𝟙 + Σ_M T_M ĉ_M`` with a complex
scalar ``T0`` and a complex antisymmetric 6×6 matrix ``T``.  The double
cover ``SU(4) → SO(6;ℝ)`` sends ``U`` to ``L_kl = ¼ tr(Γ_k⁻ U† Γ_l⁺ Ū)``,
and ``χ = C₂(L)`` describes the action on biparavectors,
``U ĉ_M U† = Σ_N χ_MN ĉ_N``.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm, schur

from .clifford_core import (
    BIP_PAIRS, antisym_from_bip, bip_coefficients, bip_epsilon, bip_vector,
    default_basis, fock_states, from_bip_coefficients, slot,
)
from .errors import (
    CayleySingular, DegenerateT0, NotOrthogonal, NotSpecialUnitary,
    ParamConstraintViolation, ZeroL00,
)
from .exterior_algebra import compound, determinant, pfaffian, pfaffian_compound
from .tolerances import EPS_ALG, EPS_CAYLEY, EPS_GRP, EPS_INPUT, EPS_REC


@dataclass(frozen=True)
class SU4Params:
    """Parameters ``(T0, T)`` of ``U = T0 𝟙 + Σ_M T_M ĉ_M``."""

    t0: complex
    t: np.ndarray = field(repr=False)

    @property
    def vector(self):
        """The 15 independent entries ``T_M`` in biparavector order."""
        return bip_vector(self.t)

    @classmethod
    def from_vector(cls, t0, vec):
        return cls(complex(t0), antisym_from_bip(np.asarray(vec, dtype=complex)))

    def __neg__(self):
        return SU4Params(-self.t0, -self.t)

    def scaled(self, phase):
        return SU4Params(phase * self.t0, phase * self.t)


# ---------------------------------------------------------------------------
# random samples (used by tests, demos and the CLI self-test)
# ---------------------------------------------------------------------------

def random_su4(rng):
    """Haar-distributed element of SU(4)."""
    Z = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    Q, R = np.linalg.qr(Z)
    Q = Q * (np.diag(R) / np.abs(np.diag(R)))
    return Q / np.linalg.det(Q) ** 0.25


def random_so6(rng, n=6):
    """Haar-distributed element of SO(n)."""
    Q, R = np.linalg.qr(rng.normal(size=(n, n)))
    Q = Q * np.sign(np.diag(R))
    if np.linalg.det(Q) < 0:
        Q[:, 0] = -Q[:, 0]
    return Q


def random_antisym(rng, n=6, scale=1.0, complex_=False):
    """Random antisymmetric matrix with Gaussian entries."""
    M = rng.normal(size=(n, n))
    if complex_:
        M = M + 1j * rng.normal(size=(n, n))
    return scale * (M - M.T) / 2.0


# ---------------------------------------------------------------------------
# validation helpers
# ---------------------------------------------------------------------------

def _check_su4(U, tol):
    U = np.asarray(U, dtype=complex)
    if U.shape != (4, 4):
        raise NotSpecialUnitary("expected a 4×4 matrix")
    err_u = np.max(np.abs(U @ U.conj().T - np.eye(4)))
    err_d = abs(determinant(U) - 1.0)
    if err_u > tol or err_d > tol:
        raise NotSpecialUnitary(
            f"not in SU(4): |UU†−1|={err_u:.2e}, |det U−1|={err_d:.2e}")
    return U


def check_so6(L, tol=EPS_INPUT):
    """Raise :class:`NotOrthogonal` unless `L` is real, orthogonal, det 1."""
    L = np.asarray(L)
    if L.shape != (6, 6):
        raise NotOrthogonal("expected a 6×6 matrix")
    if np.iscomplexobj(L):
        if np.max(np.abs(L.imag)) > tol:
            raise NotOrthogonal("matrix has a nonzero imaginary part")
        L = L.real
    err_o = np.max(np.abs(L @ L.T - np.eye(6)))
    err_d = abs(determinant(L) - 1.0)
    if err_o > tol or err_d > tol:
        raise NotOrthogonal(
            f"not in SO(6): |LLᵀ−1|={err_o:.2e}, |det L−1|={err_d:.2e}")
    return np.asarray(L, dtype=float)


def param_constraint_residuals(p):
    """Residuals of the normalization and antisymmetric consistency relations.

    Returns
    -------
    norm : float
        ``| |T0|² + Σ_M |T_M|² − 1 |``.
    antisym : float
        Max over P of ``|−T0 T̄_P + T̄0 T_P − (T T̄)_P + (T̄ T)_P
        + i Σ_{MN} T_M T̄_N ε_MNP|``.
    """
    t0, T = p.t0, np.asarray(p.t)
    vec = bip_vector(T)
    norm = abs(abs(t0) ** 2 + np.sum(np.abs(vec) ** 2) - 1.0)
    Tb = T.conj()
    mat = -t0 * Tb + np.conj(t0) * T - T @ Tb + Tb @ T
    eps_term = 1j * np.einsum("m,n,mnp->p", vec, vec.conj(), bip_epsilon())
    anti = bip_vector(mat) + eps_term
    return float(norm), float(np.max(np.abs(anti)))


# ---------------------------------------------------------------------------
# SU(4) <-> (T0, T)
# ---------------------------------------------------------------------------

def params_from_matrix(U, basis=None, tol=EPS_INPUT):
    """Expansion coefficients ``(T0, T)`` of a special unitary 4×4 matrix.

    ``T0 = ¼ tr U`` and ``T_M = −¼ tr(ĉ_M U)``.

    Raises
    ------
    NotSpecialUnitary
    """
    U = _check_su4(U, tol)
    t0, vec = bip_coefficients(U, basis)
    return SU4Params.from_vector(t0, vec)


def matrix_from_params(p, basis=None, tol=EPS_INPUT):
    """Assemble ``U = T0 𝟙 + Σ_M T_M ĉ_M``.

    Raises
    ------
    ParamConstraintViolation
        If the normalization or consistency relations fail beyond `tol`.
    """
    norm, anti = param_constraint_residuals(p)
    if norm > tol or anti > tol:
        raise ParamConstraintViolation(
            f"(T0, T) constraints violated: norm {norm:.2e}, antisym {anti:.2e}")
    return from_bip_coefficients(p.t0, p.vector, basis)


def det_su4(p):
    """Determinant of ``T0 𝟙 + T^M ĉ_M`` as a polynomial in (T0, T)."""
    t0, T = p.t0, np.asarray(p.t)
    T2 = T @ T
    tr2 = np.trace(T2)
    tr4 = np.trace(T2 @ T2)
    pf = pfaffian(T, tol=1e-8)
    return complex(t0 ** 4 - t0 ** 2 * tr2 - 0.25 * tr2 ** 2 + tr4 + 8j * t0 * pf)


# ---------------------------------------------------------------------------
# SU(4) -> SO(6)
# ---------------------------------------------------------------------------

def so6_from_su4_complex(U, g=None):
    """Raw trace formula ``¼ tr(Γ_k⁻ U† Γ_l⁺ Ū)`` (complex; imaginary part ~0)."""
    g = default_basis().gamma if g is None else g
    U = np.asarray(U, dtype=complex)
    return 0.25 * np.einsum("kab,bc,lcd,da->kl", g.minus, U.conj().T, g.plus, U.conj())


def so6_from_su4(U, g=None, tol=EPS_INPUT):
    """Image of `U` under the double cover SU(4) → SO(6;ℝ).

    Raises
    ------
    NotSpecialUnitary
        If `U` is not special unitary, or if the trace formula acquires an
        imaginary part beyond `tol`.
    """
    U = _check_su4(U, tol)
    L = so6_from_su4_complex(U, g)
    if np.max(np.abs(L.imag)) > tol:
        raise NotSpecialUnitary("trace formula produced a complex L")
    return L.real


def so6_from_params(p):
    """Closed polynomial form ``(T0² + T_M T_M)𝟙 − 2T0 T + 2T² + 2i Pc²(T)``.

    Returned complex; for valid parameters the imaginary part vanishes.
    """
    t0, T = p.t0, np.asarray(p.t, dtype=complex)
    tt = np.sum(bip_vector(T) ** 2)
    return ((t0 ** 2 + tt) * np.eye(6) - 2 * t0 * T + 2 * T @ T
            + 2j * pfaffian_compound(T, tol=1e-8))


def so6_imaginary_residuals(p):
    """Imaginary parts that must cancel for the polynomial form to be real.

    Returns the three residuals
    ``|Im(T0² + T_M T_M) 𝟙 + 2 Im T²|``, ``|Im(T0 T) − Re Pc²(T)|`` and
    ``|6 Im T0² − Im tr T²|`` (max norms; the last is the trace of the first).
    """
    t0, T = p.t0, np.asarray(p.t, dtype=complex)
    tt = np.sum(bip_vector(T) ** 2)
    r1 = np.max(np.abs(np.imag(t0 ** 2 + tt) * np.eye(6) + 2 * np.imag(T @ T)))
    r2 = np.max(np.abs(np.imag(t0 * T) - np.real(pfaffian_compound(T, tol=1e-8))))
    r3 = abs(6 * np.imag(t0 ** 2) - np.imag(np.trace(T @ T)))
    return float(r1), float(r2), float(r3)


# ---------------------------------------------------------------------------
# Cayley representation
# ---------------------------------------------------------------------------

def _check_real_antisym(A, tol=EPS_ALG):
    from .errors import NotAntisymmetric
    A = np.asarray(A)
    if A.shape != (6, 6):
        raise NotAntisymmetric("expected a 6×6 matrix")
    if np.iscomplexobj(A):
        if np.max(np.abs(A.imag)) > tol:
            raise NotAntisymmetric("Cayley parameter must be real")
        A = A.real
    if np.max(np.abs(A + A.T)) > tol * max(1.0, np.max(np.abs(A))):
        raise NotAntisymmetric("Cayley parameter must be antisymmetric")
    return np.asarray(A, dtype=float)


def cayley_L_from_A(A, tol=EPS_CAYLEY):
    """Orthogonal matrix ``L = (𝟙 + A)(𝟙 − A)⁻¹`` of a real antisymmetric `A`.

    Raises
    ------
    CayleySingular
        If ``det(𝟙 − A) < tol``.
    """
    A = _check_real_antisym(A)
    I = np.eye(6)
    if determinant(I - A) < tol:
        raise CayleySingular("det(1 − A) vanishes")
    return np.linalg.solve((I - A).T, (I + A).T).T


def cayley_L_from_A_poly(A, tol=EPS_CAYLEY):
    """Polynomial form of the Cayley map (no matrix inverse).

    ``L = 𝟙 + 2A − 2(𝟙 + A)/det(𝟙−A) · [det A 𝟙 − A²((1 − ½ tr A²)𝟙 + A²)]``.
    """
    A = _check_real_antisym(A)
    I = np.eye(6)
    dm = determinant(I - A)
    if dm < tol:
        raise CayleySingular("det(1 − A) vanishes")
    A2 = A @ A
    bracket = determinant(A) * I - A2 @ ((1 - 0.5 * np.trace(A2)) * I + A2)
    return I + 2 * A - 2 * (I + A) @ bracket / dm


def cayley_A_from_L(L, tol=EPS_CAYLEY):
    """Cayley parameter ``A = (L − 𝟙)(L + 𝟙)⁻¹``.

    Raises
    ------
    CayleySingular
        If ``det(𝟙 + L) < tol`` (L has an eigenvalue −1).
    """
    L = check_so6(L)
    I = np.eye(6)
    if abs(determinant(I + L)) < tol:
        raise CayleySingular("L has an eigenvalue −1; det(1 + L) vanishes")
    A = np.linalg.solve((L + I).T, (L - I).T).T
    return 0.5 * (A - A.T)


# ---------------------------------------------------------------------------
# plane decomposition of a real antisymmetric matrix
# ---------------------------------------------------------------------------

def _gram_schmidt_pick(Q, used):
    """Deterministically pick a unit vector in span(Q) ⟂ `used`."""
    n = Q.shape[0]
    best, best_norm = None, -1.0
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        v = Q @ (Q.T @ e)
        for u in used:
            v = v - u * (u @ v)
        nv = np.linalg.norm(v)
        if nv > best_norm + 1e-12:
            best, best_norm = v, nv
    return best / best_norm


def antisym_planes(A, tol=1e-9):
    """Canonical plane bases of a real antisymmetric matrix.

    Parameters
    ----------
    A : (n, n) real antisymmetric
    tol : float
        Eigenvalues with ``|ν| ≤ tol·max(1, ‖A‖)`` count as zero; two ν's
        closer than the same threshold are treated as degenerate.

    Returns
    -------
    list of (nu, u, w)
        ``nu ≥ 0`` in descending order with orthonormal ``u, w`` such that
        ``uᵀ A w = nu`` and ``A`` leaves ``span{u, w}`` invariant.  Zero
        planes (``nu = 0``) come last and complete an orthonormal basis.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    S = -A @ A
    S = 0.5 * (S + S.T)
    evals, evecs = np.linalg.eigh(S)
    evals = np.clip(evals, 0.0, None)
    scale = max(1.0, float(np.max(np.abs(A))) if A.size else 1.0)
    thr = tol * scale
    order = np.argsort(-evals, kind="stable")
    evals, evecs = evals[order], evecs[:, order]
    nus = np.sqrt(evals)
    planes = []
    used = []
    i = 0
    while i < n:
        j = i
        while j + 1 < n and abs(nus[j + 1] - nus[i]) <= thr:
            j += 1
        Q = evecs[:, i:j + 1]
        nu = float(np.mean(nus[i:j + 1]))
        dim = j - i + 1
        local = []
        if nu > thr:
            for _ in range(dim // 2):
                u = _gram_schmidt_pick(Q, local)
                w = -(A @ u) / nu
                w = w - sum((x @ w) * x for x in local + [u]) if local else w - (u @ w) * u
                w /= np.linalg.norm(w)
                local += [u, w]
                planes.append((nu, u, w))
        else:
            for _ in range(dim):
                local.append(_gram_schmidt_pick(Q, local))
            for k in range(0, len(local) - 1, 2):
                planes.append((0.0, local[k], local[k + 1]))
        used += local
        i = j + 1
    return planes


def plane_decompose(A, tol=1e-9):
    """Split `A` into mutually annihilating rank-2 antisymmetric pieces.

    Returns
    -------
    list of (6, 6) arrays
        Nonzero components in descending order of magnitude; they sum to
        `A`, satisfy ``A_k A_l = 0`` for ``k ≠ l``, and each has Pf = 0.
    """
    A = _check_real_antisym(A, tol=1e-9)
    out = []
    for nu, u, w in antisym_planes(A, tol):
        if nu == 0.0:
            continue
        out.append(nu * (np.outer(u, w) - np.outer(w, u)))
    return out


# ---------------------------------------------------------------------------
# Cayley -> SU(4)
# ---------------------------------------------------------------------------

def su4_from_A(A, sign=1, tol=EPS_CAYLEY):
    """Closed-form SU(4) parameters lying over the Cayley image of `A`.

    ``T0 = ±(1 − i Pf A)/√det(𝟙−A)``, ``T = ∓(A − i Pc²(A))/√det(𝟙−A)``.

    Parameters
    ----------
    A : real antisymmetric 6×6
    sign : {+1, −1}
        Selects one of the two preimages ±U.
    """
    A = _check_real_antisym(A)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or −1")
    dm = determinant(np.eye(6) - A)
    if dm < tol:
        raise CayleySingular("det(1 − A) vanishes")
    r = sign / np.sqrt(dm)
    t0 = r * (1 - 1j * pfaffian(A, tol=1e-9))
    T = -r * (A - 1j * pfaffian_compound(A, tol=1e-9))
    return SU4Params(complex(t0), T)


def su4_from_A_planes(A, sign=1, tol=EPS_CAYLEY, basis=None):
    """Same element as :func:`su4_from_A`, built as a product over planes.

    Each decomposable piece ``A_k`` contributes the commuting factor
    ``det(𝟙 − A_k)^{-1/2} (𝟙 − Σ_N (A_k)_N ĉ_N)``.
    """
    b = default_basis() if basis is None else basis
    A = _check_real_antisym(A)
    if determinant(np.eye(6) - A) < tol:
        raise CayleySingular("det(1 − A) vanishes")
    U = sign * b.unit.copy()
    for Ak in plane_decompose(A):
        factor = (b.unit - np.einsum("m,mab->ab", bip_vector(Ak), b.bip))
        U = U @ (factor / np.sqrt(determinant(np.eye(6) - Ak)))
    return U


def A_from_params(p, tol=EPS_CAYLEY):
    """Recover the Cayley parameter ``A = −Re T / Re T0``."""
    if abs(p.t0.real) < tol:
        raise CayleySingular("Re T0 vanishes; no Cayley parameter")
    return -np.real(p.t) / p.t0.real


# ---------------------------------------------------------------------------
# trace route SO(6) -> SU(4): modulus, direction and Z4 phase candidates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LiftCandidates:
    """Four det-1 parameter sets over `L`; ``valid[i]`` marks the true lifts."""

    candidates: tuple
    valid: tuple
    t0_abs2: float
    residuals: tuple


def t0_modulus_squared(L):
    """``|T0|² = [1 + ½(tr L)² − ½ tr L²] / 16``."""
    L = np.asarray(L)
    tr = np.trace(L)
    return float((1 + 0.5 * tr ** 2 - 0.5 * np.trace(L @ L)) / 16.0)


def lift_direction(L):
    """Ratio ``T_M / T0`` from the trace-based formula, as a 6×6 matrix."""
    L = np.asarray(L, dtype=float)
    Lp, Lm = 0.5 * (L + L.T), 0.5 * (L - L.T)
    denom = 1 + 0.5 * np.trace(L) ** 2 - 0.5 * np.trace(L @ L)
    K = Lm @ (np.trace(L) * np.eye(6) - 2 * Lp) - 2j * pfaffian_compound(Lm, tol=1e-8)
    K = 0.5 * (K - K.T)
    return -2.0 * K / denom


def trace_identity_residual(L):
    """Residual of the quartic trace identity satisfied by every L ∈ SO(6)."""
    L = np.asarray(L)
    t1 = np.trace(L)
    L2 = L @ L
    t2, t3, t4 = np.trace(L2), np.trace(L2 @ L), np.trace(L2 @ L2)
    lhs = t1 ** 4 / 6 - t1 ** 2 * t2 + 4.0 / 3.0 * t1 * t3 + 0.5 * t2 ** 2 - t4
    return float(abs(lhs - (2 * t1 ** 2 - 2 * t2)))


def su4_candidates_from_L(L, g=None, tol=EPS_GRP):
    """All four det-1 SU(4) parameter sets produced by the |T0| route.

    The modulus of ``T0`` comes from traces of `L`, the direction ``T/T0``
    from ``L^±`` and ``Pc²(L⁻)``; the remaining phase is fixed only up to
    ``ℤ₄`` by ``det U = 1``.  Each candidate is pushed back through
    :func:`so6_from_su4`; exactly two (``±U``) reproduce `L`.

    Raises
    ------
    DegenerateT0
        If ``|T0|²`` is below `tol`.
    """
    L = check_so6(L)
    t0_abs2 = t0_modulus_squared(L)
    if t0_abs2 < tol:
        raise DegenerateT0("|T0| vanishes; phase route undefined")
    R = lift_direction(L)
    W = SU4Params(1.0, R)
    detW = det_su4(W)
    root = (1.0 / detW) ** 0.25
    cands, valid, res = [], [], []
    for k in range(4):
        t0 = root * 1j ** k
        p = SU4Params(complex(t0), t0 * R)
        U = from_bip_coefficients(p.t0, p.vector)
        Lc = so6_from_su4_complex(U, g)
        r = float(np.max(np.abs(Lc - L)))
        cands.append(p)
        res.append(r)
        valid.append(r <= max(tol, 1e3 * tol * np.sqrt(1.0 / t0_abs2)))
    return LiftCandidates(tuple(cands), tuple(valid), t0_abs2, tuple(res))


# ---------------------------------------------------------------------------
# χ = C₂(L)
# ---------------------------------------------------------------------------

def chi_from_L(L, tol=EPS_INPUT):
    """Second compound ``χ = C₂(L)`` acting on biparavector space.

    Raises
    ------
    NotOrthogonal
    """
    L = check_so6(L, tol)
    return compound(L, 2)


def _pos(m1, m2):
    return BIP_PAIRS.index((m1, m2))


def chi_zero_rows(chi):
    """The five 6×6 antisymmetric matrices ``r_0 ∧ r_k``, k ∈ (−1, 1, 2, 3, 4).

    Rows ``(0,k)`` of χ give ``r_0 ∧ r_k`` directly; row ``(−1,0)`` gives
    ``r_{−1} ∧ r_0`` and is negated.
    """
    chi = np.asarray(chi, dtype=float)
    out = {}
    for k in (-1, 1, 2, 3, 4):
        if k == -1:
            out[k] = -antisym_from_bip(chi[_pos(-1, 0)])
        else:
            out[k] = antisym_from_bip(chi[_pos(0, k)])
    return out


def L_from_chi(chi, tol=EPS_REC):
    """Recover ``L`` (with ``L00 > 0``) from ``χ = C₂(L)``.

    Every row ``(0,k)`` of χ is the simple bivector ``r_0 ∧ r_k`` built from
    two rows of ``L``; the common direction of these five planes is ``±r_0``
    and then ``r_k = −(r_0 ∧ r_k) r_0``.

    Raises
    ------
    NotOrthogonal
        If χ is not orthogonal.
    ZeroL00
        If ``|L00| < tol`` (the sign convention cannot be applied).
    """
    chi = np.asarray(chi, dtype=float)
    if chi.shape != (15, 15) or np.max(np.abs(chi @ chi.T - np.eye(15))) > EPS_INPUT:
        raise NotOrthogonal("χ is not a 15×15 orthogonal matrix")
    planes = chi_zero_rows(chi)
    proj = sum(-(P @ P) for P in planes.values())
    w, v = np.linalg.eigh(0.5 * (proj + proj.T))
    r0 = v[:, -1]
    if abs(r0[slot(0)]) < tol:
        raise ZeroL00("L00 vanishes; sign convention undefined")
    if r0[slot(0)] < 0:
        r0 = -r0
    L = np.zeros((6, 6))
    L[slot(0)] = r0
    for k, P in planes.items():
        L[slot(k)] = -P @ r0
    return L


def L_from_chi_reference(chi, tol=EPS_REC):
    """Independent reconstruction through the 5×5 block ``χ_{0k,0l}``.

    ``|L00| = (det χ00)^{1/4}``; column 0 and row 0 of ``L`` follow from the
    rank-one matrices ``χ00 χ00ᵀ − L00² 𝟙`` and ``χ00ᵀ χ00 − L00² 𝟙``;
    ``L_kl = (χ_{0k,0l} + L_k0 L_0l) / L00``.
    """
    chi = np.asarray(chi, dtype=float)
    ks = (-1, 1, 2, 3, 4)
    C = np.zeros((5, 5))
    for a, k in enumerate(ks):
        for b, l in enumerate(ks):
            C[a, b] = _chi00(chi, k, l)
    d = determinant(C)
    if d <= 0 or d ** 0.25 < tol:
        raise ZeroL00("det χ00 vanishes")
    l00 = d ** 0.25
    G_col = C @ C.T - l00 ** 2 * np.eye(5)
    G_row = C.T @ C - l00 ** 2 * np.eye(5)
    col = _rank_one_factor(G_col)
    row = _rank_one_factor(G_row)
    best, best_err = None, np.inf
    for sc in (1.0, -1.0):
        for sr in (1.0, -1.0):
            L = np.zeros((6, 6))
            L[slot(0), slot(0)] = l00
            for a, k in enumerate(ks):
                L[slot(k), slot(0)] = sc * col[a]
                L[slot(0), slot(k)] = sr * row[a]
            for a, k in enumerate(ks):
                for b, l in enumerate(ks):
                    L[slot(k), slot(l)] = (C[a, b] + sc * col[a] * sr * row[b]) / l00
            err = np.max(np.abs(compound(L, 2) - chi))
            if err < best_err:
                best, best_err = L, err
    return best


def _chi00(chi, k, l):
    """χ_{(0k),(0l)} with the antisymmetric extension for k or l = −1."""
    def pos_sign(k):
        return (_pos(-1, 0), -1.0) if k == -1 else (_pos(0, k), 1.0)
    pk, sk = pos_sign(k)
    pl, sl = pos_sign(l)
    return sk * sl * chi[pk, pl]


def _rank_one_factor(G):
    w, v = np.linalg.eigh(0.5 * (G + G.T))
    vec = v[:, -1] * np.sqrt(max(w[-1], 0.0))
    i = int(np.argmax(np.abs(vec)))
    return vec if vec[i] >= 0 else -vec


def chi_self_duality_residual(chi):
    """Residual of ``χ_PQ = (1/3!) ε_P^{KM} ε_Q^{LN} χ_KL χ_MN``."""
    e = bip_epsilon()
    rhs = np.einsum("pkm,qln,kl,mn->pq", e, e, chi, chi) / 6.0
    return float(np.max(np.abs(rhs - chi)))


# ---------------------------------------------------------------------------
# adjoint representation, exponential map
# ---------------------------------------------------------------------------

def adjoint_rep(U, basis=None, tol=EPS_INPUT):
    """Matrix ``Ad(U)`` with ``U ĉ_M U† = Σ_N Ad(U)_NM ĉ_N``.

    Raises
    ------
    NotSpecialUnitary
    """
    b = default_basis() if basis is None else basis
    U = _check_su4(U, tol)
    conj = np.einsum("ab,mbc,cd->mad", U, b.bip, U.conj().T)
    K = -0.25 * np.einsum("nab,mba->mn", b.bip, conj)
    if np.max(np.abs(K.imag)) > tol:
        raise NotSpecialUnitary("adjoint action is not real")
    return K.real.T


def exp_biparavector(V, basis=None):
    """``exp(Σ_M V_M ĉ_M)`` for a real antisymmetric 6×6 matrix `V`."""
    b = default_basis() if basis is None else basis
    V = _check_real_antisym(V)
    X = np.einsum("m,mab->ab", bip_vector(V), b.bip)
    return expm(X)


def so6_log(L, tol=EPS_INPUT):
    """Real antisymmetric logarithm of a rotation ``L ∈ SO(6)``.

    Uses the real Schur form, in which an orthogonal matrix is block
    diagonal with 2×2 rotations and ±1 entries; pairs of ``−1`` entries are
    joined into rotations by π, so the result is always real.
    """
    L = check_so6(L, tol)
    T, Z = schur(L, output="real")
    n = L.shape[0]
    B = np.zeros((n, n))
    i = 0
    flips = []
    while i < n:
        if i + 1 < n and abs(T[i + 1, i]) > 1e-12:
            B[i, i + 1] = np.arctan2(T[i, i + 1], T[i, i])
            B[i + 1, i] = -B[i, i + 1]
            i += 2
            continue
        if T[i, i] < 0:
            flips.append(i)
        i += 1
    for a, b in zip(flips[::2], flips[1::2]):
        # a π rotation in the (a, b) plane acts as −𝟙 there
        B[a, b], B[b, a] = np.pi, -np.pi
    return Z @ B @ Z.T


def su4_from_L(L, basis=None, tol=EPS_INPUT):
    """One of the two SU(4) lifts ±U of a rotation, valid for every L.

    Unlike the phase-based route this has no degenerate cases: with
    ``B = log L`` the lift is ``exp(−½ Σ_M B_M ĉ_M)``.
    """
    B = so6_log(L, tol)
    return exp_biparavector(-0.5 * B, basis)


# ---------------------------------------------------------------------------
# Östlund-Mele representation
# ---------------------------------------------------------------------------

OSTLUND_INDICES = (-1, 0, 1, 2)


def ostlund_states(basis=None):
    """States ``Ψ_{−1} = a2†a1†|0⟩, Ψ_0 = |0⟩, Ψ_1 = a1†|0⟩, Ψ_2 = a2†|0⟩``."""
    b = default_basis() if basis is None else basis
    f = fock_states(b)
    psi_m1 = b.adag[1] @ b.adag[0] @ b.vacuum
    return np.stack([psi_m1, f[(0, 0)], f[(1, 0)], f[(0, 1)]])


def ostlund_matrix(X, basis=None):
    """``U(X) = Σ_ij X_ij |Ψ_i⟩⟨Ψ_j|`` (a homomorphism in X)."""
    S = ostlund_states(basis)
    return S.T @ np.asarray(X) @ S.conj()


def ostlund_from_matrix(U, basis=None):
    """``X_ij = ⟨Ψ_i| U |Ψ_j⟩``."""
    S = ostlund_states(basis)
    return S.conj() @ np.asarray(U) @ S.T


# table of T-contributions of a unit X_ij; keys (i, j) in Östlund indices,
# values: list of (T label, coefficient × 4); T label None means T0
_OSTLUND_TABLE = {
    (-1, -1): [(None, 1), ((-1, 0), 1j), ((1, 2), 1j), ((3, 4), 1j)],
    (0, 0): [(None, 1), ((-1, 0), 1j), ((1, 2), -1j), ((3, 4), -1j)],
    (1, 1): [(None, 1), ((-1, 0), -1j), ((1, 2), 1j), ((3, 4), -1j)],
    (2, 2): [(None, 1), ((-1, 0), -1j), ((1, 2), -1j), ((3, 4), 1j)],
    (-1, 0): [((1, 3), -1), ((1, 4), 1j), ((2, 3), 1j), ((2, 4), 1)],
    (0, -1): [((1, 3), 1), ((1, 4), 1j), ((2, 3), 1j), ((2, 4), -1)],
    (1, 2): [((1, 3), 1), ((1, 4), 1j), ((2, 3), -1j), ((2, 4), 1)],
    (2, 1): [((1, 3), -1), ((1, 4), 1j), ((2, 3), -1j), ((2, 4), -1)],
    (-1, 1): [((-1, 3), -1), ((-1, 4), 1j), ((0, 3), 1j), ((0, 4), 1)],
    (0, 2): [((-1, 3), -1), ((-1, 4), -1j), ((0, 3), 1j), ((0, 4), -1)],
    (1, -1): [((-1, 3), 1), ((-1, 4), 1j), ((0, 3), 1j), ((0, 4), -1)],
    (2, 0): [((-1, 3), 1), ((-1, 4), -1j), ((0, 3), 1j), ((0, 4), 1)],
    (-1, 2): [((-1, 1), 1), ((-1, 2), -1j), ((0, 1), -1j), ((0, 2), -1)],
    (0, 1): [((-1, 1), -1), ((-1, 2), -1j), ((0, 1), 1j), ((0, 2), -1)],
    (1, 0): [((-1, 1), 1), ((-1, 2), -1j), ((0, 1), 1j), ((0, 2), 1)],
    (2, -1): [((-1, 1), -1), ((-1, 2), -1j), ((0, 1), -1j), ((0, 2), 1)],
}


def ostlund_table():
    """16×16 matrix ``W`` with ``(T0, T_M) = ¼ W · vec(X)``.

    Rows: ``T0`` then the 15 biparavector components; columns: ``X_ij``
    row-major over Östlund indices (−1, 0, 1, 2).  ``W W† = 4·𝟙``.
    """
    W = np.zeros((16, 16), dtype=complex)
    for (i, j), entries in _OSTLUND_TABLE.items():
        col = OSTLUND_INDICES.index(i) * 4 + OSTLUND_INDICES.index(j)
        for label, coeff in entries:
            row = 0 if label is None else 1 + _pos(*label)
            W[row, col] = coeff
    return W


def params_from_ostlund(X):
    """(T0, T) from the Östlund-Mele matrix X by the linear table."""
    vec = 0.25 * ostlund_table() @ np.asarray(X, dtype=complex).reshape(16)
    return SU4Params.from_vector(vec[0], vec[1:])


def ostlund_from_params(p):
    """Östlund-Mele matrix X from (T0, T) by the adjoint table."""
    t = np.concatenate([[p.t0], p.vector])
    return (ostlund_table().conj().T @ t).reshape(4, 4)

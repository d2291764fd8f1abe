"""Concrete matrix representation of the Clifford algebra C(0,4).

Everything is built from six complex antisymmetric 4×4 matrices
``Γ_k⁺`` (k = -1..4).  From them we obtain the paravectors ``ĉ_k``, the
fifteen biparavectors ``ĉ_M``, the two-mode fermion operators and two
commuting quaternion triples.

Index conventions
-----------------
Paravector indices run over ``(-1, 0, 1, 2, 3, 4)`` and are stored at array
slot ``k + 1``.  Biparavector indices are ordered pairs ``(m1, m2)`` with
``m1 < m2``, enumerated lexicographically (15 of them).  The six-index
Levi-Civita symbol is normalized to ``ε_{(-1)01234} = +1`` and indices are
raised and lowered with δ.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial

import numpy as np

from .errors import GammaInvariantViolation, UnsupportedPattern
from .tolerances import EPS_ALG

PARA_INDICES = (-1, 0, 1, 2, 3, 4)
BIP_PAIRS = tuple(combinations(PARA_INDICES, 2))
BIP_SLOTS = tuple((a + 1, b + 1) for a, b in BIP_PAIRS)
_BIP_POS = {pair: i for i, pair in enumerate(BIP_PAIRS)}

#: ordered fermion-monomial labels ``creators|annihilators``
MONOMIAL_LABELS = (
    "0|0", "1|0", "2|0", "0|1", "0|2", "1,2|0", "1|1", "1|2",
    "2|1", "2|2", "0|1,2", "1,2|1", "1,2|2", "1|1,2", "2|1,2", "1,2|1,2",
)


def slot(k):
    """Array slot of paravector index `k` (-1..4)."""
    if k not in PARA_INDICES:
        raise IndexError(f"paravector index {k} outside -1..4")
    return k + 1


def bip_position(m1, m2):
    """Linear position 0..14 of the pair ``(m1, m2)``, ``m1 < m2``."""
    return _BIP_POS[(m1, m2)]


def _perm_sign(p):
    p = list(p)
    sign = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def levi_civita(n):
    """Dense Levi-Civita tensor of rank `n` over slots ``0..n-1``.

    The identity permutation has sign ``+1``.  The returned array is
    read-only and cached.
    """
    eps = np.zeros((n,) * n)
    for p in permutations(range(n)):
        eps[p] = _perm_sign(p)
    eps.setflags(write=False)
    return eps


@lru_cache(maxsize=None)
def bip_epsilon():
    """``ε_{MNP}`` on biparavector positions, shape (15, 15, 15)."""
    e6 = levi_civita(6)
    s = np.array(BIP_SLOTS)
    out = e6[s[:, 0][:, None, None], s[:, 1][:, None, None],
             s[:, 0][None, :, None], s[:, 1][None, :, None],
             s[:, 0][None, None, :], s[:, 1][None, None, :]]
    out = np.ascontiguousarray(out)
    out.setflags(write=False)
    return out


def bip_vector(T):
    """Strict-upper-triangle coefficients ``T_M`` of a 6×6 matrix."""
    T = np.asarray(T)
    s = np.array(BIP_SLOTS)
    return T[s[:, 0], s[:, 1]]


def antisym_from_bip(v):
    """Antisymmetric 6×6 matrix whose upper triangle is the 15-vector `v`."""
    v = np.asarray(v)
    T = np.zeros((6, 6), dtype=np.result_type(v, float))
    s = np.array(BIP_SLOTS)
    T[s[:, 0], s[:, 1]] = v
    T[s[:, 1], s[:, 0]] = -v
    return T


# ---------------------------------------------------------------------------
# Γ-matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GammaSet:
    """The six Γ⁺ matrices and their duals Γ⁻, shape (6, 4, 4) each."""

    plus: np.ndarray
    minus: np.ndarray

    def __post_init__(self):
        for arr in (self.plus, self.minus):
            arr.setflags(write=False)


def _gamma_plus():
    gp = np.zeros((6, 4, 4), dtype=complex)
    gp[0] = [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]
    gp[1] = 1j * np.array([[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]])
    gp[2] = 1j * np.array([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    gp[3] = 1j * np.array([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
    gp[4] = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
    gp[5] = [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]
    return gp


def dual_gamma(gamma_plus):
    """Γ_a⁻ = −½ ε^{abcd} (Γ⁺_c)_{…} — the Hodge dual of each 4×4 matrix.

    Acting on the 4×4 index pair, ``(Γ⁻)_{ab} = −½ Σ_{cd} ε_{abcd} (Γ⁺)_{cd}``.
    """
    e4 = levi_civita(4)
    return -0.5 * np.einsum("abcd,kcd->kab", e4, gamma_plus)


def build_gamma_set():
    """Return the fixed Γ-matrix set of the library.

    Returns
    -------
    GammaSet
        ``plus[k+1]`` is Γ_k⁺; ``minus`` is obtained as the Hodge dual of
        each matrix, which coincides with its Hermitian adjoint.
    """
    gp = _gamma_plus()
    return GammaSet(plus=gp, minus=dual_gamma(gp))


def _check_gamma(g, tol):
    prod = np.einsum("kab,lbc->klac", g.plus, g.minus)
    sym = prod + prod.transpose(1, 0, 2, 3)
    target = 2.0 * np.einsum("kl,ac->klac", np.eye(6), np.eye(4))
    err = np.max(np.abs(sym - target))
    if err > tol:
        raise GammaInvariantViolation(
            f"Γ⁺Γ⁻ + Γ⁺Γ⁻ ≠ 2δ1 (max deviation {err:.3e})")


# ---------------------------------------------------------------------------
# Operator basis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OperatorBasis:
    """Fixed table of operators on the two-mode Fock space ℂ⁴.

    Attributes
    ----------
    unit : (4, 4) identity
    para : (6, 4, 4) paravectors ĉ_k at slot k+1
    bip : (15, 4, 4) biparavectors ĉ_M in `BIP_PAIRS` order
    a, adag : (2, 4, 4) annihilators a_1, a_2 and their adjoints
    vacuum : (4,) normalized state annihilated by a_1 and a_2
    gamma : the GammaSet the basis was built from
    """

    unit: np.ndarray
    para: np.ndarray
    bip: np.ndarray
    a: np.ndarray
    adag: np.ndarray
    vacuum: np.ndarray
    gamma: GammaSet

    def __post_init__(self):
        for arr in (self.unit, self.para, self.bip, self.a, self.adag, self.vacuum):
            arr.setflags(write=False)

    def c(self, k):
        """Paravector ĉ_k for k in -1..4."""
        return self.para[slot(k)]

    def cb(self, m1, m2):
        """Biparavector ĉ_(m1,m2); antisymmetric in its indices."""
        if m1 == m2:
            return np.zeros((4, 4), dtype=complex)
        if m1 > m2:
            return -self.bip[bip_position(m2, m1)]
        return self.bip[bip_position(m1, m2)]

    @property
    def number(self):
        """Number operators n_1, n_2, shape (2, 4, 4)."""
        return np.einsum("kab,kbc->kac", self.adag, self.a)


def build_operator_basis(g=None, tol=EPS_ALG):
    """Build paravectors, biparavectors and fermion operators from `g`.

    Parameters
    ----------
    g : GammaSet, optional
        Defaults to :func:`build_gamma_set`.
    tol : float
        Tolerance for the Γ anticommutator check.

    Raises
    ------
    GammaInvariantViolation
        If ``Γ_k⁺Γ_l⁻ + Γ_l⁺Γ_k⁻ ≠ 2δ_kl`` beyond `tol`.
    """
    if g is None:
        g = build_gamma_set()
    _check_gamma(g, tol)
    para = -np.einsum("ab,kbc->kac", g.plus[1], g.minus)
    bip = np.empty((15, 4, 4), dtype=complex)
    for i, (s1, s2) in enumerate(BIP_SLOTS):
        c1, c2 = para[s1], para[s2]
        bip[i] = 0.5 * (c1.conj().T @ c2 - c2.conj().T @ c1)
    a = np.empty((2, 4, 4), dtype=complex)
    for k in (1, 2):
        a[k - 1] = 0.5 * (para[slot(2 * k)] - 1j * para[slot(2 * k - 1)])
    adag = a.conj().transpose(0, 2, 1)
    # vacuum: common kernel of a1, a2 = lowest state of n1 + n2
    n_tot = adag[0] @ a[0] + adag[1] @ a[1]
    w, v = np.linalg.eigh(n_tot)
    vac = v[:, 0]
    vac = vac * np.exp(-1j * np.angle(vac[np.argmax(np.abs(vac))]))
    return OperatorBasis(unit=np.eye(4, dtype=complex), para=para, bip=bip,
                         a=a, adag=adag, vacuum=vac, gamma=g)


@lru_cache(maxsize=1)
def default_basis():
    """The cached library-wide operator basis."""
    return build_operator_basis()


def fock_states(basis=None):
    """Occupation-number states ``{(n1, n2): vector}`` built from the vacuum."""
    b = default_basis() if basis is None else basis
    vac = b.vacuum
    return {
        (0, 0): vac,
        (1, 0): b.adag[0] @ vac,
        (0, 1): b.adag[1] @ vac,
        (1, 1): b.adag[0] @ b.adag[1] @ vac,
    }


def fermion_monomials(basis=None):
    """Map monomial labels ``"creators|annihilators"`` to 4×4 matrices.

    ``"1,2|1"`` means ``a_1† a_2† a_1`` — creators in ascending order,
    followed by annihilators in ascending order.
    """
    b = default_basis() if basis is None else basis
    out = {}
    for label in MONOMIAL_LABELS:
        cre, ann = label.split("|")
        m = b.unit.copy()
        for tok in cre.split(","):
            if tok != "0":
                m = m @ b.adag[int(tok) - 1]
        for tok in ann.split(","):
            if tok != "0":
                m = m @ b.a[int(tok) - 1]
        out[label] = m
    return out


# ---------------------------------------------------------------------------
# Expansion in the 16-element basis
# ---------------------------------------------------------------------------

def bip_coefficients(X, basis=None):
    """Decompose a 4×4 matrix as ``t0·𝟙 + Σ_M t_M ĉ_M``.

    Uses ``tr(ĉ_M ĉ_N) = −4δ_MN``.

    Returns
    -------
    t0 : complex
    t : (15,) complex
    """
    b = default_basis() if basis is None else basis
    X = np.asarray(X)
    t0 = np.trace(X) / 4.0
    t = -0.25 * np.einsum("mab,ba->m", b.bip, X)
    return t0, t


def from_bip_coefficients(t0, t, basis=None):
    """Inverse of :func:`bip_coefficients`."""
    b = default_basis() if basis is None else basis
    return t0 * b.unit + np.einsum("m,mab->ab", np.asarray(t), b.bip)


@lru_cache(maxsize=1)
def _grade_table():
    # (grade, index within grade, sign) such that ĉ_M = sign · monomial
    # monomials: grade1 c_m; grade2 c_m c_n; grade3 i c_m c_n c_p; grade4 i c1c2c3c4
    table = {}
    pairs2 = list(combinations(range(1, 5), 2))
    triples = list(combinations(range(1, 5), 3))
    for pos, (m1, m2) in enumerate(BIP_PAIRS):
        if m1 == -1 and m2 == 0:
            table[pos] = (4, 0, 1.0)
        elif m1 == -1:
            missing = tuple(x for x in range(1, 5) if x != m2)
            sign = -1.0 if m2 in (1, 3) else 1.0
            table[pos] = (3, triples.index(missing), sign)
        elif m1 == 0:
            table[pos] = (1, m2 - 1, -1.0)
        else:
            table[pos] = (2, pairs2.index((m1, m2)), -1.0)
    return table


def monomial_coefficients(t):
    """Regroup a biparavector coefficient vector by Clifford grade.

    Parameters
    ----------
    t : (15,) array
        Coefficients ``t_M`` of ``Σ t_M ĉ_M``.

    Returns
    -------
    dict
        ``{1: (4,), 2: (6,), 3: (4,), 4: (1,)}`` — coefficients of
        ``c_m``, ``c_m c_n`` (m<n), ``i c_m c_n c_p`` (m<n<p) and
        ``i c_1 c_2 c_3 c_4``, all lexicographic.
    """
    t = np.asarray(t)
    out = {1: np.zeros(4, t.dtype), 2: np.zeros(6, t.dtype),
           3: np.zeros(4, t.dtype), 4: np.zeros(1, t.dtype)}
    for pos, (grade, idx, sign) in _grade_table().items():
        out[grade][idx] += sign * t[pos]
    return out


def bip_from_monomial_coefficients(grades):
    """Inverse of :func:`monomial_coefficients`."""
    dtype = np.result_type(*[np.asarray(v) for v in grades.values()])
    t = np.zeros(15, dtype=dtype)
    for pos, (grade, idx, sign) in _grade_table().items():
        t[pos] = sign * np.asarray(grades[grade])[idx]
    return t


# ---------------------------------------------------------------------------
# Biparavector product structure
# ---------------------------------------------------------------------------

def _as_pair(P):
    if isinstance(P, (int, np.integer)):
        return BIP_PAIRS[int(P)]
    return tuple(P)


def _signed_pos(a, b):
    """(position, sign) of ĉ_(a,b) with the antisymmetric extension."""
    if a == b:
        return None, 0.0
    if a < b:
        return bip_position(a, b), 1.0
    return bip_position(b, a), -1.0


def bip_product_structure(P, Q):
    """Closed-form expansion of ``ĉ_P ĉ_Q``.

    Parameters
    ----------
    P, Q : int or (m1, m2)
        Biparavector position or index pair.

    Returns
    -------
    scalar : complex
        Coefficient of 𝟙.
    coeffs : (15,) complex
        Coefficients over ĉ_N.
    """
    p1, p2 = _as_pair(P)
    q1, q2 = _as_pair(Q)
    d = lambda x, y: 1.0 if x == y else 0.0  # noqa: E731
    scalar = -d(p1, q1) * d(p2, q2) + d(p1, q2) * d(p2, q1)
    coeffs = np.zeros(15, dtype=complex)

    def add(weight, a, b):
        if weight == 0.0:
            return
        pos, s = _signed_pos(a, b)
        if pos is not None:
            coeffs[pos] += weight * s

    add(-d(p1, q1), p2, q2)
    add(-d(p2, q2), p1, q1)
    add(d(p1, q2), p2, q1)
    add(d(p2, q1), p1, q2)
    iP = _signed_pos(p1, p2)
    iQ = _signed_pos(q1, q2)
    if iP[0] is not None and iQ[0] is not None:
        coeffs += -1j * iP[1] * iQ[1] * bip_epsilon()[iP[0], iQ[0]]
    return complex(scalar), coeffs


def bip_commutator_structure(P, Q):
    """Coefficients over ĉ_N of ``[ĉ_P, ĉ_Q]`` (the scalar part vanishes)."""
    s1, c1 = bip_product_structure(P, Q)
    s2, c2 = bip_product_structure(Q, P)
    return c1 - c2


def bip_anticommutator_structure(P, Q):
    """``(scalar, coeffs)`` of ``{ĉ_P, ĉ_Q}``."""
    s1, c1 = bip_product_structure(P, Q)
    s2, c2 = bip_product_structure(Q, P)
    return s1 + s2, c1 + c2


# ---------------------------------------------------------------------------
# Quaternions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuaternionPair:
    """Two commuting quaternion triples (I, J, K) realized as 4×4 matrices."""

    set1: tuple
    set2: tuple
    variant: str


def quaternion_pair(basis=None, variant="symmetric"):
    """Two mutually commuting copies of the quaternion units.

    Parameters
    ----------
    basis : OperatorBasis, optional
    variant : {"symmetric", "gamma"}
        ``symmetric`` mixes grade-1 and grade-3 elements so both copies
        look alike; ``gamma`` reads the units directly off the Γ⁺ matrices.
    """
    b = default_basis() if basis is None else basis
    c = b.c
    if variant == "symmetric":
        r = 1.0 / np.sqrt(2.0)
        I1 = r * (c(1) + 1j * c(2) @ c(3) @ c(4))
        J1 = r * (c(2) - 1j * c(1) @ c(3) @ c(4))
        K1 = c(1) @ c(2)
        I2 = r * (c(3) - 1j * c(1) @ c(2) @ c(4))
        J2 = r * (c(4) + 1j * c(1) @ c(2) @ c(3))
        K2 = c(3) @ c(4)
    elif variant == "gamma":
        gp = b.gamma.plus
        # orientation chosen so that I J = K holds within the first copy
        I1, J1, K1 = -1j * gp[slot(2)], 1j * gp[slot(1)], -1j * gp[slot(0)]
        I2, J2, K2 = gp[slot(3)], gp[slot(4)], gp[slot(-1)]
    else:
        raise ValueError(f"unknown quaternion variant {variant!r}")
    return QuaternionPair(set1=(I1, J1, K1), set2=(I2, J2, K2), variant=variant)


# ---------------------------------------------------------------------------
# Closed-form traces
# ---------------------------------------------------------------------------

def _delta(a, b):
    return 1.0 if a == b else 0.0


def _trace4(k, l, m, n):
    d = _delta
    return 4.0 * (d(k, l) * d(m, n) - d(k, m) * d(l, n) + d(k, n) * d(l, m))


def _trace6(k, l, m, n, p, q):
    d = _delta
    e = levi_civita(6)[k + 1, l + 1, m + 1, n + 1, p + 1, q + 1]
    val = (1j * e
           + d(k, l) * (d(m, n) * d(p, q) - d(m, p) * d(n, q) + d(m, q) * d(n, p))
           - d(k, m) * (d(l, n) * d(p, q) - d(l, p) * d(n, q) + d(l, q) * d(n, p))
           + d(k, n) * (d(l, m) * d(p, q) - d(l, p) * d(m, q) + d(l, q) * d(m, p))
           - d(k, p) * (d(l, m) * d(n, q) - d(l, n) * d(m, q) + d(l, q) * d(m, n))
           + d(k, q) * (d(l, m) * d(n, p) - d(l, n) * d(m, p) + d(l, p) * d(m, n)))
    return 4.0 * val


def closed_trace(indices, daggers=None):
    """Closed-form trace of an alternating product of paravectors.

    Parameters
    ----------
    indices : sequence of int
        Paravector indices (-1..4), at most six.
    daggers : sequence of bool, optional
        ``True`` where the factor is ``ĉ_k†``.  Defaults to the pattern
        ``†, ·, †, ·, …``.  The pattern must alternate; products that
        start with an undaggered factor are rotated cyclically, and odd
        lengths are padded with ``ĉ_0 = −𝟙``.

    Returns
    -------
    complex

    Raises
    ------
    UnsupportedPattern
        For non-alternating patterns or more than six factors.
    """
    idx = [int(k) for k in indices]
    for k in idx:
        if k not in PARA_INDICES:
            raise UnsupportedPattern(f"index {k} outside -1..4")
    if daggers is None:
        daggers = [i % 2 == 0 for i in range(len(idx))]
    dg = [bool(x) for x in daggers]
    if len(dg) != len(idx):
        raise UnsupportedPattern("daggers and indices differ in length")
    if len(idx) > 6:
        raise UnsupportedPattern("closed forms exist for at most six factors")
    if any(dg[i] == dg[i + 1] for i in range(len(dg) - 1)):
        raise UnsupportedPattern("conjugation pattern must alternate")
    sign = 1.0
    if len(idx) % 2 == 1:
        # X = −X ĉ_0 = −ĉ_0† X  (ĉ_0 = ĉ_0† = −𝟙)
        if dg[-1]:
            idx, dg = idx + [0], dg + [False]
        else:
            idx, dg = [0] + idx, [True] + dg
        sign = -1.0
    if not idx:
        return complex(4.0 * sign)
    if not dg[0]:
        idx, dg = idx[1:] + idx[:1], dg[1:] + dg[:1]
    if len(idx) == 2:
        val = 4.0 * _delta(*idx)
    elif len(idx) == 4:
        val = _trace4(*idx)
    else:
        val = _trace6(*idx)
    return complex(sign * val)


def direct_trace(indices, daggers=None, basis=None):
    """Matrix-product trace; reference for :func:`closed_trace`."""
    b = default_basis() if basis is None else basis
    if daggers is None:
        daggers = [i % 2 == 0 for i in range(len(indices))]
    m = b.unit
    for k, dg in zip(indices, daggers):
        ck = b.c(k)
        m = m @ (ck.conj().T if dg else ck)
    return complex(np.trace(m))


# ---------------------------------------------------------------------------
# Identity residuals (used by tests, acceptance and the CLI self-test)
# ---------------------------------------------------------------------------

def hurwitz_radon_residual(basis=None):
    """max |ĉ_k†ĉ_l + ĉ_l†ĉ_k − 2δ_kl 𝟙| over all 36 pairs."""
    b = default_basis() if basis is None else basis
    cd = b.para.conj().transpose(0, 2, 1)
    prod = np.einsum("kab,lbc->klac", cd, b.para)
    sym = prod + prod.transpose(1, 0, 2, 3)
    target = 2.0 * np.einsum("kl,ac->klac", np.eye(6), np.eye(4))
    return float(np.max(np.abs(sym - target)))


def pentade_residual(basis=None):
    """max over m of |ĉ_m + (i/5!) ε_m^{npqrs} ĉ_n ĉ_p† ĉ_q ĉ_r† ĉ_s|."""
    b = default_basis() if basis is None else basis
    c = b.para
    cd = c.conj().transpose(0, 2, 1)
    e6 = levi_civita(6)
    worst = 0.0
    for m in range(6):
        acc = np.zeros((4, 4), dtype=complex)
        rest = [x for x in range(6) if x != m]
        for perm in permutations(rest):
            n, p, q, r, s = perm
            acc += e6[(m,) + perm] * (c[n] @ cd[p] @ c[q] @ cd[r] @ c[s])
        rhs = -(1j / factorial(5)) * acc
        worst = max(worst, float(np.max(np.abs(c[m] - rhs))))
    return worst


def pauli_identity_residual(basis=None):
    """max |Σ_N (ĉ_N)_ab (ĉ_N)_cd − (δ_ab δ_cd − 4 δ_ad δ_cb)| over 256 tuples."""
    b = default_basis() if basis is None else basis
    lhs = np.einsum("nab,ncd->abcd", b.bip, b.bip)
    I = np.eye(4)
    rhs = np.einsum("ab,cd->abcd", I, I) - 4.0 * np.einsum("ad,cb->abcd", I, I)
    return float(np.max(np.abs(lhs - rhs)))


def product_structure_residual(basis=None):
    """max residual of the closed-form ĉ_Pĉ_Q expansion over 225 pairs."""
    b = default_basis() if basis is None else basis
    worst = 0.0
    for P in range(15):
        for Q in range(15):
            s, co = bip_product_structure(P, Q)
            recon = from_bip_coefficients(s, co, b)
            worst = max(worst, float(np.max(np.abs(recon - b.bip[P] @ b.bip[Q]))))
    return worst

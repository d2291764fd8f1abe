"""Normal form of an arbitrary Hermitian two-mode fermion Hamiltonian.

A Hamiltonian ``H = Σ_X h^X m_X`` over the 16 fermion monomials is, up to
its trace part, a real combination of biparavectors::

    H = c0·𝟙 + (i/2) Σ_{k<l} Y_kl ĉ_kl ,

with ``Y`` real antisymmetric 6×6.  A rotation ``L ∈ SO(6)`` brings ``Y``
to the block form ``Z = L Y Lᵀ`` with planes ``(−1,0)``, ``(1,2)``,
``(3,4)`` carrying ``ν₋₁₀, ν₁₂, ν₃₄``; lifting ``L`` to SU(4) gives the
quasi-particles in which ``H`` is diagonal.

Slot convention: the paravector indices ``−1, 0, 1, 2, 3, 4`` occupy array
positions ``0..5``.
"""

from dataclasses import dataclass, field

import numpy as np

from .clifford_core import (
    BIP_PAIRS, MONOMIAL_LABELS, bip_coefficients, default_basis,
    fermion_monomials, slot,
)
from .errors import NotAntisymmetric, NotHermitian
from .exterior_algebra import pfaffian
from .group_maps import antisym_planes, su4_from_L
from .tolerances import EPS_ALG, EPS_DIAG

_LPOS = {lab: i for i, lab in enumerate(MONOMIAL_LABELS)}


# ---------------------------------------------------------------------------
# Coefficient container
# ---------------------------------------------------------------------------

def _split(label):
    cre, ann = label.split("|")
    parse = lambda s: tuple(int(t) for t in s.split(",") if t != "0")  # noqa: E731
    return parse(cre), parse(ann)


def _join(cre, ann):
    fmt = lambda t: ",".join(str(x) for x in t) if t else "0"  # noqa: E731
    return f"{fmt(cre)}|{fmt(ann)}"


def _sorted_sign(seq):
    """Sign of the permutation sorting `seq` (all entries distinct)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def adjoint_label(label):
    """Label of ``m_X†`` and the sign in ``m_X† = ± m_{X†}``.

    ``(a†_C a_A)† = a†_{rev A} a_{rev C}``; reversing a pair of
    anticommuting operators costs a sign.
    """
    cre, ann = _split(label)
    sign = _sorted_sign(ann[::-1]) * _sorted_sign(cre[::-1])
    return _join(tuple(sorted(ann)), tuple(sorted(cre))), sign


def exchange_label(label):
    """Label and sign of a monomial under the mode swap ``a_1 ↔ a_2``."""
    swap = {1: 2, 2: 1}
    cre, ann = _split(label)
    cre2 = tuple(swap[x] for x in cre)
    ann2 = tuple(swap[x] for x in ann)
    sign = _sorted_sign(cre2) * _sorted_sign(ann2)
    return _join(tuple(sorted(cre2)), tuple(sorted(ann2))), sign


@dataclass(frozen=True)
class HamiltonianCoeffs:
    """The 16 complex coefficients ``h^X`` keyed by monomial label."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=complex).reshape(16)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __getitem__(self, label):
        return self.values[_LPOS[label]]

    def as_dict(self):
        return {lab: self.values[i] for i, lab in enumerate(MONOMIAL_LABELS)}

    @classmethod
    def from_dict(cls, d):
        """Build from ``{label: value}``; missing labels are zero."""
        v = np.zeros(16, dtype=complex)
        for lab, x in d.items():
            if lab not in _LPOS:
                raise KeyError(f"unknown monomial label {lab!r}")
            v[_LPOS[lab]] = x
        return cls(v)

    def to_json(self):
        return {"h": {lab: [float(z.real), float(z.imag)]
                      for lab, z in self.as_dict().items()}}

    @classmethod
    def from_json(cls, obj):
        raw = obj["h"] if "h" in obj else obj
        d = {}
        for lab, z in raw.items():
            d[lab] = complex(z[0], z[1]) if isinstance(z, (list, tuple)) else complex(z)
        return cls.from_dict(d)

    def exchanged(self):
        """Coefficients of the same operator written after ``a_1 ↔ a_2``."""
        d = {}
        for lab, z in self.as_dict().items():
            lab2, sign = exchange_label(lab)
            d[lab2] = sign * z
        return HamiltonianCoeffs.from_dict(d)

    def symmetrized(self):
        """Mode-exchange symmetric part ``½(h + swap h)``."""
        return HamiltonianCoeffs(0.5 * (self.values + self.exchanged().values))


def random_hamiltonian(rng, scale=1.0):
    """Random coefficients satisfying all hermiticity relations."""
    d = {}
    for lab in MONOMIAL_LABELS:
        partner, sign = adjoint_label(lab)
        if partner == lab:
            d[lab] = scale * rng.normal()
        elif _LPOS[lab] < _LPOS[partner]:
            z = scale * complex(rng.normal(), rng.normal())
            d[lab] = z
            d[partner] = sign * np.conj(z)
    return HamiltonianCoeffs.from_dict(d)


# ---------------------------------------------------------------------------
# Hermiticity
# ---------------------------------------------------------------------------

def hermiticity_relations():
    """The ten independent relations behind ``H = H†``.

    Returns
    -------
    list of (label, partner, sign)
        Each reads ``h^label = sign · conj(h^partner)``.  Self-adjoint
        monomials (partner == label) give the four reality conditions.
    """
    out = []
    seen = set()
    for lab in MONOMIAL_LABELS:
        partner, sign = adjoint_label(lab)
        key = frozenset((lab, partner))
        if key in seen:
            continue
        seen.add(key)
        out.append((lab, partner, sign))
    return out


def validate_hermiticity(h, tol=EPS_ALG):
    """Check the ten hermiticity relations.

    Returns
    -------
    ok : bool
    residuals : dict
        ``"h[label] = ±conj h[partner]"`` → absolute residual.
    """
    if not isinstance(h, HamiltonianCoeffs):
        h = HamiltonianCoeffs.from_dict(h)
    res = {}
    for lab, partner, sign in hermiticity_relations():
        r = abs(h[lab] - sign * np.conj(h[partner]))
        tag = "+" if sign > 0 else "-"
        res[f"h[{lab}] = {tag}conj h[{partner}]"] = float(r)
    scale = max(1.0, float(np.max(np.abs(h.values))))
    ok = all(r <= tol * scale for r in res.values())
    return ok, res


def _require_hermitian(h, tol=EPS_ALG):
    if not isinstance(h, HamiltonianCoeffs):
        h = HamiltonianCoeffs.from_dict(h)
    ok, res = validate_hermiticity(h, tol)
    if not ok:
        worst = max(res, key=res.get)
        raise NotHermitian(f"hermiticity violated: {worst} off by {res[worst]:.2e}")
    return h


def hamiltonian_matrix(h, basis=None, tol=EPS_ALG):
    """Direct 4×4 matrix ``Σ_X h^X m_X`` on the Fock space.

    Raises
    ------
    NotHermitian
    """
    h = _require_hermitian(h, tol)
    mons = fermion_monomials(basis)
    return sum(h[lab] * mons[lab] for lab in MONOMIAL_LABELS)


# ---------------------------------------------------------------------------
# Biparavector form
# ---------------------------------------------------------------------------

def trace_offset(h):
    """``c0 = tr H / 4 = h^(0|0) + ½h^(1|1) + ½h^(2|2) − ¼h^(1,2|1,2)``."""
    return float(np.real(h["0|0"] + 0.5 * h["1|1"] + 0.5 * h["2|2"]
                         - 0.25 * h["1,2|1,2"]))


def y_matrix(h, tol=EPS_ALG):
    """Real antisymmetric ``Y`` and trace offset of a Hermitian Hamiltonian.

    Closed-form entries (upper triangle; ``(k, l)`` are paravector
    indices).  The diagonal number terms pick up ``−½h^(1,2|1,2)`` since
    ``a₁†a₂†a₁a₂ = −n₁n₂`` feeds the ``n₁`` and ``n₂`` biparavectors.

    Returns
    -------
    Y : (6, 6) real antisymmetric
    offset : float
    """
    h = _require_hermitian(h, tol)
    re, im = np.real, np.imag
    g = h.__getitem__
    Y = np.zeros((6, 6))

    def put(k, l, v):
        Y[slot(k), slot(l)] = v

    put(-1, 0, -0.5 * re(g("1,2|1,2")))
    put(-1, 1, -im(g("1,2|2")))
    put(-1, 2, re(g("1,2|2")))
    put(-1, 3, im(g("1,2|1")))
    put(-1, 4, -re(g("1,2|1")))
    put(0, 1, re(2 * g("1|0") + g("1,2|2")))
    put(0, 2, im(2 * g("1|0") + g("1,2|2")))
    put(0, 3, re(2 * g("2|0") - g("1,2|1")))
    put(0, 4, im(2 * g("2|0") - g("1,2|1")))
    put(1, 2, re(g("1|1")) - 0.5 * re(g("1,2|1,2")))
    put(1, 3, im(g("1,2|0") + g("1|2")))
    put(1, 4, -re(g("1,2|0") - g("1|2")))
    put(2, 3, -re(g("1,2|0") + g("1|2")))
    put(2, 4, -im(g("1,2|0") - g("1|2")))
    put(3, 4, re(g("2|2")) - 0.5 * re(g("1,2|1,2")))
    return Y - Y.T, trace_offset(h)


def y_from_matrix(H, basis=None):
    """Projection route: ``Y_M = −2i·t_M`` from ``H = t0 + Σ t_M ĉ_M``.

    Returns
    -------
    Y : (6, 6) real antisymmetric
    offset : float
    imag_residual : float
        Size of the discarded imaginary parts (zero for Hermitian H).
    """
    t0, t = bip_coefficients(H, basis)
    y = -2j * t
    Y = np.zeros((6, 6))
    for pos, (m1, m2) in enumerate(BIP_PAIRS):
        Y[slot(m1), slot(m2)] = y[pos].real
    imag = max(float(np.max(np.abs(y.imag))), abs(float(np.imag(t0))))
    return Y - Y.T, float(np.real(t0)), imag


def biparavector_form(Y, offset, basis=None):
    """``offset·𝟙 + (i/2) Σ_{k<l} Y_kl ĉ_kl`` as a 4×4 matrix."""
    b = default_basis() if basis is None else basis
    y = np.array([Y[slot(m1), slot(m2)] for m1, m2 in BIP_PAIRS])
    return offset * b.unit + 0.5j * np.einsum("m,mab->ab", y, b.bip)


# ---------------------------------------------------------------------------
# Block diagonalization
# ---------------------------------------------------------------------------

# slot pairs of the block form, in (interaction, mode 1, mode 2) order
_BLOCKS = ((0, 1), (2, 3), (4, 5))


@dataclass
class SpectralData:
    """Result of bringing ``Y`` to block form.

    Attributes
    ----------
    nu : (3,) float
        ``(ν₋₁₀, ν₁₂, ν₃₄)``; ``ν₁₂, ν₃₄ ≥ 0`` and ``ν₋₁₀`` carries the
        sign of ``Pf Y`` (all three cannot be nonnegative when ``Pf Y < 0``
        and ``det L = +1``).
    offset : float
        Trace offset ``c0 = tr H / 4``.
    L : (6, 6) SO(6) matrix with ``Z = L Y Lᵀ`` in block form.
    Z : (6, 6) block-form matrix.
    rank : int
        Number of nonzero ν's.
    degenerate : bool
        ``ν₁₂ ≈ ν₃₄``.
    separable : bool
        ``ν₋₁₀ ≈ 0``; the quasi-particles then do not interact.
    """

    nu: np.ndarray
    offset: float
    L: np.ndarray
    Z: np.ndarray
    rank: int
    degenerate: bool
    separable: bool
    residuals: dict = field(default_factory=dict)

    @property
    def normal_constant(self):
        """``K′ = c0 − ½ν₁₂ − ½ν₃₄ + ½ν₋₁₀`` (vacuum energy of H′)."""
        n10, n12, n34 = self.nu
        return self.offset - 0.5 * n12 - 0.5 * n34 + 0.5 * n10

    def levels(self):
        """Eigenvalues ``c0 + ½(ν₁₂s₁ + ν₃₄s₂ + ν₋₁₀s₁s₂)``, sorted."""
        n10, n12, n34 = self.nu
        vals = [self.offset + 0.5 * (n12 * s1 + n34 * s2 + n10 * s1 * s2)
                for s1 in (1, -1) for s2 in (1, -1)]
        return np.sort(vals)

    def to_json(self):
        return {
            "nu": {"(-1,0)": float(self.nu[0]), "(1,2)": float(self.nu[1]),
                   "(3,4)": float(self.nu[2])},
            "offset": float(self.offset),
            "normal_constant": float(self.normal_constant),
            "rank": int(self.rank),
            "degenerate": bool(self.degenerate),
            "separable": bool(self.separable),
            "L": self.L.tolist(),
            "Z": self.Z.tolist(),
            "levels": self.levels().tolist(),
        }


def _plane_weight(u, w, block):
    idx = list(block)
    return float(np.sum(u[idx] ** 2) + np.sum(w[idx] ** 2))


def _pick(planes, block, tol):
    weights = [_plane_weight(u, w, block) for _, u, w in planes]
    best = max(weights)
    # planes arrive in descending ν, so the first near-maximal one wins ties
    for i, wgt in enumerate(weights):
        if wgt >= best - tol:
            return i
    return 0  # pragma: no cover


def block_form(nu):
    """Block matrix with ``+ν`` above the diagonal in each slot pair."""
    Z = np.zeros((6, 6))
    for v, (p, q) in zip(nu, _BLOCKS):
        Z[p, q], Z[q, p] = v, -v
    return Z


def block_diagonalize(Y, offset=0.0, tol=EPS_DIAG):
    """Rotate a real antisymmetric 6×6 ``Y`` into block form.

    Planes come from :func:`antisym_planes`; the one overlapping most with
    the canonical ``(−1,0)`` plane is assigned to the interaction slot
    (ties go to the larger ν), then the one overlapping most with
    ``(1,2)`` takes the first mode.  If ``det L = −1`` the orientation is
    repaired inside a zero plane when there is one, otherwise by reversing
    the interaction plane (which negates ``ν₋₁₀``).

    Parameters
    ----------
    Y : (6, 6) real antisymmetric
    offset : float
        Trace offset carried along into the result.
    tol : float

    Returns
    -------
    SpectralData
    """
    Y = np.asarray(Y)
    if np.iscomplexobj(Y):
        if np.max(np.abs(Y.imag)) > tol:
            raise NotAntisymmetric("Y must be real")
        Y = Y.real
    Y = np.asarray(Y, dtype=float)
    scale = max(1.0, float(np.max(np.abs(Y))))
    if Y.shape != (6, 6) or np.max(np.abs(Y + Y.T)) > tol * scale:
        raise NotAntisymmetric("Y must be a real antisymmetric 6×6 matrix")
    Y = 0.5 * (Y - Y.T)

    planes = list(antisym_planes(Y, tol))
    chosen = []
    for block in _BLOCKS[:2]:
        i = _pick(planes, block, 1e-9)
        chosen.append(planes.pop(i))
    chosen.append(planes.pop(0))

    nus = [p[0] for p in chosen]
    rows = []
    for _, u, w in chosen:
        rows += [u, w]
    L = np.array(rows)
    if np.linalg.det(L) < 0:
        zero = [k for k, v in enumerate(nus) if v <= tol * scale]
        if zero:
            k = zero[-1]
            L[2 * k + 1] *= -1
        else:
            L[[0, 1]] = L[[1, 0]]
            nus[0] = -nus[0]
    Z = L @ Y @ L.T
    nu = np.array([Z[p, q] for p, q in _BLOCKS])
    thr = tol * scale
    nu[np.abs(nu) <= thr] = 0.0
    target = block_form(nu)
    residuals = {
        "block_form": float(np.max(np.abs(Z - target))),
        "orthogonality": float(np.max(np.abs(L @ L.T - np.eye(6)))),
        "det": float(abs(np.linalg.det(L) - 1.0)),
    }
    return SpectralData(
        nu=nu, offset=float(offset), L=L, Z=target,
        rank=int(np.sum(np.abs(nu) > thr)),
        degenerate=bool(abs(nu[1] - nu[2]) <= thr),
        separable=bool(abs(nu[0]) <= thr),
        residuals=residuals,
    )


# ---------------------------------------------------------------------------
# Invariants and the characteristic cubic
# ---------------------------------------------------------------------------

@dataclass
class CharacteristicData:
    """Trace invariants of ``Y`` and the roots of its reduced cubic.

    ``x³ − ½t₂x² + ⅛(t₂² − 2t₄)x + det Y = 0`` in ``x = λ²`` has roots
    ``−ν²`` for the three planes.
    """

    tr2: float
    tr4: float
    det: float
    pf: float
    coefficients: tuple
    roots: np.ndarray
    discriminant: float
    degenerate_pair: tuple = None


def _real_cubic_roots(a2, a1, a0):
    """Roots of ``x³ + a2 x² + a1 x + a0`` known to be real (trigonometric)."""
    shift = a2 / 3.0
    p = a1 - a2 * a2 / 3.0
    q = 2.0 * a2 ** 3 / 27.0 - a2 * a1 / 3.0 + a0
    if p >= 0.0:
        # only possible for a triple root (p = q = 0) up to rounding
        return np.full(3, -shift)
    m = 2.0 * np.sqrt(-p / 3.0)
    arg = np.clip(3.0 * q / (p * m), -1.0, 1.0)
    theta = np.arccos(arg) / 3.0
    t = m * np.cos(theta - 2.0 * np.pi * np.arange(3) / 3.0)
    return np.sort(t - shift)


def degenerate_pair(tr2, tr4, pf):
    """Closed form for a double root ``ν₁₂ = ν₃₄ = ν``.

    ``ν² = (−t₂ ± s)/6`` and ``ν₋₁₀² = (−t₂ ∓ 2s)/6`` with
    ``s = √(3t₄ − ½t₂²)``; the branch is the one with ``|ν₋₁₀|ν² = |Pf Y|``.

    Returns
    -------
    (nu2, nu10_2) : tuple of floats
    """
    s = np.sqrt(max(0.0, 3.0 * tr4 - 0.5 * tr2 ** 2))
    best = None
    for sign in (1.0, -1.0):
        nu2 = (-tr2 + sign * s) / 6.0
        n10 = (-tr2 - 2.0 * sign * s) / 6.0
        if nu2 < -1e-12 or n10 < -1e-12:
            continue
        nu2, n10 = max(nu2, 0.0), max(n10, 0.0)
        err = abs(np.sqrt(n10) * nu2 - abs(pf))
        if best is None or err < best[0]:
            best = (err, nu2, n10)
    return best[1], best[2]


def characteristic_invariants(Y, disc_tol=1e-8):
    """Trace invariants, Pfaffian and the cubic roots ``λ² = −ν²``.

    When the (scale-normalized) discriminant is below `disc_tol` the
    double-root closed form is also returned in ``degenerate_pair``.
    """
    Y = np.asarray(Y, dtype=float)
    Y2 = Y @ Y
    tr2 = float(np.trace(Y2))
    tr4 = float(np.trace(Y2 @ Y2))
    pf = float(pfaffian(Y, tol=1e-9))
    det = pf * pf
    a2 = -0.5 * tr2
    a1 = 0.125 * (tr2 ** 2 - 2.0 * tr4)
    a0 = det
    roots = _real_cubic_roots(a2, a1, a0)
    r = -roots
    scale = max(1.0, float(np.max(np.abs(r))))
    disc = float(((r[0] - r[1]) * (r[0] - r[2]) * (r[1] - r[2])) ** 2) / scale ** 6
    pair = degenerate_pair(tr2, tr4, pf) if disc < disc_tol else None
    return CharacteristicData(
        tr2=tr2, tr4=tr4, det=det, pf=pf,
        coefficients=(1.0, a2, a1, a0), roots=roots,
        discriminant=disc, degenerate_pair=pair,
    )


def invariant_identities(spectral):
    """Residuals of the trace/determinant identities on the block form Z."""
    Z = spectral.Z
    n10, n12, n34 = spectral.nu
    Z2 = Z @ Z
    s2 = n10 ** 2 + n12 ** 2 + n34 ** 2
    return {
        "tr Z^2": float(abs(np.trace(Z2) + 2.0 * s2)),
        "tr Z^4": float(abs(np.trace(Z2 @ Z2) - 2.0 * (n10 ** 4 + n12 ** 4 + n34 ** 4))),
        "det Z": float(abs(np.linalg.det(Z) - (n10 * n12 * n34) ** 2)),
    }


# ---------------------------------------------------------------------------
# Quasi-particle form
# ---------------------------------------------------------------------------

@dataclass
class QuasiparticleForm:
    """``H = K′ + (ν₁₂−ν₋₁₀)N₁ + (ν₃₄−ν₋₁₀)N₂ + 2ν₋₁₀N₁N₂`` in the b's.

    ``N_k = b_k†b_k`` and ``b_k = V a_k V†`` with ``V`` the SU(4) lift of
    the diagonalizing rotation.
    """

    spectral: SpectralData
    V: np.ndarray
    b: tuple
    number_coefficients: dict
    residuals: dict

    def stated_levels(self):
        """The reference multiset ``{c, c+ν₁₂, c+ν₃₄, c+ν₁₂+ν₃₄−2ν₋₁₀}``.

        Kept for comparison only: it coincides with the true spectrum
        just when ``ν₋₁₀ = 0``.
        """
        n10, n12, n34 = self.spectral.nu
        c = self.spectral.normal_constant
        return np.sort([c, c + n12, c + n34, c + n12 + n34 - 2 * n10])


def normal_form_matrix(spectral, b_ops, basis=None):
    """Rebuild ``H`` from the number-operator form in the quasi-particles."""
    bb = default_basis() if basis is None else basis
    n10, n12, n34 = spectral.nu
    N1 = b_ops[0].conj().T @ b_ops[0]
    N2 = b_ops[1].conj().T @ b_ops[1]
    return (spectral.normal_constant * bb.unit + (n12 - n10) * N1
            + (n34 - n10) * N2 + 2.0 * n10 * N1 @ N2)


def quasiparticle_form(h, basis=None, tol=EPS_DIAG):
    """Full normal-form analysis of a Hermitian Hamiltonian.

    Raises
    ------
    NotHermitian
    """
    b = default_basis() if basis is None else basis
    h = _require_hermitian(h)
    H = hamiltonian_matrix(h, b)
    Y, c0 = y_matrix(h)
    sd = block_diagonalize(Y, c0, tol)
    # Z = L Y Lᵀ; the lift of L carries the block-form operator back to H
    V = su4_from_L(sd.L, b)
    b_ops = (V @ b.a[0] @ V.conj().T, V @ b.a[1] @ V.conj().T)
    Hn = normal_form_matrix(sd, b_ops, b)
    Hz = biparavector_form(sd.Z, c0, b)
    evals = np.linalg.eigvalsh(0.5 * (H + H.conj().T))
    radius = max(1.0, float(np.max(np.abs(evals))))
    residuals = dict(sd.residuals)
    residuals.update({
        "biparavector_form": float(np.max(np.abs(biparavector_form(Y, c0, b) - H))),
        "conjugation": float(np.max(np.abs(V @ Hz @ V.conj().T - H))),
        "normal_form": float(np.max(np.abs(Hn - H))),
        "spectrum": float(np.max(np.abs(np.sort(evals) - sd.levels()))) / radius,
        "trace_free": float(abs(np.trace(H - c0 * b.unit))),
    })
    n10, n12, n34 = sd.nu
    coeffs = {"1": sd.normal_constant, "N1": n12 - n10, "N2": n34 - n10,
              "N1N2": 2.0 * n10}
    return QuasiparticleForm(spectral=sd, V=V, b=b_ops,
                             number_coefficients=coeffs, residuals=residuals)

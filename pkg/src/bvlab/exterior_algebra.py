"""Compound matrices, Pfaffians and related exterior-algebra kernels.

All routines target tiny matrices (n ≤ 6) and favour exact combinatorial
formulas over factorizations: determinants are permutation sums, Pfaffians
are perfect-matching sums.  Row/column indices of compound matrices are the
k-subsets of ``range(n)`` in lexicographic order.
"""

from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .clifford_core import levi_civita, _perm_sign
from .errors import BadOrder, NotAntisymmetric
from .tolerances import EPS_ALG


@lru_cache(maxsize=None)
def subsets(n, k):
    """Lexicographically ordered k-subsets of ``range(n)``."""
    return tuple(combinations(range(n), k))


@lru_cache(maxsize=None)
def _perm_table(k):
    perms = np.array(list(permutations(range(k))), dtype=int).reshape(-1, k)
    signs = np.array([_perm_sign(p) for p in perms], dtype=float)
    return perms, signs


def batched_det(stack):
    """Determinants of a stack of k×k matrices by the Leibniz permutation sum.

    Parameters
    ----------
    stack : (..., k, k) array

    Returns
    -------
    (...,) array
    """
    stack = np.asarray(stack)
    k = stack.shape[-1]
    if k == 0:
        return np.ones(stack.shape[:-2], dtype=stack.dtype)
    perms, signs = _perm_table(k)
    rows = np.arange(k)
    picked = stack[..., rows[None, :], perms]  # (..., P, k)
    return np.prod(picked, axis=-1) @ signs


#: largest order handled by the permutation sum; beyond it LU is used
LEIBNIZ_MAX = 7


def determinant(M):
    """Determinant of a square matrix.

    Orders up to ``LEIBNIZ_MAX`` use the exact permutation sum (no
    pivoting); larger ones, such as compounds of 6×6 matrices, fall back
    to an LU factorization.
    """
    M = np.asarray(M)
    if M.shape[-1] > LEIBNIZ_MAX:
        return np.linalg.det(M)
    return batched_det(M[None])[0]


def _check_order(M, k):
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise BadOrder("compound matrices need a square input")
    n = M.shape[0]
    if not (isinstance(k, (int, np.integer)) and 0 <= k <= n):
        raise BadOrder(f"order {k} outside 0..{n}")
    if n > 6:
        raise BadOrder("compound matrices are supported for n ≤ 6")
    return M, n


def compound(M, k):
    """k-th compound matrix C_k(M): all order-k minors of `M`.

    Parameters
    ----------
    M : (n, n) array_like, n ≤ 6
    k : int, 0 ≤ k ≤ n

    Returns
    -------
    (C(n,k), C(n,k)) array
        Entry ``[I, J]`` is ``det M[rows I, cols J]`` for the lexicographic
        subsets ``I``, ``J``.
    """
    M, n = _check_order(M, k)
    if k == 0:
        return np.ones((1, 1), dtype=M.dtype)
    subs = np.array(subsets(n, k), dtype=int).reshape(-1, k)
    blocks = M[subs[:, None, :, None], subs[None, :, None, :]]
    return batched_det(blocks)


def supplementary_compound(M, k):
    """Matrix of complementary cofactors that inverts C_k(M) up to det M.

    Entry ``[J, I]`` is ``(−1)^{ΣI+ΣJ} det M[comp I, comp J]`` (rows, cols),
    built from the order ``n−k`` minors.  It satisfies the Laplace
    expansion ``compound(M, k) @ supplementary_compound(M, k) = det M · 𝟙``.
    For ``k = 1`` this is the classical adjugate.

    Parameters
    ----------
    M : (n, n) array_like
    k : int
        Order of the compound being complemented.
    """
    M, n = _check_order(M, k)
    subs = subsets(n, k)
    comp = [tuple(x for x in range(n) if x not in s) for s in subs]
    minors = compound(M, n - k)
    pos_nk = {s: i for i, s in enumerate(subsets(n, n - k))}
    size = len(subs)
    out = np.empty((size, size), dtype=minors.dtype)
    for j, J in enumerate(subs):
        for i, I in enumerate(subs):
            sign = -1.0 if (sum(I) + sum(J)) % 2 else 1.0
            out[j, i] = sign * minors[pos_nk[comp[i]], pos_nk[comp[j]]]
    return out


def hodge_matrix(n, k):
    """Matrix ``E[I, J] = ε(I ⊕ J)`` pairing k-subsets with (n−k)-subsets."""
    eps = levi_civita(n)
    rows, cols = subsets(n, k), subsets(n, n - k)
    E = np.zeros((len(rows), len(cols)))
    for a, I in enumerate(rows):
        for b, J in enumerate(cols):
            if not set(I) & set(J):
                E[a, b] = eps[I + J]
    return E


# ---------------------------------------------------------------------------
# Pfaffians
# ---------------------------------------------------------------------------

def _check_antisym(M, tol):
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] % 2:
        raise NotAntisymmetric("Pfaffian needs an even-dimensional square matrix")
    scale = max(1.0, float(np.max(np.abs(M))) if M.size else 1.0)
    if M.size and np.max(np.abs(M + M.T)) > tol * scale:
        raise NotAntisymmetric("matrix is not antisymmetric")
    return M


def _pf(M):
    n = M.shape[0]
    if n == 0:
        return 1.0
    total = 0.0
    rest = list(range(1, n))
    for pos, j in enumerate(rest):
        if M[0, j] == 0:
            continue
        keep = [x for x in rest if x != j]
        sub = M[np.ix_(keep, keep)]
        total = total + (-1) ** pos * M[0, j] * _pf(sub)
    return total


def pfaffian(M, tol=EPS_ALG):
    """Pfaffian by expansion over perfect matchings along the first row.

    Parameters
    ----------
    M : (2m, 2m) antisymmetric array_like
    tol : float
        Relative antisymmetry tolerance.

    Raises
    ------
    NotAntisymmetric
    """
    M = _check_antisym(M, tol)
    return _pf(M)


def pfaffian_compound(T, tol=EPS_ALG):
    """Supplementary Pfaffian compound of a 6×6 antisymmetric matrix.

    ``Pc²(T)_kl = ∂ Pf T / ∂ T_lk = −⅛ Σ T_ab T_cd ε_abcdkl``.  It is
    antisymmetric, quadratic in `T`, and satisfies
    ``Pc²(T) T = T Pc²(T) = Pf(T) 𝟙``.
    """
    T = _check_antisym(T, tol)
    if T.shape != (6, 6):
        raise NotAntisymmetric("pfaffian_compound is defined for 6×6 input")
    return -0.125 * np.einsum("ab,cd,abcdkl->kl", T, T, levi_civita(6))


def pfaffian_compound_squared_poly(T):
    """Polynomial expression for ``Pc²(T)²`` in powers and traces of `T`."""
    T = np.asarray(T)
    T2 = T @ T
    T4 = T2 @ T2
    t2, t4 = np.trace(T2), np.trace(T4)
    I = np.eye(T.shape[0])
    return -0.25 * (0.5 * t2 ** 2 - t4) * I + 0.5 * T2 * t2 - T4


def pfaffian_compound_poly(T):
    """``Pc²(T)`` from its polynomial-in-T closed form (needs Pf T ≠ 0)."""
    T = np.asarray(T)
    pf = pfaffian(T, tol=1e-8)
    T2 = T @ T
    T4 = T2 @ T2
    t2, t4 = np.trace(T2), np.trace(T4)
    I = np.eye(T.shape[0])
    return -(T / pf) @ (0.25 * (0.5 * t2 ** 2 - t4) * I - 0.5 * T2 * t2 + T4)

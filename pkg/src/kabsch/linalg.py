"""Small dense square-matrix helpers and a one-sided Jacobi SVD.

Matrices are plain ``(d, d)`` float ndarrays and vectors are ``(d,)``
ndarrays. Everything here is a pure function of its inputs.
"""

from typing import NamedTuple

import numpy as np

__all__ = [
    "SVDConvergenceError",
    "SvdResult",
    "as_matrix",
    "trace",
    "determinant",
    "frobenius_distance",
    "is_orthogonal",
    "svd",
]

MAX_ORDER = 64
MAX_SWEEPS = 60
ORTHO_TOL = 1e-14

_EPS = np.finfo(float).eps


class SVDConvergenceError(ArithmeticError):
    """Raised when the Jacobi sweeps fail to orthogonalize the columns."""


class SvdResult(NamedTuple):
    """Factors of ``M = V @ diag(sigma) @ W.T``.

    ``sigma`` is sorted in descending order and is nonnegative; ``V`` and
    ``W`` are orthogonal.
    """

    V: np.ndarray
    sigma: np.ndarray
    W: np.ndarray


def as_matrix(A, name="matrix"):
    """Return `A` as a float ``(d, d)`` array, raising ``ValueError`` otherwise."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise ValueError(f"{name} must be a nonempty square matrix, got shape {A.shape}")
    return A


def _same_order(A, B):
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    if A.shape != B.shape:
        raise ValueError(f"order mismatch: {A.shape[0]} vs {B.shape[0]}")
    return A, B


def trace(A):
    """Sum of the diagonal entries of `A`."""
    return float(np.trace(as_matrix(A)))


def determinant(A):
    """Determinant of a square matrix.

    Orders up to 3 use cofactor expansion; larger orders use Gaussian
    elimination with partial pivoting.
    """
    A = as_matrix(A)
    d = A.shape[0]
    if d == 1:
        return float(A[0, 0])
    if d == 2:
        return float(A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0])
    if d == 3:
        return float(
            A[0, 0] * (A[1, 1] * A[2, 2] - A[1, 2] * A[2, 1])
            - A[0, 1] * (A[1, 0] * A[2, 2] - A[1, 2] * A[2, 0])
            + A[0, 2] * (A[1, 0] * A[2, 1] - A[1, 1] * A[2, 0])
        )

    U = A.copy()
    det = 1.0
    for k in range(d):
        p = k + int(np.argmax(np.abs(U[k:, k])))
        if U[p, k] == 0.0:
            return 0.0
        if p != k:
            U[[k, p]] = U[[p, k]]
            det = -det
        det *= U[k, k]
        U[k + 1:, k:] -= np.outer(U[k + 1:, k] / U[k, k], U[k, k:])
    return float(det)


def frobenius_distance(A, B):
    """Frobenius norm of ``A - B``."""
    A, B = _same_order(A, B)
    return float(np.sqrt(np.sum((A - B) ** 2)))


def is_orthogonal(A, tol=1e-10):
    """True iff ``||A.T A - I||_F <= tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    A = as_matrix(A)
    return frobenius_distance(A.T @ A, np.eye(A.shape[0])) <= tol


def _complete_basis(V, filled):
    """Fill the columns of `V` not flagged in `filled` with an orthonormal
    completion, by Gram-Schmidt over the standard basis vectors."""
    d = V.shape[0]
    basis = [V[:, j] for j in range(d) if filled[j]]
    for j in range(d):
        if filled[j]:
            continue
        best = None
        for e in np.eye(d):
            v = e.copy()
            # two passes keep the result orthogonal to working precision
            for _ in range(2):
                for b in basis:
                    v -= (b @ v) * b
            norm = np.linalg.norm(v)
            if best is None or norm > best[1]:
                best = (v, norm)
        v = best[0] / best[1]
        V[:, j] = v
        basis.append(v)
    return V


def svd(M):
    """Singular value decomposition of a square matrix by one-sided Jacobi.

    Columns of ``A = M W`` are orthogonalized pairwise by plane rotations
    accumulated into ``W``. On convergence the column norms are the
    singular values and the normalized columns form ``V``. Columns that
    vanish (rank deficiency) get an orthonormal completion so that ``V``
    is always a full orthogonal matrix.

    Parameters
    ----------
    M : array_like, shape (d, d)

    Returns
    -------
    SvdResult
        ``(V, sigma, W)`` with ``M = V @ diag(sigma) @ W.T``.

    Raises
    ------
    SVDConvergenceError
        If the columns are not mutually orthogonal after ``MAX_SWEEPS``
        sweeps.
    """
    A = as_matrix(M, "M").copy()
    d = A.shape[0]
    if d > MAX_ORDER:
        raise ValueError(f"order {d} exceeds supported maximum {MAX_ORDER}")
    W = np.eye(d)

    scale = np.sqrt(np.sum(A * A))
    # columns below this norm are treated as exact zeros
    negligible = (_EPS * scale) ** 2 * d

    for _ in range(MAX_SWEEPS):
        rotated = False
        for i in range(d - 1):
            for j in range(i + 1, d):
                a = A[:, i] @ A[:, i]
                b = A[:, j] @ A[:, j]
                if a <= negligible or b <= negligible:
                    continue
                g = A[:, i] @ A[:, j]
                if abs(g) <= ORTHO_TOL * np.sqrt(a * b):
                    continue
                rotated = True
                zeta = (b - a) / (2.0 * g)
                t = np.copysign(1.0, zeta) / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                ai = A[:, i].copy()
                A[:, i] = c * ai - s * A[:, j]
                A[:, j] = s * ai + c * A[:, j]
                wi = W[:, i].copy()
                W[:, i] = c * wi - s * W[:, j]
                W[:, j] = s * wi + c * W[:, j]
        if not rotated:
            break
    else:
        raise SVDConvergenceError(f"Jacobi SVD did not converge in {MAX_SWEEPS} sweeps")

    sigma = np.sqrt(np.sum(A * A, axis=0))
    order = np.argsort(-sigma, kind="stable")
    sigma = sigma[order]
    A = A[:, order]
    W = W[:, order]

    V = np.zeros((d, d))
    filled = sigma * sigma > negligible
    V[:, filled] = A[:, filled] / sigma[filled]
    V = _complete_basis(V, filled)
    return SvdResult(V, sigma, W)

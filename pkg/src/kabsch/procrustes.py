"""Constrained orthogonal Procrustes problem via the Kabsch-Umeyama algorithm.

Point sets are ``(n, d)`` arrays with one point per row, so row ``i`` of
``P`` is the target point ``p_i`` and row ``i`` of ``Q`` is the source
point ``q_i``. The solver finds the rotation ``U`` (orthogonal with
``det(U) = 1``) minimizing ``sum_i ||U q_i - p_i||^2``, which is the same
as maximizing ``tr(U M)`` with ``M = sum_i q_i p_i^T``.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import as_matrix, determinant, svd, trace

__all__ = [
    "RotationFit",
    "as_points",
    "check_pair",
    "cross_covariance",
    "kabsch_umeyama",
    "trace_objective",
    "procrustes_objective",
    "trace_upper_bound",
]

POSITIVE = "positive"
NEGATIVE = "negative"


@dataclass(frozen=True)
class RotationFit:
    """Result of :func:`kabsch_umeyama`.

    Attributes
    ----------
    rotation : ndarray, shape (d, d)
        The optimal rotation ``U``.
    trace_value : float
        ``tr(U M)`` at the optimum.
    residual : float
        ``sum_i ||U q_i - p_i||^2``, summed directly.
    sigma : ndarray, shape (d,)
        Singular values of ``M``, descending.
    det_branch : str
        ``"positive"`` if ``det(V W) >= 0`` was taken, else ``"negative"``.
    """

    rotation: np.ndarray
    trace_value: float
    residual: float
    sigma: np.ndarray
    det_branch: str

    @property
    def negative_branch(self):
        return self.det_branch == NEGATIVE


def as_points(A, dim=None, name="point set"):
    """Coerce `A` to an ``(n, d)`` float array of points.

    An empty set must still carry its dimension, e.g. ``np.empty((0, 3))``.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim == 1 and A.size == 0 and dim is not None:
        A = A.reshape(0, dim)
    if A.ndim != 2 or A.shape[1] < 1:
        raise ValueError(f"{name} must be a 2-D (n, d) array with d >= 1, got shape {A.shape}")
    if dim is not None and A.shape[1] != dim:
        raise ValueError(f"{name} has dimension {A.shape[1]}, expected {dim}")
    return A


def check_pair(P, Q):
    """Validate two corresponding point sets and return them as arrays."""
    P = as_points(P, name="P")
    Q = as_points(Q, name="Q")
    if P.shape[1] != Q.shape[1]:
        raise ValueError(f"dimension mismatch: P has d={P.shape[1]}, Q has d={Q.shape[1]}")
    if P.shape[0] != Q.shape[0]:
        raise ValueError(f"count mismatch: P has n={P.shape[0]}, Q has n={Q.shape[0]}")
    return P, Q


def cross_covariance(P, Q):
    """The ``d x d`` matrix ``M = sum_i q_i p_i^T``."""
    P, Q = check_pair(P, Q)
    return Q.T @ P


def trace_objective(U, M):
    """``tr(U M)``."""
    U = as_matrix(U, "U")
    M = as_matrix(M, "M")
    if U.shape != M.shape:
        raise ValueError(f"order mismatch: {U.shape[0]} vs {M.shape[0]}")
    return trace(U @ M)


def procrustes_objective(U, P, Q):
    """``sum_i ||U q_i - p_i||^2``, summed point by point."""
    P, Q = check_pair(P, Q)
    U = as_matrix(U, "U")
    if U.shape[0] != P.shape[1]:
        raise ValueError(f"U has order {U.shape[0]}, points have d={P.shape[1]}")
    diff = Q @ U.T - P
    return float(np.sum(np.einsum("ij,ij->i", diff, diff)))


def trace_upper_bound(sigma, negative_branch):
    """Largest ``tr(U M)`` attainable over rotations, given the singular
    values of ``M`` and the sign of ``det(V W)``.

    Returns ``sum(sigma)`` on the positive branch and
    ``sum(sigma[:-1]) - sigma[-1]`` on the negative one.
    """
    sigma = np.asarray(sigma, dtype=float)
    if sigma.ndim != 1 or sigma.size < 1:
        raise ValueError("sigma must be a nonempty 1-D sequence")
    if np.any(sigma < 0):
        raise ValueError("sigma must be nonnegative")
    if np.any(np.diff(sigma) > 0):
        raise ValueError("sigma must be sorted in descending order")
    if negative_branch:
        return float(np.sum(sigma[:-1]) - sigma[-1])
    return float(np.sum(sigma))


def kabsch_umeyama(P, Q):
    """Rotation ``U`` minimizing ``sum_i ||U q_i - p_i||^2``.

    With ``M = Q^T P = V diag(sigma) W^T``, returns
    ``U = W diag(1, ..., 1, s) V^T`` where ``s`` is the sign of
    ``det(V) det(W)``. The flip of the last axis on the negative branch is
    what keeps ``det(U) = 1`` when the best orthogonal fit is a reflection.

    When ``M`` is rank deficient (including ``n < d`` or ``n == 0``) the
    optimum is not unique; the rotation induced by the computed SVD is
    returned without further canonicalization.

    Parameters
    ----------
    P, Q : array_like, shape (n, d)
        Target and source points, paired row by row.

    Returns
    -------
    RotationFit

    Raises
    ------
    ValueError
        On dimension or count mismatch.
    SVDConvergenceError
        Propagated from :func:`kabsch.linalg.svd`.
    """
    P, Q = check_pair(P, Q)
    M = cross_covariance(P, Q)
    V, sigma, W = svd(M)
    negative = determinant(V) * determinant(W) < 0
    s = np.ones(M.shape[0])
    if negative:
        s[-1] = -1.0
    U = (W * s) @ V.T
    return RotationFit(
        rotation=U,
        trace_value=trace_objective(U, M),
        residual=procrustes_objective(U, P, Q),
        sigma=sigma,
        det_branch=NEGATIVE if negative else POSITIVE,
    )

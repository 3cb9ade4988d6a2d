"""Ground-truth machinery used to check the solvers without trusting them.

Nothing in this module calls :func:`kabsch.linalg.svd` or the solvers. The
random samplers build rotations by QR orthonormalization of Gaussian
matrices, the 2-D optimum is closed form, and the trace inequalities are
evaluated directly.

Seeds are nonnegative integers fed to :func:`numpy.random.default_rng`;
the same seed always reproduces the same stream.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import as_matrix, determinant, is_orthogonal
from .rigid import RigidMotion

__all__ = [
    "Prop1Report",
    "rotation_2d",
    "optimal_angle_2d",
    "random_rotation",
    "random_rotations",
    "random_orthogonal",
    "reflection_fixed_vector",
    "prop1_check",
    "sample_rigid_motion_arrays",
    "sample_rigid_motions",
    "trace_objectives",
    "rigid_objectives",
]

CHECK_TOL = 1e-9


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def rotation_2d(theta):
    """Counter-clockwise rotation of the plane by `theta` radians."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def optimal_angle_2d(M):
    """Closed-form maximizer of ``tr(rotation_2d(theta) @ M)``.

    The objective is ``a cos(theta) + b sin(theta)`` with
    ``a = M11 + M22`` and ``b = M12 - M21``, so the maximum is
    ``hypot(a, b)`` at ``theta = atan2(b, a)``.

    Returns
    -------
    theta, value : float
    """
    M = as_matrix(M, "M")
    if M.shape != (2, 2):
        raise ValueError("optimal_angle_2d needs a 2x2 matrix")
    a = M[0, 0] + M[1, 1]
    b = M[0, 1] - M[1, 0]
    if a == 0.0 and b == 0.0:
        return 0.0, 0.0
    return float(np.arctan2(b, a)), float(np.hypot(a, b))


def random_rotations(d, k, seed):
    """`k` random ``d x d`` rotations as a ``(k, d, d)`` array.

    Each is the Q factor of a standard normal matrix with the signs of
    ``diag(R)`` absorbed, and the first column negated if the determinant
    came out negative.
    """
    if d < 1 or k < 0:
        raise ValueError("need d >= 1 and k >= 0")
    G = _rng(seed).standard_normal((k, d, d))
    Qs, Rs = np.linalg.qr(G)
    signs = np.sign(np.diagonal(Rs, axis1=1, axis2=2))
    signs[signs == 0] = 1.0
    Qs = Qs * signs[:, None, :]
    flip = np.linalg.det(Qs) < 0
    Qs[flip, :, 0] *= -1.0
    return Qs


def random_rotation(d, seed):
    """A single random rotation of order `d`."""
    return random_rotations(d, 1, seed)[0]


def random_orthogonal(d, det_sign, seed):
    """Random orthogonal matrix whose determinant has the sign `det_sign`."""
    if det_sign not in (1, -1):
        raise ValueError("det_sign must be +1 or -1")
    U = random_rotation(d, seed)
    if det_sign < 0:
        U[:, 0] *= -1.0
    return U


def reflection_fixed_vector(W):
    """Unit vector ``x`` with ``W x = -x`` for orthogonal `W` with ``det(W) = -1``.

    Such ``x`` exists because ``det(W + I) = 0`` for every orthogonal
    matrix of determinant -1. It is recovered as a null vector of
    ``W + I`` by Gaussian elimination with complete pivoting: the column
    ending up with the smallest pivot is taken as free and the rest is
    back-substituted. The result is normalized with its first nonzero
    coordinate positive. Since ``W^T = W^{-1}``, ``W^T x = -x`` as well.
    """
    W = as_matrix(W, "W")
    if not is_orthogonal(W, 1e-8):
        raise ValueError("W must be orthogonal")
    if determinant(W) >= 0:
        raise ValueError("W must have negative determinant")
    d = W.shape[0]
    A = W + np.eye(d)
    cols = np.arange(d)
    pivots = np.zeros(d)
    for k in range(d):
        sub = np.abs(A[k:, k:])
        i, j = np.unravel_index(int(np.argmax(sub)), sub.shape)
        i += k
        j += k
        A[[k, i]] = A[[i, k]]
        A[:, [k, j]] = A[:, [j, k]]
        cols[[k, j]] = cols[[j, k]]
        pivots[k] = abs(A[k, k])
        if A[k, k] != 0.0:
            A[k + 1:, k:] -= np.outer(A[k + 1:, k] / A[k, k], A[k, k:])

    # columns past the numerical rank are free; keep only the last one
    tol = 1e-10 * max(1.0, pivots[0])
    rank = min(int(np.sum(pivots > tol)), d - 1)
    y = np.zeros(d)
    y[d - 1] = 1.0
    for k in range(rank - 1, -1, -1):
        y[k] = -(A[k, k + 1:] @ y[k + 1:]) / A[k, k]
    x = np.zeros(d)
    x[cols] = y
    x /= np.linalg.norm(x)
    lead = np.flatnonzero(np.abs(x) > 1e-12)[0]
    if x[lead] < 0:
        x = -x
    return x


@dataclass(frozen=True)
class Prop1Report:
    """Outcome of the three trace inequalities for one ``(W, D, B)`` triple.

    ``part3`` is ``None`` when ``det(W) > 0`` and the inequality does not
    apply.
    """

    part1: bool
    part2: bool
    part3: bool | None

    @property
    def all_hold(self):
        return self.part1 and self.part2 and self.part3 is not False


def prop1_check(W, D_diag, B, bound_offset=0.0):
    """Evaluate the trace bounds for orthogonal `W`, `B` and ``D = diag(D_diag)``.

    1. ``tr(W D) <= sum(sigma)``
    2. ``tr(W S) <= tr(S)`` with ``S = B^T D B``
    3. ``tr(W D) <= sum(sigma[:-1]) - sigma[-1]`` when ``det(W) < 0``

    Each is tested with slack ``1e-9 * max(1, sum(sigma))``.
    `bound_offset` is subtracted from every right-hand side; a positive
    value deliberately tightens the bounds so callers can confirm the
    check is able to fail.
    """
    W = as_matrix(W, "W")
    B = as_matrix(B, "B")
    sigma = np.asarray(D_diag, dtype=float)
    d = W.shape[0]
    if B.shape != W.shape or sigma.shape != (d,):
        raise ValueError("W, B and D_diag must share the order d")
    if np.any(sigma < 0) or np.any(np.diff(sigma) > 0):
        raise ValueError("D_diag must be nonnegative and descending")
    if not (is_orthogonal(W, 1e-8) and is_orthogonal(B, 1e-8)):
        raise ValueError("W and B must be orthogonal")

    slack = CHECK_TOL * max(1.0, float(np.sum(sigma)))
    D = np.diag(sigma)
    tr_wd = float(np.trace(W @ D))
    S = B.T @ D @ B
    part1 = tr_wd <= np.sum(sigma) - bound_offset + slack
    part2 = float(np.trace(W @ S)) <= float(np.trace(S)) - bound_offset + slack
    part3 = None
    if determinant(W) < 0:
        part3 = bool(tr_wd <= np.sum(sigma[:-1]) - sigma[-1] - bound_offset + slack)
    return Prop1Report(bool(part1), bool(part2), part3)


def sample_rigid_motion_arrays(d, k, box_scale, seed):
    """`k` random rotations and translations as ``((k, d, d), (k, d))`` arrays.

    Translations are uniform in ``[-box_scale, box_scale]^d``.
    """
    if d < 1 or k < 1 or box_scale <= 0:
        raise ValueError("need d >= 1, k >= 1 and box_scale > 0")
    rng = _rng(seed)
    rotations = random_rotations(d, k, rng)
    translations = rng.uniform(-box_scale, box_scale, size=(k, d))
    return rotations, translations


def sample_rigid_motions(d, k, box_scale, seed):
    """Yield `k` reproducible :class:`RigidMotion` samples."""
    rotations, translations = sample_rigid_motion_arrays(d, k, box_scale, seed)
    for U, t in zip(rotations, translations):
        yield RigidMotion(U, t)


def trace_objectives(rotations, M):
    """``tr(R M)`` for each ``R`` in a ``(k, d, d)`` stack."""
    return np.einsum("kij,ji->k", rotations, M)


def rigid_objectives(rotations, translations, P, Q):
    """``sum_i ||R q_i + t - p_i||^2`` for each stacked motion ``(R, t)``."""
    mapped = np.einsum("kij,nj->kni", rotations, Q) + translations[:, None, :]
    return np.sum((mapped - P[None]) ** 2, axis=(1, 2))

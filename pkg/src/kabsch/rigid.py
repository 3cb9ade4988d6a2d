"""Orientation-preserving rigid motions and their least-squares fit.

The best motion ``q -> U q + t`` for paired points is found by centering
both sets, solving the rotation-only problem on the centered data, and
then choosing ``t`` so that the source centroid lands on the target
centroid.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import as_matrix, determinant, is_orthogonal
from .procrustes import RotationFit, as_points, check_pair, kabsch_umeyama

__all__ = [
    "RigidMotion",
    "RigidFit",
    "centroid",
    "center",
    "apply_rigid_motion",
    "rigid_objective",
    "recenter_motion",
    "fit_rigid_motion",
]

# sanity guard only; fitted rotations are orthogonal to ~1e-14
MOTION_TOL = 1e-6


@dataclass(frozen=True)
class RigidMotion:
    """The map ``q -> rotation @ q + translation`` with ``det(rotation) = 1``."""

    rotation: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        U = as_matrix(self.rotation, "rotation")
        t = np.asarray(self.translation, dtype=float).reshape(-1)
        if t.shape != (U.shape[0],):
            raise ValueError(f"translation has length {t.size}, rotation has order {U.shape[0]}")
        if not is_orthogonal(U, MOTION_TOL) or abs(determinant(U) - 1.0) > MOTION_TOL:
            raise ValueError("rotation must be orthogonal with determinant 1")
        object.__setattr__(self, "rotation", U)
        object.__setattr__(self, "translation", t)

    @property
    def dim(self):
        return self.rotation.shape[0]

    @classmethod
    def identity(cls, d):
        return cls(np.eye(d), np.zeros(d))

    def __call__(self, points):
        return apply_rigid_motion(self, points)


@dataclass(frozen=True)
class RigidFit:
    """Result of :func:`fit_rigid_motion`."""

    motion: RigidMotion
    delta: float
    rotation_fit: RotationFit
    count: int

    @property
    def rmsd(self):
        return float(np.sqrt(self.delta / self.count))


def centroid(A):
    """Arithmetic mean of a nonempty point set."""
    A = as_points(A)
    if A.shape[0] == 0:
        raise ValueError("centroid of an empty point set is undefined")
    return A.mean(axis=0)


def center(A):
    """Translate `A` so that its centroid is the origin."""
    A = as_points(A)
    return A - centroid(A)


def apply_rigid_motion(m, A):
    """Map every point ``q`` of `A` to ``U q + t``."""
    A = as_points(A, dim=m.dim)
    return A @ m.rotation.T + m.translation


def rigid_objective(m, P, Q):
    """``sum_i ||m(q_i) - p_i||^2``."""
    P, Q = check_pair(P, Q)
    diff = apply_rigid_motion(m, Q) - P
    return float(np.sum(np.einsum("ij,ij->i", diff, diff)))


def recenter_motion(m, q_bar, p_bar):
    """Same rotation as `m`, translated so that ``q_bar`` maps to ``p_bar``.

    For any point sets with these centroids the returned motion never does
    worse than `m`; the improvement is ``n * ||m(q_bar) - p_bar||^2``.
    """
    q_bar = np.asarray(q_bar, dtype=float).reshape(-1)
    p_bar = np.asarray(p_bar, dtype=float).reshape(-1)
    if q_bar.shape != (m.dim,) or p_bar.shape != (m.dim,):
        raise ValueError(f"centroids must have length {m.dim}")
    return RigidMotion(m.rotation, p_bar - m.rotation @ q_bar)


def fit_rigid_motion(P, Q):
    """Orientation-preserving rigid motion minimizing ``sum_i ||U q_i + t - p_i||^2``.

    Parameters
    ----------
    P, Q : array_like, shape (n, d)
        Target and source points with ``n >= 1``.

    Returns
    -------
    RigidFit
        ``motion`` holds ``U`` from the centered rotation fit and
        ``t = p_bar - U q_bar``; ``delta`` is the objective at that motion.
    """
    P, Q = check_pair(P, Q)
    if P.shape[0] == 0:
        raise ValueError("cannot fit a rigid motion to empty point sets")
    p_bar = centroid(P)
    q_bar = centroid(Q)
    rot = kabsch_umeyama(P - p_bar, Q - q_bar)
    motion = RigidMotion(rot.rotation, p_bar - rot.rotation @ q_bar)
    return RigidFit(motion, rigid_objective(motion, P, Q), rot, P.shape[0])

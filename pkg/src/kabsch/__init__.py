"""Kabsch-Umeyama rotation fitting and rigid point-set registration in any dimension."""

from .linalg import (
    SVDConvergenceError,
    SvdResult,
    determinant,
    frobenius_distance,
    is_orthogonal,
    svd,
    trace,
)
from .procrustes import (
    RotationFit,
    cross_covariance,
    kabsch_umeyama,
    procrustes_objective,
    trace_objective,
    trace_upper_bound,
)
from .rigid import (
    RigidFit,
    RigidMotion,
    apply_rigid_motion,
    center,
    centroid,
    fit_rigid_motion,
    recenter_motion,
    rigid_objective,
)

__version__ = "0.1.0"

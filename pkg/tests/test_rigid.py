import numpy as np
import pytest

from kabsch.linalg import frobenius_distance
from kabsch.oracle import random_rotation, rigid_objectives, sample_rigid_motion_arrays
from kabsch.rigid import (
    RigidMotion,
    apply_rigid_motion,
    center,
    centroid,
    fit_rigid_motion,
    recenter_motion,
    rigid_objective,
)


def test_centroid():
    np.testing.assert_array_equal(centroid([[1.0, -2.0, 3.0]]), [1.0, -2.0, 3.0])
    np.testing.assert_array_equal(centroid([[1.0, 0.0], [0.0, 1.0]]), [0.5, 0.5])
    np.testing.assert_array_equal(centroid([[1.0, 2.0], [-1.0, -2.0]]), [0.0, 0.0])
    with pytest.raises(ValueError):
        centroid(np.empty((0, 2)))


def test_center():
    A = np.array([[1.0, 2.0], [-1.0, -2.0]])
    np.testing.assert_array_equal(center(A), A)
    np.testing.assert_array_equal(center([[4.0, 5.0]]), [[0.0, 0.0]])
    B = np.random.default_rng(0).uniform(-100, 100, (30, 4))
    assert np.linalg.norm(centroid(center(B))) <= 1e-12 * np.abs(B).max()
    with pytest.raises(ValueError):
        center(np.empty((0, 2)))


def test_rigid_motion_validation():
    with pytest.raises(ValueError):
        RigidMotion(np.diag([1.0, -1.0]), np.zeros(2))
    with pytest.raises(ValueError):
        RigidMotion(2 * np.eye(2), np.zeros(2))
    with pytest.raises(ValueError):
        RigidMotion(np.eye(2), np.zeros(3))


def test_apply_rigid_motion():
    A = np.random.default_rng(1).standard_normal((7, 3))
    np.testing.assert_array_equal(apply_rigid_motion(RigidMotion.identity(3), A), A)
    shifted = apply_rigid_motion(RigidMotion(np.eye(2), [1.0, 0.0]), [[0.0, 0.0]])
    np.testing.assert_array_equal(shifted, [[1.0, 0.0]])
    m = RigidMotion(random_rotation(3, 2), [3.0, -1.0, 0.5])
    B = m(A)
    dA = np.linalg.norm(A[:, None] - A[None], axis=-1)
    dB = np.linalg.norm(B[:, None] - B[None], axis=-1)
    np.testing.assert_allclose(dB, dA, rtol=1e-10)
    with pytest.raises(ValueError):
        apply_rigid_motion(m, np.zeros((2, 2)))


def test_rigid_objective():
    Q = np.random.default_rng(2).standard_normal((5, 2))
    assert rigid_objective(RigidMotion.identity(2), Q, Q) == 0
    assert rigid_objective(RigidMotion.identity(2), np.empty((0, 2)), np.empty((0, 2))) == 0
    assert rigid_objective(RigidMotion.identity(2), [[3.0, 4.0]], [[0.0, 0.0]]) == 25


def test_recenter_motion_examples():
    m = RigidMotion(random_rotation(3, 3), [1.0, 2.0, 3.0])
    q_bar = np.array([0.5, -0.5, 2.0])
    p_bar = m.rotation @ q_bar + m.translation
    tau = recenter_motion(m, q_bar, p_bar)
    np.testing.assert_allclose(tau.translation, m.translation, atol=1e-15)
    tau = recenter_motion(RigidMotion.identity(2), [0.0, 0.0], [1.0, 1.0])
    np.testing.assert_array_equal(tau.translation, [1.0, 1.0])
    with pytest.raises(ValueError):
        recenter_motion(m, [0.0, 0.0], [0.0, 0.0, 0.0])


def test_recenter_improvement_identity():
    rng = np.random.default_rng(4)
    for _ in range(100):
        d = int(rng.integers(1, 6))
        n = int(rng.integers(1, 20))
        P, Q = rng.uniform(-3, 3, (n, d)), rng.uniform(-3, 3, (n, d))
        m = RigidMotion(random_rotation(d, rng), rng.uniform(-3, 3, d))
        q_bar, p_bar = centroid(Q), centroid(P)
        tau = recenter_motion(m, q_bar, p_bar)
        np.testing.assert_allclose(apply_rigid_motion(tau, q_bar[None])[0], p_bar, atol=1e-12)
        gap = m.rotation @ q_bar + m.translation - p_bar
        lhs = rigid_objective(m, P, Q) - rigid_objective(tau, P, Q)
        rhs = n * (gap @ gap)
        assert lhs == pytest.approx(rhs, rel=1e-8, abs=1e-10)


def test_recenter_equality_case():
    # a motion already sending q_bar to p_bar gains nothing
    rng = np.random.default_rng(5)
    P, Q = rng.standard_normal((8, 3)), rng.standard_normal((8, 3))
    U = random_rotation(3, rng)
    m = RigidMotion(U, centroid(P) - U @ centroid(Q))
    tau = recenter_motion(m, centroid(Q), centroid(P))
    assert rigid_objective(tau, P, Q) == pytest.approx(rigid_objective(m, P, Q), rel=1e-12)


def test_fit_identity_and_translation():
    rng = np.random.default_rng(6)
    Q = rng.standard_normal((9, 3))
    fit = fit_rigid_motion(Q, Q)
    np.testing.assert_allclose(fit.motion.rotation, np.eye(3), atol=1e-12)
    np.testing.assert_allclose(fit.motion.translation, 0, atol=1e-12)
    assert fit.delta == pytest.approx(0, abs=1e-20)

    c = np.array([1.5, -2.0, 0.25])
    fit = fit_rigid_motion(Q + c, Q)
    np.testing.assert_allclose(fit.motion.rotation, np.eye(3), atol=1e-12)
    np.testing.assert_allclose(fit.motion.translation, c, atol=1e-12)
    assert fit.delta == pytest.approx(0, abs=1e-20)


def test_fit_single_point():
    fit = fit_rigid_motion([[3.0, 1.0, -1.0]], [[0.0, 2.0, 5.0]])
    np.testing.assert_array_equal(fit.motion.rotation, np.eye(3))
    np.testing.assert_array_equal(fit.motion.translation, [3.0, -1.0, -6.0])
    assert fit.delta == 0


def test_fit_rejects_empty():
    with pytest.raises(ValueError):
        fit_rigid_motion(np.empty((0, 2)), np.empty((0, 2)))


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_fit_recovers_ground_truth(d):
    rng = np.random.default_rng(20 + d)
    R = random_rotation(d, rng)
    c = rng.uniform(-5, 5, d)
    Q = rng.standard_normal((d + 5, d))
    P = Q @ R.T + c
    fit = fit_rigid_motion(P, Q)
    assert frobenius_distance(fit.motion.rotation, R) <= 1e-8
    np.testing.assert_allclose(fit.motion.translation, c, atol=1e-8)
    assert fit.delta <= 1e-12 * np.sum(P * P)
    assert fit.rmsd == pytest.approx(np.sqrt(fit.delta / (d + 5)))


def test_fit_properties():
    rng = np.random.default_rng(7)
    for _ in range(50):
        d = int(rng.integers(1, 5))
        n = int(rng.integers(1, 12))
        P, Q = rng.uniform(-2, 2, (n, d)), rng.uniform(-2, 2, (n, d))
        fit = fit_rigid_motion(P, Q)
        p_bar = centroid(P)
        mapped = apply_rigid_motion(fit.motion, centroid(Q)[None])[0]
        assert np.linalg.norm(mapped - p_bar) <= 1e-9 * (1 + np.linalg.norm(p_bar))
        assert fit.delta >= 0
        assert rigid_objective(fit.motion, P, Q) == pytest.approx(fit.delta, rel=1e-10, abs=1e-14)

        Us, ts = sample_rigid_motion_arrays(d, 2000, 4.0, rng)
        assert rigid_objectives(Us, ts, P, Q).min() >= fit.delta - 1e-8 * (1 + np.sum(P * P))

        g = RigidMotion(random_rotation(d, rng), rng.uniform(-3, 3, d))
        assert fit_rigid_motion(P, g(Q)).delta == pytest.approx(fit.delta, rel=1e-8, abs=1e-12)
        assert fit_rigid_motion(g(P), Q).delta == pytest.approx(fit.delta, rel=1e-8, abs=1e-12)

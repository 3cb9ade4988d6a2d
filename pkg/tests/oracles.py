"""Reference computations used only by the tests."""

import numpy as np


def jacobi_eigenvalues(S, tol=1e-15, max_sweeps=100):
    """Eigenvalues of a symmetric matrix by cyclic two-sided Jacobi rotations,
    sorted descending."""
    A = np.array(S, dtype=float)
    d = A.shape[0]
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum((A - np.diag(np.diag(A))) ** 2))
        if off <= tol * max(np.sqrt(np.sum(A**2)), 1e-300):
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                if A[p, q] == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * A[p, q])
                if abs(theta) > 1e150:
                    t = 1.0 / (2.0 * theta)
                else:
                    t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                J = np.eye(d)
                J[p, p] = J[q, q] = c
                J[p, q] = s
                J[q, p] = -s
                A = J.T @ A @ J
    return np.sort(np.diag(A))[::-1]


def random_matrix(rng, d, low=-10.0, high=10.0):
    return rng.uniform(low, high, size=(d, d))


def mirror_pair(rng, d, n):
    """Points whose best orthogonal fit is a reflection: P is a reflected copy
    of Q plus a little noise."""
    Q = rng.standard_normal((n, d))
    flip = np.ones(d)
    flip[rng.integers(d)] = -1.0
    P = Q * flip + 0.01 * rng.standard_normal((n, d))
    return P, Q

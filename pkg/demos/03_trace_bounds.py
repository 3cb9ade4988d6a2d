"""
Trace bounds for orthogonal matrices
====================================

For orthogonal ``W`` and ``D = diag(sigma)`` with ``sigma`` nonnegative and
descending, ``tr(W D) <= sum(sigma)``. If ``det(W) = -1`` the bound tightens
to ``sum(sigma[:-1]) - sigma[-1]``. The tighter bound rests on the fact that
such a ``W`` always has a vector it sends to its negative.
"""

# %%
# Setup
# -----
import numpy as np

from kabsch.oracle import prop1_check, random_orthogonal, reflection_fixed_vector

rng = np.random.default_rng(2)

# %%
# A vector flipped by a reflection
# --------------------------------
W = random_orthogonal(5, -1, rng)
x = reflection_fixed_vector(W)
print("||W x + x||      :", np.linalg.norm(W @ x + x))
print("||W^T x + x||    :", np.linalg.norm(W.T @ x + x))

# %%
# The bounds on random draws
# --------------------------
sigma = np.sort(rng.uniform(0, 5, 5))[::-1]
holds = [
    prop1_check(random_orthogonal(5, s, rng), sigma, random_orthogonal(5, 1, rng)).all_hold
    for s in (1, -1)
    for _ in range(500)
]
print("all bounds hold  :", all(holds))

# %%
# The bounds are tight
# --------------------
# ``W = I`` attains the first bound and ``diag(1, ..., 1, -1)`` the second.
flip = np.diag([1.0, 1.0, 1.0, 1.0, -1.0])
print("tr(D)            :", sigma.sum())
print("tr(flip D)       :", np.trace(flip @ np.diag(sigma)), "=", sigma[:-1].sum() - sigma[-1])

# %%
# A check that can fail
# ---------------------
# Tightening the bound by ``2 * max(sigma)`` must be reported as violated.
print(prop1_check(np.eye(5), sigma, np.eye(5), bound_offset=2 * sigma[0]))

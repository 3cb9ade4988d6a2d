"""
Rigid registration through centering
====================================

For a full rigid motion ``q -> U q + t`` the translation can be eliminated:
any motion that does not send the source centroid to the target centroid
is strictly improved by re-translating it so that it does. The remaining
rotation is then fitted on centered data.
"""

# %%
# Setup
# -----
import numpy as np

from kabsch import RigidMotion, centroid, fit_rigid_motion, recenter_motion, rigid_objective
from kabsch.oracle import random_rotation, rigid_objectives, sample_rigid_motion_arrays

rng = np.random.default_rng(1)
Q = rng.uniform(-1, 1, (40, 3))
truth = RigidMotion(random_rotation(3, rng), [0.4, -1.0, 2.0])
P = truth(Q) + 0.02 * rng.standard_normal(Q.shape)

# %%
# Re-translating an arbitrary motion
# ----------------------------------
# The gain equals ``n * ||phi(q_bar) - p_bar||^2`` exactly.
phi = RigidMotion(random_rotation(3, rng), rng.uniform(-2, 2, 3))
tau = recenter_motion(phi, centroid(Q), centroid(P))
gap = phi(centroid(Q)[None])[0] - centroid(P)
print("gain             :", rigid_objective(phi, P, Q) - rigid_objective(tau, P, Q))
print("n * ||gap||^2    :", len(Q) * gap @ gap)

# %%
# The fit
# -------
fit = fit_rigid_motion(P, Q)
print("rmsd of fit      :", fit.rmsd)
print("rmsd of truth    :", np.sqrt(rigid_objective(truth, P, Q) / len(Q)))

# %%
# No sampled motion does better
# -----------------------------
Us, ts = sample_rigid_motion_arrays(3, 20_000, 4.0, rng)
print("best sampled     :", rigid_objectives(Us, ts, P, Q).min())
print("fitted delta     :", fit.delta)

"""
When is a covariance matrix a quantum state?
============================================

A covariance matrix Sigma belongs to a quantum state exactly when
``Sigma + (i hbar / 2) J`` is positive semi-definite. Geometrically the
Wigner ellipsoid ``1/2 Sigma^-1 z.z <= 1`` must then have capacity at least
``h / 2 = pi hbar``. This script compares the two tests, shows why the
textbook Robertson-Schrodinger inequalities are weaker, and contrasts
projections with sections of the ellipsoid.
"""

import numpy as np

from phasecap import (
    CovarianceMatrix,
    admissible_capacity,
    conjugate_plane_projection_areas,
    conjugate_plane_section_areas,
    random_symplectic,
    robertson_schrodinger_check,
)

np.set_printoptions(precision=4, suppress=True)
hbar = 1.0

# %%
# The vacuum: Sigma = hbar/2 I sits exactly on the boundary.
vacuum = CovarianceMatrix(0.5 * hbar * np.eye(4), hbar)
v = admissible_capacity(vacuum)
print(f"vacuum: psd={v.hermitian_psd}, capacity={v.capacity:.6f} (h/2 = {np.pi * hbar:.6f})")

# %%
# Random states: both tests agree away from the boundary.
rng = np.random.default_rng(1)
for _ in range(5):
    S = random_symplectic(2, seed=int(rng.integers(1000)), spread=0.5)
    nu = rng.uniform(0.3, 1.2, 2)
    cov = CovarianceMatrix(S @ np.diag(np.r_[nu, nu]) @ S.T, hbar)
    v = admissible_capacity(cov)
    print(f"nu_min={v.min_symplectic_eigenvalue:.3f}  psd={v.hermitian_psd!s:5}  capacity ok={v.capacity_ok!s:5}")

# %%
# The Robertson-Schrodinger inequalities only look at one pair of
# coordinates at a time. Correlations across modes can hide a violation:
# this matrix passes every pairwise check and still is not a state.
for trial in range(200):
    nu = rng.uniform(0.25, 0.475, 2)
    S = random_symplectic(2, seed=trial, spread=0.6)
    cov = CovarianceMatrix(S @ np.diag(np.r_[nu, nu]) @ S.T, hbar)
    if all(robertson_schrodinger_check(cov)) and not admissible_capacity(cov).hermitian_psd:
        break
v = admissible_capacity(cov)
print("pairwise checks:", robertson_schrodinger_check(cov))
print(f"but nu_min = {v.min_symplectic_eigenvalue:.4f} < hbar/2 and capacity = {v.capacity:.4f} < pi")

# %%
# Projections of the Wigner ellipsoid onto the conjugate planes (x_j, p_j)
# always have area at least h/2 for a state. Sections through the origin
# need not: correlated two-mode states have small sections.
S = random_symplectic(2, seed=9, spread=0.6)
pure = CovarianceMatrix(0.5 * hbar * S @ S.T, hbar)
print("projection areas / (h/2):", np.array(conjugate_plane_projection_areas(pure)) / np.pi)
print("section areas    / (h/2):", np.array(conjugate_plane_section_areas(pure)) / np.pi)

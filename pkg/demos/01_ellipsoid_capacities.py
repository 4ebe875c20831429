"""
Symplectic capacities of ellipsoids
===================================

Every symplectic capacity takes the same value on an ellipsoid
``{M z.z <= 1}``: ``pi / lambda_1``, where ``lambda_1`` is the largest
symplectic eigenvalue of M. This script walks through the Williamson normal
form that produces those eigenvalues and checks the capacity axioms.
"""

import numpy as np

from phasecap import (
    Ellipsoid,
    ball_embedding_certificate,
    ellipsoid_capacity,
    is_symplectic,
    random_symplectic,
    symplectic_spectrum,
    williamson_decompose,
)
from phasecap.williamson import verify_certificate

np.set_printoptions(precision=4, suppress=True)

# %%
# A positive-definite matrix on R^4 in (x1, x2, p1, p2) ordering.
M = np.array(
    [
        [2.0, 0.3, 0.1, 0.0],
        [0.3, 1.0, 0.0, 0.2],
        [0.1, 0.0, 1.5, 0.4],
        [0.0, 0.2, 0.4, 3.0],
    ]
)

# %%
# Williamson: a symplectic S with S^T M S = diag(L, L).
dec = williamson_decompose(M)
print("symplectic spectrum:", dec.spectrum)
print("S symplectic:", is_symplectic(dec.S), " residual:", dec.residual)
print("S^T M S =\n", dec.S.T @ M @ dec.S)

# %%
# The spectrum is read from the eigenvalues +-i lambda_j of J M as well.
J = np.block([[np.zeros((2, 2)), np.eye(2)], [-np.eye(2), np.zeros((2, 2))]])
print("moduli of eig(J M):", np.sort(np.abs(np.linalg.eigvals(J @ M).imag))[::-1][::2])

# %%
# Capacity and the ball it certifies: S maps B(R), pi R^2 = capacity,
# into the ellipsoid. The certificate is checked on sampled boundary points.
e = Ellipsoid(M)
c = ellipsoid_capacity(e)
S = ball_embedding_certificate(e)
print(f"capacity = {c:.6f}, largest sampled M(Sz).(Sz) = {verify_certificate(e, S):.12f}")

# %%
# Axioms: invariance under symplectic maps, quadratic scaling and the
# normalization c(B(r)) = pi r^2.
for seed in range(3):
    T = random_symplectic(2, seed=seed, spread=0.5)
    print(f"  image under random S #{seed}: {ellipsoid_capacity(e.image(T)):.12f}")
print(f"  scaled by 3: {ellipsoid_capacity(e.scaled(3.0)) / c:.12f} x capacity")
print(f"  ball r = 2: {ellipsoid_capacity(Ellipsoid(np.eye(4) / 4)):.12f} (4 pi = {4 * np.pi:.12f})")

# %%
# Non-squeezing in action: the ellipsoid x1^2/25 + p1^2/25 + 25 (x2^2 + p2^2)
# <= 1 is wide in the (x1, p1) plane but thin in (x2, p2). Its capacity is
# fixed by the thin pair, pi / 25, even though its volume equals the unit ball's.
cigar = Ellipsoid(np.diag([1 / 25, 25, 1 / 25, 25]))
print(f"cigar capacity {ellipsoid_capacity(cigar):.6f} = pi/25 = {np.pi / 25:.6f}")
print("spectrum of the cigar:", symplectic_spectrum(cigar.M))

"""
Williamson normal form, symplectic spectra and capacities of ellipsoids.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .symplinalg import (
    DEFAULT_TOL,
    as_spd,
    half_dim,
    standard_form,
    symmetric_eigendecomposition,
    symmetric_function,
)

# eigenvalues of A A^T closer than this (relative) are treated as one eigenspace
_CLUSTER_TOL = 1e-8


@dataclass(frozen=True)
class WilliamsonDecomposition:
    """Symplectic S with ``S.T @ M @ S == diag(spectrum, spectrum)``.

    ``residual`` is the max-norm of the difference actually achieved.
    """

    S: np.ndarray
    spectrum: np.ndarray
    residual: float


@dataclass(frozen=True)
class Ellipsoid:
    """The phase-space ellipsoid ``{z : M z . z <= level}``."""

    M: np.ndarray
    level: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.level) or self.level <= 0:
            raise ValidationError(f"ellipsoid level must be positive, got {self.level!r}")
        object.__setattr__(self, "M", as_spd(self.M, name="ellipsoid matrix"))

    @property
    def n(self):
        return self.M.shape[0] // 2

    def contains(self, z, slack=0.0):
        """Membership test for points stored as rows (or a single point)."""
        z = np.atleast_2d(z)
        q = np.einsum("ij,jk,ik->i", z, self.M, z)
        return q <= self.level * (1.0 + slack)

    def scaled(self, alpha):
        """Image of the ellipsoid under ``z -> alpha z``."""
        return Ellipsoid(self.M, self.level * alpha**2)

    def image(self, S):
        """Image ``S(e)`` of the ellipsoid under a linear map."""
        Sinv = np.linalg.inv(S)
        return Ellipsoid(Sinv.T @ self.M @ Sinv, self.level)


def symplectic_spectrum(M):
    """Symplectic spectrum of a positive-definite matrix, in decreasing order.

    The values are the moduli ``lambda_j`` of the eigenvalues ``+-i lambda_j`` of
    ``J M``. They are read off the symmetric positive-definite matrix
    ``M^(1/2) J^T M J M^(1/2)``, whose eigenvalues are ``lambda_j^2``, each
    with multiplicity two.
    """
    M = as_spd(M, name="M")
    n = half_dim(M)
    J = standard_form(n)
    root = symmetric_function(M, np.sqrt)
    K = root @ (J.T @ M @ J) @ root
    mu, _ = symmetric_eigendecomposition(0.5 * (K + K.T))
    squares = 0.5 * (mu[0::2] + mu[1::2])
    return np.sqrt(np.clip(squares, 0.0, None))


def _clusters(values):
    # values sorted increasingly; group runs whose gaps are below the tolerance
    scale = max(float(values[-1]), np.finfo(float).tiny)
    groups, start = [], 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] > _CLUSTER_TOL * scale:
            groups.append(list(range(start, i)))
            start = i
    return groups


def _sign_normalize(u, tol=1e-12):
    nz = np.flatnonzero(np.abs(u) > tol)
    if nz.size and u[nz[0]] < 0:
        return -u
    return u


def _pair_basis(A):
    """Orthonormal u_j, v_j with ``u_j^T A v_j = mu_j > 0``, all other entries zero.

    A is real antisymmetric and invertible. Pairs are returned with
    increasing ``mu_j``.
    """
    dim = A.shape[0]
    eigenvalues, W = symmetric_eigendecomposition(A @ A.T)
    order = np.argsort(eigenvalues, kind="stable")
    eigenvalues, W = eigenvalues[order], W[:, order]
    chosen = np.zeros((dim, 0))
    us, vs, mus = [], [], []
    for group in _clusters(eigenvalues):
        block = W[:, group]
        for _ in range(len(group) // 2):
            residual = block - chosen @ (chosen.T @ block)
            norms = np.linalg.norm(residual, axis=0)
            # deterministic: largest residual wins, earliest index breaks ties
            u = residual[:, int(np.argmax(norms))]
            u = _sign_normalize(u / np.linalg.norm(u))
            v = -A @ u
            v = v - chosen @ (chosen.T @ v)
            v = v - (u @ v) * u
            v = v / np.linalg.norm(v)
            chosen = np.column_stack([chosen, u, v])
            us.append(u)
            vs.append(v)
            mus.append(float(u @ A @ v))
    if len(us) != dim // 2:
        raise ValidationError("eigenvalues of A A^T are not paired; matrix is not antisymmetric")
    return np.array(us).T, np.array(vs).T, np.array(mus)


def williamson_decompose(M):
    """Williamson normal form of a positive-definite matrix.

    Finds symplectic S such that ``S.T @ M @ S = diag(L, L)`` with
    ``L = diag(lambda_1, ..., lambda_n)`` decreasing. The construction uses
    only real symmetric eigendecompositions: with ``R = M^(-1/2)`` the matrix
    ``A = R J R`` is antisymmetric with eigenvalues ``+-i/lambda_j``; an
    orthogonal O bringing A to the block form ``[[0, D], [-D, 0]]`` yields
    ``S = R O diag(L, L)^(1/2)``.

    S is not unique (any ``S U`` with U symplectic and orthogonal also works),
    so only the normal-form contract is guaranteed.
    """
    M = as_spd(M, name="M")
    n = half_dim(M)
    J = standard_form(n)
    R = symmetric_function(M, lambda mu: 1.0 / np.sqrt(mu))
    A = R @ J @ R
    A = 0.5 * (A - A.T)
    U, V, mus = _pair_basis(A)
    O = np.hstack([U, V])
    spectrum = 1.0 / mus
    root = np.sqrt(np.concatenate([spectrum, spectrum]))
    S = (R @ O) * root
    D = np.diag(np.concatenate([spectrum, spectrum]))
    residual = float(np.max(np.abs(S.T @ M @ S - D)))
    return WilliamsonDecomposition(S=S, spectrum=spectrum, residual=residual)


def ellipsoid_capacity(e):
    """Symplectic capacity ``pi * level / lambda_1`` of an ellipsoid.

    All symplectic capacities agree on ellipsoids, so this is also the Gromov
    width of ``{M z . z <= level}``.
    """
    return float(np.pi * e.level / symplectic_spectrum(e.M)[0])


def ball_embedding_certificate(e):
    """Symplectic S mapping the ball of radius ``sqrt(capacity / pi)`` into e."""
    return williamson_decompose(e.M).S


def sample_sphere(n_points, dim, radius=1.0, seed=0):
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((n_points, dim))
    return radius * pts / np.linalg.norm(pts, axis=1, keepdims=True)


def verify_certificate(e, S, n_points=10_000, slack=DEFAULT_TOL, seed=0):
    """Check by sampling that ``S(B(R))`` lies in e, R the capacity radius.

    Returns the largest value of ``M(Sz).(Sz) / level`` over the sampled
    boundary points; the certificate is valid when it is at most ``1 + slack``.
    """
    radius = np.sqrt(ellipsoid_capacity(e) / np.pi)
    pts = sample_sphere(n_points, 2 * e.n, radius, seed) @ S.T
    q = np.einsum("ij,jk,ik->i", pts, e.M, pts) / e.level
    return float(q.max())

"""
Symplectic linear algebra on R^{2n}.

Phase-space vectors are ordered ``(x_1, ..., x_n, p_1, ..., p_n)`` throughout
the package, so the standard symplectic matrix has the block form
``[[0, I], [-I, 0]]``.
"""

import math

import numpy as np

from .errors import NumericalError, ValidationError

DEFAULT_TOL = 1e-9

_JACOBI_MAX_SWEEPS = 100
_JACOBI_STOP = 1e-14
_TAYLOR_TERMS = 20


def standard_form(n):
    """Return the 2n x 2n standard symplectic matrix J.

    Parameters
    ----------
    n : int
        Number of degrees of freedom.

    Returns
    -------
    ndarray
        ``J = [[0, I], [-I, 0]]``, satisfying ``J @ J == -I``.
    """
    if int(n) != n or n < 1:
        raise ValidationError(f"invalid dimension n={n!r}; need a positive integer")
    n = int(n)
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


def half_dim(A):
    """Return n for a square 2n x 2n array, raising on any other shape."""
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] % 2 or A.shape[0] == 0:
        raise ValidationError(f"expected a square matrix of even side, got shape {A.shape}")
    return A.shape[0] // 2


def as_phase_space_vector(z):
    z = np.asarray(z, dtype=float)
    if z.ndim != 1 or z.size == 0 or z.size % 2:
        raise ValidationError(f"phase-space vector must have even positive length, got {z.shape}")
    return z


def symplectic_product(z, w):
    """Symplectic product ``sigma(z, w) = p.x' - p'.x = w^T J z``."""
    z = as_phase_space_vector(z)
    w = as_phase_space_vector(w)
    if z.size != w.size:
        raise ValidationError(f"length mismatch: {z.size} vs {w.size}")
    n = z.size // 2
    return float(z[n:] @ w[:n] - w[n:] @ z[:n])


def symplectic_defect(S):
    """Max-norm of ``S^T J S - J``."""
    S = np.asarray(S, dtype=float)
    J = standard_form(half_dim(S))
    return float(np.max(np.abs(S.T @ J @ S - J)))


def is_symplectic(S, tol=DEFAULT_TOL):
    """Test membership of S in Sp(n).

    The defect ``max|S^T J S - J|`` is compared against ``tol * max(1, max|S|^2)``:
    the rounding error of the product grows with the square of the entries.
    """
    if tol <= 0:
        raise ValidationError("tol must be positive")
    S = np.asarray(S, dtype=float)
    scale = max(1.0, float(np.max(np.abs(S))) ** 2)
    return symplectic_defect(S) <= tol * scale


def symmetric_eigendecomposition(A, tol=DEFAULT_TOL):
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    A : array_like
        Real symmetric matrix.
    tol : float
        Accepted asymmetry ``max|A - A^T|``, relative to ``max(1, max|A|)``.

    Returns
    -------
    eigenvalues : ndarray
        Sorted in decreasing order.
    eigenvectors : ndarray
        Orthogonal matrix whose columns are the matching eigenvectors, so that
        ``A = V @ diag(eigenvalues) @ V.T``.

    Raises
    ------
    ValidationError
        If A is not square or not symmetric within ``tol``.
    NumericalError
        If the off-diagonal norm has not dropped below ``1e-14 * ||A||_F``
        after 100 sweeps.
    """
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValidationError("matrix has non-finite entries")
    size = A.shape[0]
    scale = max(1.0, float(np.max(np.abs(A)))) if size else 1.0
    asym = float(np.max(np.abs(A - A.T))) if size else 0.0
    if asym > tol * scale:
        raise ValidationError(f"matrix is not symmetric (max asymmetry {asym:.3e})")
    A = 0.5 * (A + A.T)
    V = np.eye(size)

    threshold = _JACOBI_STOP * np.linalg.norm(A)
    for _ in range(_JACOBI_MAX_SWEEPS):
        off = float(np.linalg.norm(A - np.diag(np.diag(A))))
        if off <= threshold:
            break
        for p in range(size - 1):
            for q in range(p + 1, size):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = A[:, p].copy()
                col_q = A[:, q]
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :]
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, q] = A[q, p] = 0.0
                vp = V[:, p].copy()
                vq = V[:, q]
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    else:
        raise NumericalError(
            f"Jacobi iteration did not converge in {_JACOBI_MAX_SWEEPS} sweeps "
            f"(off-diagonal norm {off:.3e})"
        )

    eigenvalues = np.diag(A).copy()
    order = np.argsort(-eigenvalues, kind="stable")
    return eigenvalues[order], V[:, order]


def symmetric_function(A, func):
    """Apply a scalar function to a symmetric matrix through its eigenvalues."""
    mu, V = symmetric_eigendecomposition(A)
    return (V * func(mu)) @ V.T


def as_spd(M, tol=DEFAULT_TOL, name="matrix"):
    """Validate a symmetric positive-definite 2n x 2n matrix and return it symmetrized."""
    M = np.array(M, dtype=float)
    half_dim(M)
    mu, _ = symmetric_eigendecomposition(M, tol)
    if mu[-1] <= 0.0:
        raise ValidationError(
            f"{name} is not positive definite (smallest eigenvalue {mu[-1]:.6e})"
        )
    return 0.5 * (M + M.T)


def _expm_taylor(H):
    # scaling and squaring around a fixed 20-term Taylor polynomial
    norm = float(np.max(np.sum(np.abs(H), axis=0)))
    squarings = max(0, int(math.ceil(math.log2(norm / 0.5)))) if norm > 0.5 else 0
    X = H / 2.0**squarings
    result = np.eye(H.shape[0])
    term = np.eye(H.shape[0])
    for k in range(1, _TAYLOR_TERMS + 1):
        term = term @ X / k
        result = result + term
    for _ in range(squarings):
        result = result @ result
    return result


def random_symplectic(n, seed=None, spread=0.5):
    """Draw a deterministic pseudo-random symplectic matrix.

    Built as ``exp(J A1) @ exp(J A2)`` with symmetric ``A1, A2`` whose entries
    are uniform in ``[-spread, spread]``. Since ``J A`` is Hamiltonian its
    exponential lies in Sp(n), and entries are bounded by
    ``exp(2 * 2n * spread)``.
    """
    if spread <= 0:
        raise ValidationError("spread must be positive")
    J = standard_form(n)
    rng = np.random.default_rng(seed)
    S = np.eye(2 * n)
    for _ in range(2):
        A = rng.uniform(-spread, spread, size=(2 * n, 2 * n))
        A = np.triu(A) + np.triu(A, 1).T
        S = S @ _expm_taylor(J @ A)
    return S

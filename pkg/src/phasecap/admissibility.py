"""
Quantum-mechanical admissibility of covariance matrices and classification of
phase-space Gaussians.

A covariance matrix is admissible when ``Sigma + (i hbar / 2) J`` is positive
semi-definite; equivalently the Wigner ellipsoid ``1/2 Sigma^-1 z.z <= 1`` has
symplectic capacity at least ``h / 2 = pi hbar``.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import permutations

import numpy as np

from .errors import ValidationError
from .symplinalg import as_spd, half_dim, standard_form, symmetric_eigendecomposition
from .williamson import Ellipsoid, ellipsoid_capacity, symplectic_spectrum, williamson_decompose

HERMITIAN_TOL = 1e-10
CAPACITY_TOL = 1e-10
CLASSIFY_TOL = 1e-8


@dataclass(frozen=True)
class CovarianceMatrix:
    """Covariance matrix Sigma of a state, in (x, p) block ordering."""

    sigma: np.ndarray
    hbar: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.hbar) or self.hbar <= 0:
            raise ValidationError(f"hbar must be positive, got {self.hbar!r}")
        object.__setattr__(self, "sigma", as_spd(self.sigma, name="covariance matrix"))

    @property
    def n(self):
        return self.sigma.shape[0] // 2

    def transformed(self, S):
        """Covariance matrix ``S Sigma S^T`` of the symplectically transformed state."""
        return CovarianceMatrix(S @ self.sigma @ S.T, self.hbar)


@dataclass(frozen=True)
class AdmissibilityVerdict:
    hermitian_psd: bool
    capacity: float
    capacity_ok: bool
    min_symplectic_eigenvalue: float
    # signed distance of the smallest symplectic eigenvalue of Sigma from hbar/2
    margin: float
    consistent: bool


class Verdict(str, Enum):
    PURE_BLOB = "PureBlob"
    ADMISSIBLE_MIXED = "AdmissibleMixed"
    NOT_A_STATE = "NotAState"


@dataclass(frozen=True)
class GaussianClassification:
    verdict: Verdict
    spectrum: np.ndarray
    capacity: float


def hermitian_min_eigenvalue(cov):
    """Smallest eigenvalue of the Hermitian matrix ``Sigma + (i hbar/2) J``.

    Computed on the real symmetric embedding
    ``[[Sigma, (hbar/2) J], [-(hbar/2) J, Sigma]]``, which carries the same
    eigenvalues with doubled multiplicity.
    """
    n = cov.n
    B = 0.5 * cov.hbar * standard_form(n)
    embedding = np.block([[cov.sigma, B], [-B, cov.sigma]])
    mu, _ = symmetric_eigendecomposition(embedding)
    return float(mu[-1])


def admissible_hermitian(cov, tol=HERMITIAN_TOL):
    """True iff ``Sigma + (i hbar/2) J`` is positive semi-definite.

    The smallest eigenvalue is compared with ``-tol * max|Sigma|``.
    """
    scale = float(np.max(np.abs(cov.sigma)))
    return hermitian_min_eigenvalue(cov) >= -tol * scale


def wigner_ellipsoid(cov):
    """The Wigner ellipsoid ``1/2 Sigma^-1 z.z <= 1``."""
    inv = np.linalg.inv(cov.sigma)
    return Ellipsoid(0.25 * (inv + inv.T), 1.0)


def min_symplectic_eigenvalue(cov):
    return float(symplectic_spectrum(cov.sigma)[-1])


def admissible_capacity(cov, tol=CAPACITY_TOL):
    """Capacity test ``c(W_Sigma) >= h/2 (1 - tol)``, checked against the Hermitian test."""
    h = 2.0 * np.pi * cov.hbar
    capacity = ellipsoid_capacity(wigner_ellipsoid(cov))
    capacity_ok = capacity >= 0.5 * h * (1.0 - tol)
    hermitian = admissible_hermitian(cov)
    nu_min = min_symplectic_eigenvalue(cov)
    return AdmissibilityVerdict(
        hermitian_psd=hermitian,
        capacity=capacity,
        capacity_ok=capacity_ok,
        min_symplectic_eigenvalue=nu_min,
        margin=nu_min - 0.5 * cov.hbar,
        consistent=hermitian == capacity_ok,
    )


def robertson_schrodinger_check(cov, slack=1e-12):
    """Pairwise Robertson-Schrodinger inequalities read from Sigma.

    Returns a list of booleans: first ``n`` entries for
    ``(dX_j)^2 (dP_j)^2 >= cov(X_j, P_j)^2 + hbar^2/4``, then one entry per
    ordered pair ``j != k`` (lexicographic) for
    ``(dX_j)^2 (dP_k)^2 >= cov(X_j, P_k)^2``. ``slack`` is relative to
    ``max(1, lhs)``.
    """
    n = cov.n
    s = cov.sigma
    results = []
    for j in range(n):
        lhs = s[j, j] * s[n + j, n + j]
        rhs = s[j, n + j] ** 2 + 0.25 * cov.hbar**2
        results.append(bool(lhs >= rhs - slack * max(1.0, lhs)))
    for j, k in sorted(permutations(range(n), 2)):
        lhs = s[j, j] * s[n + k, n + k]
        rhs = s[j, n + k] ** 2
        results.append(bool(lhs >= rhs - slack * max(1.0, lhs)))
    return results


def shortest_orbit_action(cov):
    """Action of the shortest periodic orbit of ``H = 1/2 Sigma^-1 z.z`` on ``H = 1``.

    Equal to the capacity of the Wigner ellipsoid, ``2 pi nu_min``.
    """
    return ellipsoid_capacity(wigner_ellipsoid(cov))


def conjugate_plane_section_areas(cov):
    """Areas of the sections of the Wigner ellipsoid by the planes ``(x_j, p_j)``.

    The section by a coordinate plane is the 2-D ellipse with matrix equal to
    the corresponding 2x2 block of ``1/2 Sigma^-1``; its area is
    ``pi / sqrt(det)``. Unlike projections, sections of an admissible Wigner
    ellipsoid can be smaller than ``h/2`` once the modes are correlated.
    """
    n = cov.n
    M = wigner_ellipsoid(cov).M
    areas = []
    for j in range(n):
        idx = [j, n + j]
        block = M[np.ix_(idx, idx)]
        areas.append(float(np.pi / np.sqrt(np.linalg.det(block))))
    return areas


def conjugate_plane_projection_areas(cov):
    """Areas of the orthogonal projections of the Wigner ellipsoid on the planes ``(x_j, p_j)``.

    The projection of ``{M z.z <= 1}`` on a coordinate plane is the ellipse
    whose matrix is the inverse of the 2x2 block of ``M^-1 = 2 Sigma``, so the
    area is ``2 pi sqrt(det Sigma_jj)``. For admissible Sigma every such area
    is at least ``h/2``: this is the first-kind Robertson-Schrodinger
    inequality read geometrically.
    """
    n = cov.n
    areas = []
    for j in range(n):
        idx = [j, n + j]
        block = cov.sigma[np.ix_(idx, idx)]
        areas.append(float(2.0 * np.pi * np.sqrt(np.linalg.det(block))))
    return areas


def _classify_spectrum(spectrum, tol):
    if np.all(np.abs(spectrum - 1.0) <= tol):
        return Verdict.PURE_BLOB
    if spectrum[0] > 1.0 + tol:
        return Verdict.NOT_A_STATE
    return Verdict.ADMISSIBLE_MIXED


def classify_gaussian(g, tol=CLASSIFY_TOL):
    """Classify ``W(z) = C exp(-M (z - z0).(z - z0) / hbar)``.

    PureBlob when every symplectic eigenvalue of M is 1 (a squeezed coherent
    state), NotAState when the largest exceeds 1, AdmissibleMixed otherwise.
    The AdmissibleMixed verdict relies on ``lambda_1 <= 1`` being sufficient
    for Gaussians, a standard fact not proven here.
    """
    spectrum = symplectic_spectrum(g.M)
    return GaussianClassification(
        verdict=_classify_spectrum(spectrum, tol),
        spectrum=spectrum,
        capacity=float(np.pi * g.hbar / spectrum[0]),
    )


def is_quantum_blob(e, tol=CLASSIFY_TOL):
    """Whether ``{M z.z <= level}`` is a symplectic image of the ball ``B(sqrt(level))``.

    Returns ``(is_blob, witness)``; when true the witness S satisfies
    ``S^T M S = I``, so S maps the ball onto the ellipsoid. Otherwise the
    witness is None.
    """
    half_dim(e.M)
    spectrum = symplectic_spectrum(e.M)
    if not np.all(np.abs(spectrum - 1.0) <= tol):
        return False, None
    return True, williamson_decompose(e.M).S

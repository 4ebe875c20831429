"""
Hardy's uncertainty principle: Gaussian envelopes of a state and its Fourier
transform, Hermite witnesses, and Gaussian majorants of phase-space
distributions.
"""

from dataclasses import dataclass
from enum import Enum
from math import factorial

import numpy as np

from .errors import NumericalError, ValidationError
from .phasespace import SampledWavefunction, fourier_transform
from .williamson import Ellipsoid, ellipsoid_capacity

HARDY_TOL = 1e-9
# fitted envelopes carry rate errors of order 1e-9 from the transform's
# roundoff, so fitted products are classified with a wider band
FIT_CLASSIFY_TOL = 1e-6
HERMITE_MAX_ORDER = 12
# amplitudes below this fraction of the peak are ignored when fitting rates
FIT_FLOOR = 1e-13
# the transform carries roundoff of order 1e-16 of its peak, which at the
# 1e-13 level would bias the fitted rate by ~1e-4; the momentum side is
# therefore fitted only where the relative roundoff is below ~1e-7
FOURIER_FIT_FLOOR = 1e-9
# both functions must have decayed to this fraction of the peak at the edges
EDGE_FLOOR = 1e-12
# pointwise bound checks accept this much overshoot
BOUND_SLACK = 1e-12
ZERO_NORM = 1e-10


class HardyTag(str, Enum):
    UNIQUE_GAUSSIAN = "UniqueGaussian"
    ONLY_ZERO = "OnlyZero"
    NON_EMPTY = "NonEmpty"


class StateVerdict(str, Enum):
    NOT_A_STATE = "NotAState"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class HardyEnvelope:
    """Bounds ``|psi(x)| <= C_X exp(-a x^2 / 2hbar)``, ``|F psi(p)| <= C_P exp(-b p^2 / 2hbar)``."""

    C_X: float
    a: float
    C_P: float
    b: float
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("C_X", "a", "C_P", "b", "hbar"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise ValidationError(f"envelope field {name} must be finite and positive, got {value!r}")

    @property
    def product(self):
        return self.a * self.b


@dataclass(frozen=True)
class HardyVerdict:
    tag: HardyTag
    product: float


@dataclass(frozen=True)
class MajorantCertificate:
    """``rho(z) <= C exp(-M z.z / hbar)`` on the grid, up to ``max_violation``.

    ``max_violation`` is the most negative value of the slack
    ``C exp(-M z.z / hbar) - rho(z)``; the certificate is valid when it is
    at least ``-1e-12``.
    """

    M: np.ndarray
    C: float
    max_violation: float
    capacity: float

    @property
    def valid(self):
        return self.max_violation >= -BOUND_SLACK


def hardy_classify(a, b, tol=HARDY_TOL):
    """Hardy trichotomy on the product ``ab``.

    ``|ab - 1| <= tol`` gives UniqueGaussian (only ``C exp(-a x^2 / 2hbar)``
    satisfies both bounds), ``ab > 1 + tol`` OnlyZero, and ``ab < 1 - tol``
    NonEmpty (rescaled Hermite functions qualify).
    """
    if not (a > 0 and b > 0):
        raise ValidationError(f"Hardy rates must be positive, got a={a!r}, b={b!r}")
    product = a * b
    if abs(product - 1.0) <= tol:
        tag = HardyTag.UNIQUE_GAUSSIAN
    elif product > 1.0:
        tag = HardyTag.ONLY_ZERO
    else:
        tag = HardyTag.NON_EMPTY
    return HardyVerdict(tag, float(product))


def hermite_function(k, a=1.0, N=256, half_width=None, hbar=1.0):
    """k-th L2-normalized Hermite function of ``x sqrt(a / hbar)``.

    Computed with the normalized three-term recurrence
    ``h_{k+1} = sqrt(2/(k+1)) u h_k - sqrt(k/(k+1)) h_{k-1}``, whose iterates
    stay bounded by ``pi^(-1/4)``, so no overflow handling is needed up to the
    supported order. The default window is ``+-10 sqrt(hbar / a)``.
    """
    if int(k) != k or k < 0:
        raise ValidationError(f"Hermite order must be a non-negative integer, got {k!r}")
    if k > HERMITE_MAX_ORDER:
        raise ValidationError(f"Hermite order {k} exceeds the supported maximum {HERMITE_MAX_ORDER}")
    if not a > 0:
        raise ValidationError("Hermite scale a must be positive")
    width = np.sqrt(hbar / a)
    if half_width is None:
        half_width = 10.0 * width

    def values(x):
        u = x / width
        prev = np.zeros_like(u)
        cur = np.pi**-0.25 * np.exp(-0.5 * u * u)
        for j in range(int(k)):
            prev, cur = cur, np.sqrt(2.0 / (j + 1)) * u * cur - np.sqrt(j / (j + 1)) * prev
        return cur / np.sqrt(width)

    return SampledWavefunction.from_function(values, N, half_width, hbar)


def hermite_polynomial_value(k, u):
    """Physicists' Hermite polynomial by explicit sum (independent of the recurrence)."""
    u = np.asarray(u, dtype=float)
    total = np.zeros_like(u)
    for m in range(k // 2 + 1):
        total += (-1) ** m * factorial(k) / (factorial(m) * factorial(k - 2 * m)) * (2 * u) ** (k - 2 * m)
    return total


def _fit_rate(coord, amplitude, spacing, hbar, floor=FIT_FLOOR, side="psi"):
    """Decay rate and constant of the tightest ``C exp(-r t^2 / 2hbar)`` bound.

    The rate is the infimum of ``-2 hbar ln(|f| / max|f|) / t^2`` over points
    with ``|f| > floor * max|f|`` and ``|t| > 3 spacing``. When the peak sits
    away from the origin that ratio vanishes at the peak, so the infimum is
    taken beyond twice the peak distance instead. The constant is then raised
    to the smallest value that bounds every significant sample.
    """
    peak = float(np.max(amplitude))
    if peak <= 0:
        raise ValidationError("cannot fit an envelope to an all-zero function")
    edge = max(amplitude[0], amplitude[-1]) / peak
    if edge > EDGE_FLOOR:
        raise ValidationError(
            f"{side} has not decayed at the window edge (relative size {edge:.3e}); widen the window"
        )
    significant = amplitude > floor * peak
    t_peak = abs(float(coord[int(np.argmax(amplitude))]))
    # boundaries are compared in grid units with a margin, so that points
    # lying exactly on them are classified independently of roundoff
    margin = 1e-6 * spacing
    usable = (
        significant
        & (np.abs(coord) > 3.0 * spacing + margin)
        & (np.abs(coord) >= 2.0 * t_peak - margin)
    )
    if not np.any(usable):
        raise ValidationError("no usable samples for the envelope fit; widen the window")
    t, f = coord[usable], amplitude[usable]
    rate = float(np.min(-2.0 * hbar * np.log(f / peak) / t**2))
    if rate <= 0:
        raise ValidationError("fitted decay rate is not positive; the window is too narrow")
    constant = float(np.max(amplitude[significant] * np.exp(rate * coord[significant] ** 2 / (2.0 * hbar))))
    return rate, max(constant, peak)


def envelope_fit_wavefunction(psi):
    """Fit the Hardy envelope of a sampled state and its Fourier transform.

    Rates are fitted on samples above ``1e-13`` of the peak for psi and above
    ``1e-9`` of the peak for the computed transform, whose roundoff floor is
    far higher than that of exact samples. Samples below the floor can exceed
    the fitted bound by at most that roundoff (~1e-16 of the peak).

    Raises
    ------
    ValidationError
        If psi is zero or either function has not decayed below ``1e-12`` of
        its peak at the window edges.
    """
    amp = np.abs(psi.values)
    if not np.any(amp > 0):
        raise ValidationError("cannot fit an envelope to an all-zero function")
    phi = fourier_transform(psi)
    a, C_X = _fit_rate(psi.x, amp, psi.dx, psi.hbar)
    b, C_P = _fit_rate(phi.x, np.abs(phi.values), phi.dx, psi.hbar, FOURIER_FIT_FLOOR, "F psi")
    return HardyEnvelope(C_X=C_X, a=a, C_P=C_P, b=b, hbar=psi.hbar)


def classify_envelope(env, tol=FIT_CLASSIFY_TOL):
    """Hardy verdict for a fitted envelope, with a band matching the fit accuracy."""
    return hardy_classify(env.a, env.b, tol)


def envelope_violation(psi, env):
    """Largest overshoot of ``|psi|`` and ``|F psi|`` above their Gaussian bounds."""
    phi = fourier_transform(psi)
    bound_x = env.C_X * np.exp(-env.a * psi.x**2 / (2.0 * psi.hbar))
    bound_p = env.C_P * np.exp(-env.b * phi.x**2 / (2.0 * psi.hbar))
    return (
        float(np.max(np.abs(psi.values) - bound_x)),
        float(np.max(np.abs(phi.values) - bound_p)),
    )


def hardy_check_state(psi, env):
    """Check the two Hardy bounds on the grid and classify the envelope.

    Returns ``(holds, verdict)``. A nonzero state that satisfies bounds with
    ``ab > 1`` contradicts Hardy's theorem, so it raises NumericalError
    instead of returning.
    """
    over_x, over_p = envelope_violation(psi, env)
    holds = over_x <= BOUND_SLACK and over_p <= BOUND_SLACK
    verdict = hardy_classify(env.a, env.b, HARDY_TOL)
    if holds and verdict.tag is HardyTag.ONLY_ZERO and psi.norm() > ZERO_NORM:
        raise NumericalError(
            f"state of norm {psi.norm():.3e} satisfies Hardy bounds with ab={verdict.product:.6g} > 1; "
            "the grid does not resolve its tails"
        )
    return holds, verdict


def _radius_sq(rho, M):
    X, P = rho.mesh()
    return M[0, 0] * X * X + (M[0, 1] + M[1, 0]) * X * P + M[1, 1] * P * P


def _theorem_verdict(capacity, hbar):
    half_h = np.pi * hbar
    if capacity < half_h * (1.0 - HARDY_TOL):
        return StateVerdict.NOT_A_STATE
    return StateVerdict.INCONCLUSIVE


def _real_values(rho):
    values = np.asarray(rho.values)
    if np.iscomplexobj(values):
        if np.max(np.abs(values.imag)) > BOUND_SLACK * max(1.0, np.max(np.abs(values))):
            raise ValidationError("phase-space distribution must be real")
        values = values.real
    return values


def _certificate(rho, values, M, C):
    majorant = C * np.exp(-_radius_sq(rho, M) / rho.hbar)
    violation = float(np.min(majorant - values))
    capacity = ellipsoid_capacity(Ellipsoid(M, rho.hbar))
    return MajorantCertificate(M=M, C=float(C), max_violation=violation, capacity=capacity)


def majorant_verdict(rho, M=None):
    """Gaussian majorant ``rho <= C exp(-M z.z / hbar)`` and the resulting verdict.

    With M supplied, C is the smallest constant valid at every significant
    grid point (``rho > 1e-13 max rho``). Without M, the isotropic family
    ``lambda I`` is fitted with
    ``lambda = inf -hbar ln(rho / max rho) / |z|^2`` over significant points
    with ``|z|`` beyond three grid spacings.

    If the capacity of ``{M z.z <= hbar}`` is below ``h/2``, rho cannot be
    the Wigner distribution of a quantum state (NotAState); otherwise the
    test says nothing (Inconclusive).
    """
    values = _real_values(rho)
    peak = float(np.max(values))
    if not peak > 0:
        raise ValidationError("distribution must have a positive maximum")
    significant = values > FIT_FLOOR * peak
    if M is None:
        X, P = rho.mesh()
        r2 = X * X + P * P
        usable = significant & (r2 > (3.0 * max(rho.dx, rho.dp) * (1.0 + 1e-6)) ** 2)
        if not np.any(usable):
            raise ValidationError("no usable samples for the isotropic fit")
        lam = float(np.min(-rho.hbar * np.log(values[usable] / peak) / r2[usable]))
        if lam <= 0:
            raise ValidationError("no isotropic Gaussian majorant: distribution does not decay")
        M = lam * np.eye(2)
    else:
        M = np.asarray(M, dtype=float)
        if M.shape != (2, 2):
            raise ValidationError("grid distributions need a 2x2 majorant matrix")
    r2 = _radius_sq(rho, M)
    C = float(np.max(values[significant] * np.exp(r2[significant] / rho.hbar)))
    cert = _certificate(rho, values, M, C)
    return cert, _theorem_verdict(cert.capacity, rho.hbar)


def compact_support_verdict(rho, radius):
    """Reject a distribution supported in the ball ``|z| <= radius``.

    The explicit majorant ``M = 2 I``, ``C = max(rho) exp(2 R^2 / hbar)``
    holds on the support, and ``{2 z.z <= hbar}`` has capacity ``h/4``,
    so the distribution is never a Wigner function of a state.
    """
    values = _real_values(rho)
    peak = float(np.max(values))
    if not peak > 0:
        raise ValidationError("distribution must have a positive maximum")
    X, P = rho.mesh()
    outside = (X * X + P * P > radius * radius) & (np.abs(values) > 1e-14 * peak)
    if np.any(outside):
        j, k = np.argwhere(outside)[0]
        raise ValidationError(
            f"distribution has mass outside radius {radius}: value {values[j, k]:.3e} "
            f"at (x, p) = ({X[j, k]:.6g}, {P[j, k]:.6g})"
        )
    M = 2.0 * np.eye(2)
    C = peak * np.exp(2.0 * radius**2 / rho.hbar)
    cert = _certificate(rho, values, M, C)
    if not cert.valid:
        raise NumericalError(f"compact-support certificate failed (violation {cert.max_violation:.3e})")
    return cert, _theorem_verdict(cert.capacity, rho.hbar)


def marginal_envelope(cert, hbar=1.0):
    """Hardy envelope implied by a 2-D majorant certificate.

    Integrating ``rho <= C exp(-M z.z / hbar)`` over p bounds the position
    marginal ``|psi(x)|^2`` by ``C sqrt(pi hbar / M_pp) exp(-det(M) x^2 / (M_pp hbar))``,
    and symmetrically in x for the momentum marginal. Taking square roots
    gives Gaussian bounds on ``|psi|`` and ``|F psi|`` with rates
    ``a = det(M) / M_pp`` and ``b = det(M) / M_xx``.
    """
    M = np.asarray(cert.M, dtype=float)
    if M.shape != (2, 2):
        raise ValidationError("marginal envelopes are defined for one degree of freedom")
    det = float(np.linalg.det(M))
    a = det / M[1, 1]
    b = det / M[0, 0]
    C_X = np.sqrt(cert.C * np.sqrt(np.pi * hbar / M[1, 1]))
    C_P = np.sqrt(cert.C * np.sqrt(np.pi * hbar / M[0, 0]))
    return HardyEnvelope(C_X=float(C_X), a=float(a), C_P=float(C_P), b=float(b), hbar=hbar)


def marginal_bound_gap(rho, cert):
    """Largest overshoot of the grid marginals of rho above the integrated majorant.

    Returns ``(position_gap, momentum_gap)``; both are at most the quadrature
    error when the certificate is valid.
    """
    env = marginal_envelope(cert, rho.hbar)
    values = _real_values(rho)
    pos = np.sum(values, axis=1) * rho.dp
    mom = np.sum(values, axis=0) * rho.dx
    pos_bound = env.C_X**2 * np.exp(-env.a * rho.x**2 / rho.hbar)
    mom_bound = env.C_P**2 * np.exp(-env.b * rho.p**2 / rho.hbar)
    return float(np.max(pos - pos_bound)), float(np.max(mom - mom_bound))

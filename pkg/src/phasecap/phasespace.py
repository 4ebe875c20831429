"""
Discrete phase-space transforms for one degree of freedom.

Conventions
-----------
Fourier transform::

    F psi(p) = (2 pi hbar)^(-1/2) int exp(-i p x / hbar) psi(x) dx

Wigner-Moyal transform::

    W(psi, phi)(x, p) = (2 pi hbar)^(-1) int exp(-i p y / hbar)
                        psi(x + y/2) conj(phi(x - y/2)) dy

Short-time Fourier transform (2 pi convention, no hbar)::

    V_g f(x, xi) = int exp(-2 pi i xi t) f(t) conj(g(t - x)) dt

Wavefunctions are sampled on ``x_j = x0 + j dx``, ``j = 0..N-1`` and are
zero outside the window. The Wigner integral is discretized with y-step
``2 dx`` so that ``x +- y/2`` stay on the grid; the momentum spacing is then
``dp = pi hbar / (N dx)``. Inputs should decay below ~1e-12 at the window
edges for the documented accuracies.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .symplinalg import as_phase_space_vector, as_spd, half_dim, standard_form

_IMAG_RESIDUE = 1e-12
_GRID_TOL = 1e-9


def _centered_phase(N):
    return (-1.0) ** np.arange(N)


@dataclass(frozen=True, eq=False)
class SampledWavefunction:
    """A complex function sampled on a uniform grid ``x_j = x0 + j dx``."""

    values: np.ndarray
    x0: float
    dx: float
    hbar: float = 1.0

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        N = values.size
        if values.ndim != 1 or N < 16 or N & (N - 1):
            raise ValidationError(f"grid length must be a power of two >= 16, got {N}")
        if not np.all(np.isfinite(values)):
            raise ValidationError("wavefunction has non-finite samples")
        if not self.dx > 0 or not self.hbar > 0:
            raise ValidationError("dx and hbar must be positive")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, func, N=256, half_width=8.0, hbar=1.0):
        """Sample ``func`` on the centered grid ``x_j = (j - N/2) dx``, ``dx = 2 half_width / N``."""
        dx = 2.0 * half_width / N
        x0 = -(N // 2) * dx
        x = x0 + dx * np.arange(N)
        return cls(np.asarray(func(x), dtype=complex), x0, dx, hbar)

    @property
    def N(self):
        return self.values.size

    @property
    def x(self):
        return self.x0 + self.dx * np.arange(self.N)

    def with_values(self, values):
        return SampledWavefunction(values, self.x0, self.dx, self.hbar)

    def norm(self):
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * self.dx))

    def inner(self, other):
        """``<self, other> = int self conj(other) dx``."""
        _check_same_grid(self, other)
        return complex(np.sum(self.values * np.conj(other.values)) * self.dx)

    def is_centered(self):
        return abs(self.x0 / self.dx + self.N // 2) <= _GRID_TOL


def zero_pad(psi, N):
    """Embed psi in a window of N samples, padding equally on both sides.

    N must be a power of two not smaller than the current length; a centered
    grid stays centered.
    """
    if int(N) != N or N < psi.N:
        raise ValidationError(f"cannot pad {psi.N} samples to {N!r}")
    N = int(N)
    pad = (N - psi.N) // 2
    values = np.zeros(N, dtype=complex)
    values[pad : pad + psi.N] = psi.values
    return SampledWavefunction(values, psi.x0 - pad * psi.dx, psi.dx, psi.hbar)


def _check_same_grid(a, b):
    if (
        a.N != b.N
        or abs(a.x0 - b.x0) > _GRID_TOL * a.dx
        or abs(a.dx - b.dx) > _GRID_TOL * a.dx
        or a.hbar != b.hbar
    ):
        raise ValidationError("wavefunctions are sampled on different grids")


@dataclass(frozen=True, eq=False)
class PhaseSpaceGrid:
    """Values on the rectangular grid ``(x0 + j dx, p0 + k dp)``; rows index x."""

    values: np.ndarray
    x0: float
    dx: float
    p0: float
    dp: float
    hbar: float = 1.0
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        values = np.asarray(self.values)
        if values.ndim != 2:
            raise ValidationError(f"grid values must be 2-D, got shape {values.shape}")
        if not self.dx > 0 or not self.dp > 0:
            raise ValidationError("grid spacings must be positive")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, func, x0, dx, nx, p0, dp, np_, hbar=1.0):
        """Evaluate ``func(X, P)`` on the mesh spanned by the two axes."""
        x = x0 + dx * np.arange(nx)
        p = p0 + dp * np.arange(np_)
        X, P = np.meshgrid(x, p, indexing="ij")
        return cls(func(X, P), x0, dx, p0, dp, hbar)

    @property
    def shape(self):
        return self.values.shape

    @property
    def x(self):
        return self.x0 + self.dx * np.arange(self.values.shape[0])

    @property
    def p(self):
        return self.p0 + self.dp * np.arange(self.values.shape[1])

    def mesh(self):
        return np.meshgrid(self.x, self.p, indexing="ij")

    def like(self, values):
        """A grid with the same axes and new values."""
        return PhaseSpaceGrid(values, self.x0, self.dx, self.p0, self.dp, self.hbar)

    def same_axes(self, other):
        return (
            self.shape == other.shape
            and abs(self.x0 - other.x0) <= _GRID_TOL * self.dx
            and abs(self.dx - other.dx) <= _GRID_TOL * self.dx
            and abs(self.p0 - other.p0) <= _GRID_TOL * self.dp
            and abs(self.dp - other.dp) <= _GRID_TOL * self.dp
        )

    def integral(self):
        return complex(np.sum(self.values) * self.dx * self.dp)


def fourier_transform(psi):
    """hbar-scaled unitary Fourier transform.

    The result lives on the reciprocal grid ``p_k = (k - N/2) dp`` with
    ``dp = 2 pi hbar / (N dx)``. The discrete transform is exactly unitary.
    """
    N = psi.N
    dp = 2.0 * np.pi * psi.hbar / (N * psi.dx)
    p = (np.arange(N) - N // 2) * dp
    spectrum = np.fft.fft(psi.values * _centered_phase(N))
    values = psi.dx / np.sqrt(2.0 * np.pi * psi.hbar) * np.exp(-1j * p * psi.x0 / psi.hbar) * spectrum
    return SampledWavefunction(values, p[0], dp, psi.hbar)


def inverse_fourier_transform(phi):
    """Inverse of :func:`fourier_transform`, back onto the reciprocal grid."""
    N = phi.N
    dx = 2.0 * np.pi * phi.hbar / (N * phi.dx)
    x = (np.arange(N) - N // 2) * dx
    # conj(F(conj(phi))) evaluated at x, since F^-1 has the opposite sign
    conj_in = phi.with_values(np.conj(phi.values))
    out = fourier_transform(conj_in)
    return SampledWavefunction(np.conj(out.values), x[0], dx, phi.hbar)


def _correlation(psi, phi):
    # c[j, m mod N] = psi[j + m] conj(phi[j - m]) for m in [-N/2, N/2)
    N = psi.N
    j = np.arange(N)[:, None]
    m = np.arange(N)[None, :]
    m = np.where(m >= N // 2, m - N, m)
    a, b = j + m, j - m
    valid = (a >= 0) & (a < N) & (b >= 0) & (b < N)
    c = np.zeros((N, N), dtype=complex)
    c[valid] = psi.values[a[valid]] * np.conj(phi.values[b[valid]])
    return c * _centered_phase(N)[None, :]


def wigner_moyal(psi, phi):
    """Cross-Wigner distribution ``W(psi, phi)`` on the grid ``x_j`` x ``p_k``.

    ``p_k = (k - N/2) dp`` with ``dp = pi hbar / (N dx)``.
    """
    _check_same_grid(psi, phi)
    N = psi.N
    dp = np.pi * psi.hbar / (N * psi.dx)
    values = psi.dx / (np.pi * psi.hbar) * np.fft.fft(_correlation(psi, phi), axis=1)
    return PhaseSpaceGrid(values, psi.x0, psi.dx, -(N // 2) * dp, dp, psi.hbar)


def wigner_transform(psi):
    """Wigner distribution of ``psi``; real-valued.

    Raises
    ------
    ValidationError
        If the grid length is not a power of two (checked on construction).
    """
    W = wigner_moyal(psi, psi)
    scale = max(float(np.max(np.abs(W.values))), np.finfo(float).tiny)
    residue = float(np.max(np.abs(W.values.imag)))
    if residue > _IMAG_RESIDUE * max(1.0, scale):
        raise ValidationError(f"Wigner transform has imaginary residue {residue:.3e}")
    return W.like(W.values.real.copy())


def bandlimited_interpolate(psi, x):
    """Trigonometric interpolation of the samples at arbitrary points.

    Exact at grid points; points outside ``[x0, x0 + (N-1) dx]`` give zero.
    """
    x = np.asarray(x, dtype=float)
    N = psi.N
    t = (x - psi.x0) / psi.dx
    coeffs = np.fft.fft(psi.values) / N
    k = np.fft.fftfreq(N, d=1.0 / N)
    # symmetric treatment of the Nyquist mode
    flat_t = t.ravel()
    out = np.exp(2j * np.pi * np.outer(flat_t, k) / N) @ coeffs
    # split the Nyquist mode symmetrically between +-N/2
    out += coeffs[N // 2] * (np.cos(np.pi * flat_t) - np.exp(-1j * np.pi * flat_t))
    out = out.reshape(t.shape)
    inside = (t >= -_GRID_TOL) & (t <= N - 1 + _GRID_TOL)
    snapped = np.rint(t)
    on_grid = inside & (np.abs(t - snapped) <= _GRID_TOL)
    out = np.where(on_grid, psi.values[np.clip(snapped, 0, N - 1).astype(int)], out)
    return np.where(inside, out, 0.0)


def wigner_at(psi, phi, x, p):
    """Evaluate the cross-Wigner quadrature at arbitrary points ``(x, p)``.

    Uses the same y-step ``2 dx`` as :func:`wigner_moyal`. When ``x`` lies on
    the half-grid ``x0 + s dx / 2`` every sample is a grid value and the sum is
    the discrete transform itself, evaluated at an arbitrary momentum. Other
    ``x`` need ``phi`` between grid points, supplied by
    :func:`bandlimited_interpolate`. Momenta outside the resolved band
    ``|p| <= pi hbar / (2 dx)`` return zero.
    """
    _check_same_grid(psi, phi)
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    x, p = np.broadcast_arrays(x, p)
    out = np.zeros(x.shape, dtype=complex)
    flat_x, flat_p, flat_out = x.ravel(), p.ravel(), out.reshape(-1)
    xs = psi.x
    pref = psi.dx / (np.pi * psi.hbar)
    keys = np.round(flat_x / (1e-9 * psi.dx))
    for key in np.unique(keys):
        idx = np.flatnonzero(keys == key)
        xq = flat_x[idx[0]]
        s = 2.0 * (xq - psi.x0) / psi.dx
        if abs(s - round(s)) <= _GRID_TOL:
            s = int(round(s))
            a = np.arange(max(0, s - psi.N + 1), min(psi.N, s + 1))
            partner = np.conj(phi.values[s - a])
        else:
            a = np.arange(psi.N)
            partner = np.conj(bandlimited_interpolate(phi, 2.0 * xq - xs[a]))
        c = psi.values[a] * partner
        y = 2.0 * (xs[a] - xq)
        phase = np.exp(-1j * np.outer(flat_p[idx], y) / psi.hbar)
        flat_out[idx] = pref * (phase @ c)
    # the quadrature is periodic in p; outside the principal band it would alias
    band = 0.5 * np.pi * psi.hbar / psi.dx
    out[np.abs(p) > band * (1.0 + _GRID_TOL)] = 0.0
    return out


def marginals(W):
    """Position and momentum densities by rectangle-rule integration over p and x."""
    position = np.real(np.sum(W.values, axis=1)) * W.dp
    momentum = np.real(np.sum(W.values, axis=0)) * W.dx
    return position, momentum


def heisenberg_weyl_translate(psi, z0):
    """Apply ``T(z0) psi(x) = exp(i/hbar (p0 x - p0 x0 / 2)) psi(x - x0)``.

    ``x0`` must be an integer multiple of dx; the momentum shift is free.
    """
    z0 = as_phase_space_vector(z0)
    if z0.size != 2:
        raise ValidationError("only one degree of freedom is supported on grids")
    shift_x, shift_p = z0
    steps = shift_x / psi.dx
    k = int(round(steps))
    if abs(steps - k) > _GRID_TOL * max(1.0, abs(steps)):
        raise ValidationError(f"translation x0={shift_x} is not a multiple of dx={psi.dx}")
    shifted = np.zeros_like(psi.values)
    if 0 <= k < psi.N:
        shifted[k:] = psi.values[: psi.N - k]
    elif -psi.N < k < 0:
        shifted[: psi.N + k] = psi.values[-k:]
    phase = np.exp(1j / psi.hbar * (shift_p * psi.x - 0.5 * shift_p * shift_x))
    return psi.with_values(phase * shifted)


METAPLECTIC_GENERATORS = ("fourier", "dilation", "chirp")


def metaplectic_symplectic(kind, param=None):
    """The 2x2 symplectic matrix S covered by a metaplectic generator.

    ``fourier`` -> J, ``dilation(l)`` -> diag(1/l, l), ``chirp(c)`` -> [[1, 0], [c, 1]].
    """
    if kind == "fourier":
        return standard_form(1)
    if kind == "dilation":
        return np.diag([1.0 / param, param])
    if kind == "chirp":
        return np.array([[1.0, 0.0], [param, 1.0]])
    raise ValidationError(f"unsupported metaplectic generator {kind!r}")


def metaplectic_apply(psi, kind, param=None):
    """Apply one metaplectic generator to ``psi``.

    * ``fourier``: the Fourier transform, returned on the reciprocal grid
      (equal to the input grid when ``dx**2 == 2 pi hbar / N`` and centered).
    * ``dilation``: ``sqrt(l) psi(l x)`` on the same grid, ``1/4 <= l <= 4``,
      resampled by bandlimited interpolation.
    * ``chirp``: ``exp(i c x^2 / (2 hbar)) psi(x)``.

    In every case ``W(S_hat psi)(z) = W psi(S^-1 z)`` with S from
    :func:`metaplectic_symplectic`.
    """
    if kind == "fourier":
        return fourier_transform(psi)
    if kind == "dilation":
        if param is None or not 0.25 <= param <= 4.0:
            raise ValidationError("dilation factor must lie in [1/4, 4]")
        if param == 1.0:
            return psi
        return psi.with_values(np.sqrt(param) * bandlimited_interpolate(psi, param * psi.x))
    if kind == "chirp":
        if param is None or not np.isfinite(param):
            raise ValidationError("chirp needs a finite coefficient")
        return psi.with_values(np.exp(0.5j * param * psi.x**2 / psi.hbar) * psi.values)
    raise ValidationError(f"unsupported metaplectic generator {kind!r}")


def metaplectic_covariance_error(psi, kind, param=None):
    """Max over the grid of ``|W(S_hat psi)(z) - W psi(S^-1 z)|``.

    The left side is the grid transform of the transformed state; the right
    side evaluates the transform of the original state at the pulled-back
    points with :func:`wigner_at`.
    """
    transformed = metaplectic_apply(psi, kind, param)
    lhs = wigner_transform(transformed)
    S_inv = np.linalg.inv(metaplectic_symplectic(kind, param))
    X, P = lhs.mesh()
    xq = S_inv[0, 0] * X + S_inv[0, 1] * P
    pq = S_inv[1, 0] * X + S_inv[1, 1] * P
    rhs = wigner_at(psi, psi, xq, pq)
    return float(np.max(np.abs(lhs.values - rhs)))


@dataclass(frozen=True, eq=False)
class GaussianWignerFunction:
    """``W(z) = C exp(-M (z - z0).(z - z0) / hbar)``."""

    amplitude: float
    center: np.ndarray
    M: np.ndarray
    hbar: float = 1.0

    def __post_init__(self):
        M = as_spd(self.M, name="M")
        center = as_phase_space_vector(self.center)
        if center.size != M.shape[0]:
            raise ValidationError("center and M have different dimensions")
        if not np.isfinite(self.amplitude) or self.amplitude < 0:
            raise ValidationError("amplitude must be finite and non-negative")
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "center", center)

    @property
    def n(self):
        return self.M.shape[0] // 2

    def __call__(self, z):
        d = np.asarray(z, dtype=float) - self.center
        q = np.einsum("...i,ij,...j->...", d, self.M, d)
        return self.amplitude * np.exp(-q / self.hbar)

    def integral(self):
        """Closed-form ``int W dz = C (pi hbar)^n / sqrt(det M)``."""
        return float(self.amplitude * (np.pi * self.hbar) ** self.n / np.sqrt(np.linalg.det(self.M)))

    def on_grid(self, like):
        """Sample on the axes of an existing grid (one degree of freedom only)."""
        if self.n != 1:
            raise ValidationError("grid sampling needs n = 1")
        X, P = like.mesh()
        return like.like(self(np.stack([X, P], axis=-1)))


def gaussian_wigner(cov_or_M, center=None, hbar=None):
    """Normalized Gaussian Wigner function.

    Given a covariance matrix Sigma the quadratic form is ``M = hbar/2 Sigma^-1``;
    a plain matrix is used as M directly. The amplitude
    ``C = (pi hbar)^-n sqrt(det M)`` makes the total integral one; ``M = I``
    is the Wigner function of the standard coherent state.
    """
    if hasattr(cov_or_M, "sigma"):
        hbar = cov_or_M.hbar if hbar is None else hbar
        M = 0.5 * hbar * np.linalg.inv(cov_or_M.sigma)
    else:
        hbar = 1.0 if hbar is None else hbar
        M = np.asarray(cov_or_M, dtype=float)
    n = half_dim(M)
    center = np.zeros(2 * n) if center is None else center
    amplitude = (np.pi * hbar) ** (-n) * np.sqrt(np.linalg.det(M))
    return GaussianWignerFunction(amplitude, center, 0.5 * (M + M.T), hbar)


def phase_space_average(rho, a):
    """Rectangle-rule value of ``int rho(z) a(z) dz``."""
    if not rho.same_axes(a):
        raise ValidationError("rho and the symbol are sampled on different grids")
    return float(np.real(np.sum(rho.values * a.values)) * rho.dx * rho.dp)


def stft(f, g):
    """Short-time Fourier transform ``V_g f`` in the 2 pi convention.

    Window shifts are ``x_j = (j - N/2) dt`` and frequencies
    ``xi_k = (k - N/2) / (N dt)``; ``hbar`` is ignored.
    """
    _check_same_grid(f, g)
    N, dt = f.N, f.dx
    shifts = np.arange(N) - N // 2
    i = np.arange(N)[None, :]
    src = i - shifts[:, None]
    valid = (src >= 0) & (src < N)
    window = np.zeros((N, N), dtype=complex)
    window[valid] = np.conj(g.values[src[valid]])
    products = f.values[None, :] * window * _centered_phase(N)[None, :]
    dxi = 1.0 / (N * dt)
    xi = shifts * dxi
    values = dt * np.exp(-2j * np.pi * xi * f.x0)[None, :] * np.fft.fft(products, axis=1)
    return PhaseSpaceGrid(values, shifts[0] * dt, dt, xi[0], dxi, f.hbar)


@dataclass(frozen=True)
class RelationCheck:
    """Numerical comparison of the cross-Wigner transform with a rescaled STFT.

    ``discrepancy`` is the max of ``| |W| - constant |V| |`` over the compared
    points. ``measured_constant`` is the least-squares ratio ``|W| / |V|``;
    ``phase_residual`` measures ``W - constant exp(2 i p x / hbar) V`` and
    ``alt_phase_residual`` the same with ``exp(2 pi i p x / hbar)``.
    """

    discrepancy: float
    constant: float
    measured_constant: float
    phase_residual: float
    alt_phase_residual: float
    points: int


def stft_wigner_relation_check(psi, phi, constant=None):
    """Compare ``|W(psi, phi)(x, p)|`` with ``constant |V_{g^v} f(x a, p a)|``.

    Here ``a = sqrt(2 / (pi hbar))``, ``f(t) = psi(t sqrt(2 pi hbar))``,
    ``g(t) = phi(t sqrt(2 pi hbar))``, ``g^v(t) = g(-t)`` and by default
    ``constant = sqrt(2 / (pi hbar))``. With ``dt = dx / sqrt(2 pi hbar)``
    the rescaled points fall exactly on the STFT grid, so no resampling is
    needed; the window shifts cover the central half of the x-axis, which is
    the compared region. The grid must be centered.
    """
    _check_same_grid(psi, phi)
    if not psi.is_centered():
        raise ValidationError("relation check needs a centered grid x0 = -N/2 dx")
    N, hbar = psi.N, psi.hbar
    if constant is None:
        constant = np.sqrt(2.0 / (np.pi * hbar))
    scale = np.sqrt(2.0 * np.pi * hbar)
    dt = psi.dx / scale
    f = SampledWavefunction(psi.values, psi.x0 / scale, dt, hbar)
    reversed_phi = np.zeros(N, dtype=complex)
    reversed_phi[1:] = phi.values[:0:-1]
    g_check = SampledWavefunction(reversed_phi, psi.x0 / scale, dt, hbar)
    V = stft(f, g_check)
    W = wigner_moyal(psi, phi)

    rows = np.arange(N // 4, 3 * N // 4)
    stft_rows = N // 2 + 2 * (rows - N // 2)
    w = W.values[rows, :]
    v = V.values[stft_rows, :]
    X, P = np.meshgrid(W.x[rows], W.p, indexing="ij")
    aw, av = np.abs(w), np.abs(v)
    measured = float(np.sum(aw * av) / max(np.sum(av * av), np.finfo(float).tiny))
    phase = np.exp(2j * P * X / hbar)
    alt_phase = np.exp(2j * np.pi * P * X / hbar)
    return RelationCheck(
        discrepancy=float(np.max(np.abs(aw - constant * av))),
        constant=float(constant),
        measured_constant=measured,
        phase_residual=float(np.max(np.abs(w - constant * phase * v))),
        alt_phase_residual=float(np.max(np.abs(w - constant * alt_phase * v))),
        points=int(w.size),
    )

"""
Hardy trichotomy, Hermite witnesses, envelope fitting and majorant verdicts.

Envelope oracles are analytic Fourier pairs: the squeezed Gaussian
``(l / pi hbar)^(1/4) exp(-l x^2 / 2 hbar)`` has rates ``a = l`` and
``b = 1 / l``.
"""

import math

import numpy as np
import pytest
from conftest import coherent_state
from hypothesis import given
from hypothesis import strategies as st

from phasecap.errors import NumericalError, ValidationError
from phasecap.hardy import (
    HardyEnvelope,
    HardyTag,
    StateVerdict,
    classify_envelope,
    compact_support_verdict,
    envelope_fit_wavefunction,
    envelope_violation,
    hardy_check_state,
    hardy_classify,
    hermite_function,
    hermite_polynomial_value,
    majorant_verdict,
    marginal_bound_gap,
    marginal_envelope,
)
from phasecap.phasespace import SampledWavefunction, gaussian_wigner, wigner_transform

rates = st.floats(1e-3, 1e3)


def squeezed(lam, N=512, half_width=20.0, hbar=1.0):
    return SampledWavefunction.from_function(
        lambda x: (lam / (np.pi * hbar)) ** 0.25 * np.exp(-lam * x**2 / (2 * hbar)), N, half_width, hbar
    )


class TestClassify:
    @pytest.mark.parametrize(
        "a, b, tag",
        [(1.0, 1.0, HardyTag.UNIQUE_GAUSSIAN), (2.0, 1.0, HardyTag.ONLY_ZERO), (0.5, 1.0, HardyTag.NON_EMPTY)],
    )
    def test_theorem_cases(self, a, b, tag):
        verdict = hardy_classify(a, b)
        assert verdict.tag is tag and verdict.product == a * b

    @given(rates, rates)
    def test_partition(self, a, b):
        tag = hardy_classify(a, b, 1e-9).tag
        if abs(a * b - 1) <= 1e-9:
            assert tag is HardyTag.UNIQUE_GAUSSIAN
        elif a * b > 1:
            assert tag is HardyTag.ONLY_ZERO
        else:
            assert tag is HardyTag.NON_EMPTY

    def test_grid_sampling_of_the_plane(self):
        a, b = np.meshgrid(np.logspace(-2, 2, 81), np.logspace(-2, 2, 81))
        tags = np.array([[hardy_classify(x, y).tag.value for x, y in zip(ra, rb)] for ra, rb in zip(a, b)])
        assert np.all((tags == "OnlyZero") == (a * b > 1 + 1e-9))
        assert np.all((tags == "NonEmpty") == (a * b < 1 - 1e-9))
        # the anti-diagonal of the log grid lies on the hyperbola ab = 1
        assert np.all(np.fliplr(tags).diagonal() == "UniqueGaussian")

    @pytest.mark.parametrize("a, b", [(0.0, 1.0), (1.0, -1.0), (np.nan, 1.0)])
    def test_rejects_nonpositive(self, a, b):
        with pytest.raises(ValidationError):
            hardy_classify(a, b)


class TestHermite:
    def test_ground_state_is_coherent_state(self, psi0):
        np.testing.assert_allclose(hermite_function(0, 1.0, N=256, half_width=8.0).values, psi0.values, atol=1e-15)

    def test_orthonormal(self):
        hs = [hermite_function(k, 1.0) for k in range(6)]
        gram = np.array([[h.inner(g) for g in hs] for h in hs])
        assert np.max(np.abs(gram - np.eye(6))) <= 1e-7

    @pytest.mark.parametrize("k", [0, 3, 8, 12])
    @pytest.mark.parametrize("a", [0.5, 1.0, 3.0])
    def test_matches_explicit_polynomial(self, k, a):
        h = hermite_function(k, a, N=512)
        u = h.x * np.sqrt(a)
        expected = hermite_polynomial_value(k, u) * np.exp(-0.5 * u * u)
        expected *= a**0.25 / np.sqrt(2.0**k * math.factorial(k) * np.sqrt(np.pi))
        assert np.max(np.abs(h.values - expected)) <= 1e-12
        assert h.norm() == pytest.approx(1.0, abs=1e-8)

    def test_satisfies_slightly_weaker_bounds(self):
        # h_k with scale a obeys the bounds with rates (a, a (1 - eps)) for
        # large enough constants; the constants are measured on the grid
        a, eps = 1.0, 0.05
        h = hermite_function(3, a, N=512)
        env = envelope_fit_wavefunction(h)
        C_X = np.max(np.abs(h.values) * np.exp(a * (1 - eps) * h.x**2 / 2))
        trial = HardyEnvelope(C_X=C_X, a=a * (1 - eps), C_P=C_X, b=a * (1 - eps))
        holds, verdict = hardy_check_state(h, trial)
        assert holds and verdict.tag is HardyTag.NON_EMPTY
        assert env.product < 1

    @pytest.mark.parametrize("k", [13, -1, 2.5])
    def test_rejects_order(self, k):
        with pytest.raises(ValidationError):
            hermite_function(k)


class TestEnvelopeFit:
    def test_unit_gaussian(self, psi0):
        env = envelope_fit_wavefunction(psi0)
        assert env.a == pytest.approx(1.0, abs=1e-9)
        assert env.b == pytest.approx(1.0, abs=1e-6)
        assert env.C_X == pytest.approx(np.pi**-0.25, rel=1e-12)
        assert classify_envelope(env).tag is HardyTag.UNIQUE_GAUSSIAN

    @pytest.mark.parametrize("lam", [0.25, 0.5, 2.0, 4.0])
    def test_squeezed_gaussian(self, lam):
        env = envelope_fit_wavefunction(squeezed(lam))
        assert env.a == pytest.approx(lam, rel=1e-9)
        assert env.b == pytest.approx(1 / lam, rel=1e-6)
        assert env.product == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("hbar", [0.5, 2.0])
    def test_hbar_scaling(self, hbar):
        env = envelope_fit_wavefunction(coherent_state(hbar))
        assert env.a == pytest.approx(1.0, abs=1e-9) and env.b == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("k", [1, 2, 4])
    def test_hermite_product_below_one(self, k):
        assert envelope_fit_wavefunction(hermite_function(k, 1.0)).product < 1.0

    @pytest.mark.parametrize("k", [0, 1, 2, 5])
    def test_fit_is_tight(self, k):
        psi = hermite_function(k, 1.0, N=512)
        env = envelope_fit_wavefunction(psi)
        over_x, over_p = envelope_violation(psi, env)
        assert over_x <= 0.0 and over_p <= 1e-15
        # the bound touches |psi| somewhere
        bound = env.C_X * np.exp(-env.a * psi.x**2 / 2)
        assert np.min(bound - np.abs(psi.values)) <= 1e-9 * env.C_X

    @pytest.mark.parametrize("scale", [0.5, 0.8, 1.25, 2.0])
    @pytest.mark.parametrize("k", [0, 1, 3])
    def test_symplectic_dilation(self, scale, k):
        # sqrt(l) psi(l x) on the grid dilated by 1/l has the same samples
        base = hermite_function(k, 1.0, N=512, half_width=20.0)
        moved = SampledWavefunction(np.sqrt(scale) * base.values, base.x0 / scale, base.dx / scale)
        e0, e1 = envelope_fit_wavefunction(base), envelope_fit_wavefunction(moved)
        assert e1.a == pytest.approx(e0.a * scale**2, rel=1e-6)
        assert e1.b == pytest.approx(e0.b / scale**2, rel=1e-6)
        assert e1.product == pytest.approx(e0.product, rel=1e-6)

    def test_rejects_zero(self):
        with pytest.raises(ValidationError, match="all-zero"):
            envelope_fit_wavefunction(SampledWavefunction(np.zeros(64), -1.0, 1 / 32))

    def test_rejects_truncated_window(self):
        with pytest.raises(ValidationError, match="window edge"):
            envelope_fit_wavefunction(squeezed(0.25, N=256, half_width=8.0))


class TestCheckState:
    def test_coherent_state_tight(self, psi0):
        env = HardyEnvelope(C_X=np.pi**-0.25, a=1.0, C_P=np.pi**-0.25, b=1.0)
        holds, verdict = hardy_check_state(psi0, env)
        assert holds and verdict.tag is HardyTag.UNIQUE_GAUSSIAN

    def test_coherent_state_too_tight(self, psi0):
        env = HardyEnvelope(C_X=np.pi**-0.25, a=2.0, C_P=np.pi**-0.25, b=2.0)
        holds, verdict = hardy_check_state(psi0, env)
        assert not holds and verdict.tag is HardyTag.ONLY_ZERO

    def test_zero_state(self):
        zero = SampledWavefunction(np.zeros(64), -1.0, 1 / 32)
        holds, verdict = hardy_check_state(zero, HardyEnvelope(1.0, 2.0, 1.0, 1.0))
        assert holds and verdict.tag is HardyTag.ONLY_ZERO

    def test_contradiction_is_numerical_failure(self):
        # a state confined to a few samples satisfies both bounds only when
        # the grid cannot resolve its transform; this must not pass silently
        values = np.zeros(16)
        values[8] = 1.0
        # dx = 10: the transform is flat on the tiny band |p| <= pi / 10
        psi = SampledWavefunction(values, -80.0, 10.0)
        with pytest.raises(NumericalError, match="does not resolve"):
            hardy_check_state(psi, HardyEnvelope(C_X=1.0, a=1.5, C_P=5.0, b=1.0))

    def test_envelope_rejects_nonpositive(self):
        with pytest.raises(ValidationError):
            HardyEnvelope(C_X=1.0, a=0.0, C_P=1.0, b=1.0)


class TestMajorant:
    def test_coherent_state_boundary(self, psi0):
        W = wigner_transform(psi0)
        cert, verdict = majorant_verdict(W, np.eye(2))
        assert cert.valid
        assert cert.capacity == pytest.approx(np.pi, rel=1e-12)
        # C is a maximum over samples down to 1e-13 of the peak, where the
        # transform's roundoff inflates the ratio by about a percent
        assert 1 / np.pi <= cert.C <= 1.02 / np.pi
        assert verdict is StateVerdict.INCONCLUSIVE

    def test_narrow_gaussian_rejected(self, psi0):
        W = wigner_transform(psi0)
        rho = gaussian_wigner(2 * np.eye(2)).on_grid(W)
        cert, verdict = majorant_verdict(rho, 2 * np.eye(2))
        assert cert.valid and cert.capacity == pytest.approx(np.pi / 2, rel=1e-12)
        assert verdict is StateVerdict.NOT_A_STATE

    @pytest.mark.parametrize("lam", [0.5, 2.0, 3.0])
    def test_isotropic_fit(self, psi0, lam):
        W = wigner_transform(psi0)
        X, P = W.mesh()
        rho = W.like(np.exp(-lam * (X**2 + P**2)))
        cert, verdict = majorant_verdict(rho)
        assert cert.M[0, 0] == pytest.approx(lam, abs=1e-9) and cert.valid
        assert cert.C == pytest.approx(1.0, rel=1e-12)
        assert verdict is (StateVerdict.NOT_A_STATE if lam > 1 else StateVerdict.INCONCLUSIVE)

    def test_rejects_nonpositive_maximum(self, psi0):
        W = wigner_transform(psi0)
        with pytest.raises(ValidationError):
            majorant_verdict(W.like(-np.abs(W.values)))

    @pytest.mark.parametrize("a", [0.3, 0.6, 1.0])
    def test_marginal_integration_chain(self, a):
        psi = hermite_function(0, a)
        W = wigner_transform(psi)
        cert, verdict = majorant_verdict(W, a * np.eye(2))
        assert cert.valid and cert.capacity >= np.pi * (1 - 1e-12)
        assert verdict is StateVerdict.INCONCLUSIVE
        assert max(marginal_bound_gap(W, cert)) <= 1e-6
        # the integrated bounds are Hardy bounds with ab = a^2 <= 1
        env = marginal_envelope(cert)
        holds, hv = hardy_check_state(psi, env)
        assert holds and env.product == pytest.approx(a * a)

    def test_marginal_chain_for_rejected_function(self, psi0):
        W = wigner_transform(psi0)
        rho = gaussian_wigner(2 * np.eye(2)).on_grid(W)
        cert, verdict = majorant_verdict(rho, 2 * np.eye(2))
        assert verdict is StateVerdict.NOT_A_STATE
        assert max(marginal_bound_gap(rho, cert)) <= 1e-6
        assert hardy_classify(marginal_envelope(cert).a, marginal_envelope(cert).b).tag is HardyTag.ONLY_ZERO


class TestCompactSupport:
    def test_truncated_coherent_state(self, psi0):
        W = wigner_transform(psi0)
        X, P = W.mesh()
        R = 2.0
        rho = W.like(np.where(X**2 + P**2 <= R * R, W.values, 0.0))
        cert, verdict = compact_support_verdict(rho, R)
        np.testing.assert_array_equal(cert.M, 2 * np.eye(2))
        assert cert.C == pytest.approx(np.max(W.values) * np.exp(2 * R * R), rel=1e-12)
        assert cert.valid and cert.capacity == pytest.approx(np.pi / 2)
        assert verdict is StateVerdict.NOT_A_STATE

    def test_normalized_ball_indicator(self, psi0):
        W = wigner_transform(psi0)
        X, P = W.mesh()
        rho = W.like((X**2 + P**2 <= 1.0) / np.pi)
        cert, verdict = compact_support_verdict(rho, 1.0)
        assert cert.valid and verdict is StateVerdict.NOT_A_STATE

    def test_mass_outside_rejected(self, psi0):
        W = wigner_transform(psi0)
        X, P = W.mesh()
        rho = W.like(np.where(X**2 + P**2 <= 1.0, 1.0, 0.0))
        rho.values[np.argmin(np.abs(W.x - 2.0)), np.argmin(np.abs(W.p))] = 0.5
        with pytest.raises(ValidationError, match="outside radius"):
            compact_support_verdict(rho, 1.0)

"""
Admissibility of covariance matrices and classification of phase-space
Gaussians.

The Hermitian-PSD oracle is numpy.linalg.eigvalsh applied to the complex
matrix ``Sigma + (i hbar / 2) J`` directly, without the real embedding.
"""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from phasecap.admissibility import (
    CovarianceMatrix,
    Verdict,
    admissible_capacity,
    admissible_hermitian,
    classify_gaussian,
    conjugate_plane_projection_areas,
    conjugate_plane_section_areas,
    hermitian_min_eigenvalue,
    is_quantum_blob,
    min_symplectic_eigenvalue,
    robertson_schrodinger_check,
    shortest_orbit_action,
    wigner_ellipsoid,
)
from phasecap.errors import ValidationError
from phasecap.phasespace import gaussian_wigner
from phasecap.symplinalg import is_symplectic, random_symplectic, standard_form
from phasecap.williamson import Ellipsoid, ellipsoid_capacity


def random_covariance(rng, n, hbar=1.0, low=0.2, high=2.0, seed=None):
    """``S diag(nu, nu) S^T`` with symplectic eigenvalues ``nu`` in ``[low, high] hbar``."""
    S = random_symplectic(n, seed=int(rng.integers(2**31)) if seed is None else seed, spread=0.4)
    nu = rng.uniform(low, high, n) * hbar
    return CovarianceMatrix(S @ np.diag(np.concatenate([nu, nu])) @ S.T, hbar), nu


def hermitian_oracle(cov):
    n = cov.n
    H = cov.sigma + 0.5j * cov.hbar * standard_form(n)
    return np.linalg.eigvalsh(H)[0]


class TestHermitian:
    @pytest.mark.parametrize(
        "scale, expected, smallest",
        [(0.5, True, 0.0), (0.25, False, -0.25), (1.0, True, 0.5)],
    )
    @pytest.mark.parametrize("hbar", [1.0, 0.3])
    def test_isotropic(self, scale, expected, smallest, hbar):
        cov = CovarianceMatrix(scale * hbar * np.eye(2), hbar)
        assert admissible_hermitian(cov) is expected
        assert hermitian_min_eigenvalue(cov) == pytest.approx(smallest * hbar, abs=1e-14)

    def test_embedding_matches_complex_oracle(self, rng):
        for _ in range(100):
            cov, _ = random_covariance(rng, int(rng.integers(1, 4)))
            assert hermitian_min_eigenvalue(cov) == pytest.approx(hermitian_oracle(cov), abs=1e-9)

    def test_rejects_semidefinite(self):
        with pytest.raises(ValidationError):
            CovarianceMatrix(np.diag([1.0, 0.0]))

    def test_rejects_bad_hbar(self):
        with pytest.raises(ValidationError):
            CovarianceMatrix(np.eye(2), hbar=0.0)


class TestCapacityCriterion:
    @pytest.mark.parametrize("hbar", [1.0, 2.0])
    def test_boundary_coherent_state(self, hbar):
        cov = CovarianceMatrix(0.5 * hbar * np.eye(2), hbar)
        e = wigner_ellipsoid(cov)
        np.testing.assert_allclose(e.M, np.eye(2) / hbar)
        v = admissible_capacity(cov)
        assert v.capacity == pytest.approx(np.pi * hbar, rel=1e-14)
        assert v.capacity_ok and v.hermitian_psd and v.consistent
        assert v.margin == pytest.approx(0.0, abs=1e-14)

    def test_quarter(self):
        v = admissible_capacity(CovarianceMatrix(0.25 * np.eye(2)))
        assert v.capacity == pytest.approx(np.pi / 2, rel=1e-14)
        assert not v.capacity_ok and not v.hermitian_psd

    def test_capacity_is_two_pi_nu_min(self, rng):
        for _ in range(50):
            cov, nu = random_covariance(rng, 3)
            assert ellipsoid_capacity(wigner_ellipsoid(cov)) == pytest.approx(2 * np.pi * nu.min(), rel=1e-9)
            assert min_symplectic_eigenvalue(cov) == pytest.approx(nu.min(), rel=1e-9)

    @pytest.mark.parametrize("hbar", [1.0, 0.25])
    def test_equivalence_away_from_boundary(self, rng, hbar):
        for _ in range(200):
            cov, nu = random_covariance(rng, int(rng.integers(1, 4)), hbar)
            if abs(nu.min() - 0.5 * hbar) <= 1e-6 * hbar:
                continue
            v = admissible_capacity(cov)
            assert v.hermitian_psd == v.capacity_ok == (nu.min() > 0.5 * hbar)

    def test_verdict_invariant_under_symplectic_maps(self, rng):
        for seed in range(30):
            cov, _ = random_covariance(rng, 2)
            moved = cov.transformed(random_symplectic(2, seed=seed, spread=0.3))
            a, b = admissible_capacity(cov), admissible_capacity(moved)
            assert a.capacity_ok == b.capacity_ok and a.hermitian_psd == b.hermitian_psd
            assert b.capacity == pytest.approx(a.capacity, rel=1e-9)


class TestRobertsonSchrodinger:
    def test_coherent_state_saturates(self):
        cov = CovarianceMatrix(0.5 * np.eye(4))
        assert robertson_schrodinger_check(cov) == [True, True, True, True]

    def test_quarter_fails_first_kind(self):
        checks = robertson_schrodinger_check(CovarianceMatrix(0.25 * np.eye(2)))
        assert checks == [False]

    def test_admissible_passes_all(self, rng):
        for _ in range(500):
            cov, _ = random_covariance(rng, int(rng.integers(1, 4)), low=0.5, high=2.0)
            assert all(robertson_schrodinger_check(cov))

    def test_layout(self):
        # n entries of the first kind, then n (n - 1) ordered cross pairs
        assert len(robertson_schrodinger_check(CovarianceMatrix(np.eye(6)))) == 3 + 6

    def test_second_kind_is_cauchy_schwarz(self, rng):
        # the cross-pair inequalities hold for every positive-definite matrix
        for _ in range(100):
            B = rng.standard_normal((4, 4))
            cov = CovarianceMatrix(B @ B.T + 1e-3 * np.eye(4))
            assert all(robertson_schrodinger_check(cov)[2:])

    def test_first_kind_values(self):
        sigma = np.array([[1.0, 0.3], [0.3, 0.3]])
        # 0.3 >= 0.09 + 0.25 is false, 0.3 >= 0.09 + 0.0625 is true
        assert robertson_schrodinger_check(CovarianceMatrix(sigma)) == [False]
        assert robertson_schrodinger_check(CovarianceMatrix(sigma, hbar=0.5)) == [True]


class TestGeometry:
    @pytest.mark.parametrize("scale, expected", [(0.5, np.pi), (1.0, 2 * np.pi)])
    def test_orbit_action(self, scale, expected):
        assert shortest_orbit_action(CovarianceMatrix(scale * np.eye(2))) == pytest.approx(expected, rel=1e-14)

    def test_orbit_action_symplectic_invariance(self, rng):
        for seed in range(20):
            cov, _ = random_covariance(rng, 2)
            moved = cov.transformed(random_symplectic(2, seed=seed, spread=0.3))
            assert shortest_orbit_action(moved) == pytest.approx(shortest_orbit_action(cov), rel=1e-9)

    @pytest.mark.parametrize("n, low, high", [(2, 0.5, 0.5), (2, 0.5, 2.0), (3, 0.5, 3.0)])
    def test_conjugate_projections_at_least_half_h(self, rng, n, low, high):
        for _ in range(100):
            cov, _ = random_covariance(rng, n, low=low, high=high)
            assert min(conjugate_plane_projection_areas(cov)) >= np.pi - 1e-9

    def test_projection_area_of_coherent_state(self):
        np.testing.assert_allclose(conjugate_plane_projection_areas(CovarianceMatrix(0.5 * np.eye(4))), np.pi)

    def test_sections_can_fall_below_half_h(self):
        # a pure two-mode state (all symplectic eigenvalues hbar/2) whose
        # Wigner ellipsoid has a conjugate-plane section smaller than h/2
        S = random_symplectic(2, seed=9, spread=0.4)
        cov = CovarianceMatrix(0.5 * S @ S.T)
        assert admissible_capacity(cov).capacity == pytest.approx(np.pi, rel=1e-9)
        assert min(conjugate_plane_section_areas(cov)) < 0.6 * np.pi
        assert min(conjugate_plane_projection_areas(cov)) >= np.pi - 1e-9

    def test_sections_uncorrelated_modes(self):
        sigma = np.diag([0.5, 2.0, 2.0, 0.5])
        np.testing.assert_allclose(conjugate_plane_section_areas(CovarianceMatrix(sigma)), [2 * np.pi, 2 * np.pi])


class TestClassification:
    @pytest.mark.parametrize(
        "M, verdict, capacity",
        [
            (np.eye(2), Verdict.PURE_BLOB, np.pi),
            (2 * np.eye(2), Verdict.NOT_A_STATE, np.pi / 2),
            (0.5 * np.eye(2), Verdict.ADMISSIBLE_MIXED, 2 * np.pi),
            (np.eye(4), Verdict.PURE_BLOB, np.pi),
        ],
    )
    def test_examples(self, M, verdict, capacity):
        result = classify_gaussian(gaussian_wigner(M))
        assert result.verdict is verdict
        assert result.capacity == pytest.approx(capacity, rel=1e-14)

    @given(st.floats(0.05, 5.0), st.floats(0.05, 5.0))
    def test_trichotomy_exhaustive(self, a, b):
        result = classify_gaussian(gaussian_wigner(np.diag([a, b])))
        lam = np.sqrt(a * b)
        expected = (
            Verdict.PURE_BLOB if abs(lam - 1) <= 1e-8 else Verdict.NOT_A_STATE if lam > 1 else Verdict.ADMISSIBLE_MIXED
        )
        assert result.verdict is expected

    def test_squeezed_coherent_state_is_pure(self):
        S = random_symplectic(2, seed=3)
        assert classify_gaussian(gaussian_wigner(S.T @ S)).verdict is Verdict.PURE_BLOB

    def test_covariance_route(self):
        g = gaussian_wigner(CovarianceMatrix(0.5 * np.eye(2)))
        np.testing.assert_allclose(g.M, np.eye(2))


class TestQuantumBlob:
    def test_unit_ball(self):
        ok, S = is_quantum_blob(Ellipsoid(np.eye(2)))
        assert ok
        np.testing.assert_allclose(S, np.eye(2), atol=1e-14)

    def test_symplectic_image(self):
        for seed in range(10):
            R = random_symplectic(2, seed=seed)
            M = R.T @ R
            ok, S = is_quantum_blob(Ellipsoid(M))
            assert ok and is_symplectic(S)
            np.testing.assert_allclose(S.T @ M @ S, np.eye(4), atol=1e-8)

    def test_not_a_blob(self):
        assert is_quantum_blob(Ellipsoid(2 * np.eye(2))) == (False, None)

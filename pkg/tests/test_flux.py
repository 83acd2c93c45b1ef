"""Tests for the physical flux, eigenstructure and Q-scheme flux."""

import numpy as np
import pytest

from src.domain.errors import DepthDomainError, SonicDegeneracyError
from src.domain.grid import State
from src.services.numerics.flux import (
    abs_q_matrix,
    decompose_interface,
    eigendecompose,
    interface_fluxes,
    jacobian,
    numerical_flux,
    physical_flux,
    sign_matrix,
    upwind_matrices,
)
from tests.helpers import G

N_RANDOM = 1000


def random_states(rng, n=N_RANDOM, h_range=(0.5, 2.0), u_range=(-1.0, 1.0)):
    h = rng.uniform(*h_range, size=n)
    u = rng.uniform(*u_range, size=n)
    return [State(h=float(hj), q=float(hj * uj)) for hj, uj in zip(h, u)]


class TestPhysicalFlux:
    def test_rest_state(self):
        np.testing.assert_allclose(physical_flux(State(1.0, 0.0), G), [0.0, 4.905])

    def test_moving_state(self):
        np.testing.assert_allclose(physical_flux(State(2.0, 1.0), G), [1.0, 0.5 + 0.5 * G * 4.0])

    def test_dry_state_raises(self):
        with pytest.raises(DepthDomainError):
            physical_flux(State(0.0, 0.0), G)


class TestEigenstructure:
    def test_jacobian_reconstructed(self, rng):
        for w in random_states(rng):
            eig = eigendecompose(w, G)
            np.testing.assert_allclose(eig.reconstruct(), jacobian(w, G), rtol=1e-12, atol=1e-12)

    def test_eigenvalue_order(self):
        eig = eigendecompose(State(1.0, 0.5), G)
        c = np.sqrt(G)
        assert eig.lambda1 == pytest.approx(0.5 + c)
        assert eig.lambda2 == pytest.approx(0.5 - c)

    def test_dry_state_rejected(self):
        with pytest.raises(DepthDomainError):
            eigendecompose(State(1e-9, 0.0), G)

    def test_abs_q_at_rest_is_celerity(self):
        abs_q = abs_q_matrix(State(1.0, 0.0), State(1.0, 0.0), G)
        np.testing.assert_allclose(abs_q, np.sqrt(G) * np.eye(2), atol=1e-14)


class TestNumericalFlux:
    def test_consistency(self, rng):
        for w in random_states(rng):
            np.testing.assert_allclose(
                numerical_flux(w, w, G), physical_flux(w, G), rtol=1e-12, atol=1e-12
            )

    def test_vectorized_matches_scalar(self, rng):
        left = random_states(rng, 200)
        right = random_states(rng, 200)
        flux_h, flux_q = interface_fluxes(
            np.array([w.h for w in left]),
            np.array([w.q for w in left]),
            np.array([w.h for w in right]),
            np.array([w.q for w in right]),
            G,
        )
        for i, (u, v) in enumerate(zip(left, right)):
            expected = numerical_flux(u, v, G)
            assert flux_h[i] == pytest.approx(expected[0], rel=1e-12, abs=1e-12)
            assert flux_q[i] == pytest.approx(expected[1], rel=1e-12, abs=1e-12)

    def test_no_mass_flux_through_wall(self, rng):
        for w in random_states(rng):
            flux = numerical_flux(w.mirrored(), w, G)
            assert abs(flux[0]) <= 1e-13

    def test_dam_break_mass_flux(self):
        flux = numerical_flux(State(1.0, 0.0), State(0.5, 0.0), G)
        assert flux[0] == pytest.approx(0.25 * np.sqrt(G * 0.75), rel=1e-12)
        assert flux[0] == pytest.approx(0.678, abs=1e-3)

    def test_mirrored_pair_reverses_mass_flux(self, rng):
        states = random_states(rng)
        for u, v in zip(states[::2], states[1::2]):
            forward = numerical_flux(u, v, G)
            backward = numerical_flux(v.mirrored(), u.mirrored(), G)
            assert backward[0] == pytest.approx(-forward[0], rel=1e-12, abs=1e-12)

    def test_dry_interface_carries_nothing(self):
        flux_h, flux_q = interface_fluxes(
            np.array([0.0, 1.0]), np.array([0.0, 0.0]), np.array([0.0, 1.0]), np.array([0.0, 0.0]), G
        )
        assert flux_h[0] == 0.0 and flux_q[0] == 0.0
        assert flux_q[1] == pytest.approx(0.5 * G)


class TestSourceProjections:
    def test_projections_sum_to_twice_identity(self, rng):
        states = random_states(rng)
        for u, v in zip(states[::2], states[1::2]):
            d_left, d_right = upwind_matrices(u, v, G)
            np.testing.assert_allclose(d_left + d_right, 2.0 * np.eye(2), atol=1e-12)

    def test_split_source_is_consistent(self, rng):
        states = random_states(rng)
        for u, v in zip(states[::2], states[1::2]):
            d_left, d_right = upwind_matrices(u, v, G)
            source = np.array([0.0, -G * 0.5 * (u.h + v.h) * 0.3])
            np.testing.assert_allclose(0.5 * (d_left @ source + d_right @ source), source, atol=1e-12)

    def test_projections_at_rest(self):
        d_left, d_right = upwind_matrices(State(1.0, 0.0), State(1.0, 0.0), G)
        c = np.sqrt(G)
        np.testing.assert_allclose(d_left, [[1.0, 1.0 / c], [c, 1.0]], atol=1e-13)
        np.testing.assert_allclose(d_right, [[1.0, -1.0 / c], [-c, 1.0]], atol=1e-13)

    def test_supercritical_source_goes_downstream(self):
        # u = 5 exceeds sqrt(g h), so both waves travel right.
        d_left, d_right = upwind_matrices(State(1.0, 5.0), State(1.0, 5.0), G)
        np.testing.assert_allclose(d_left, 2.0 * np.eye(2), atol=1e-12)
        np.testing.assert_allclose(d_right, np.zeros((2, 2)), atol=1e-12)

    def test_sign_matrix_is_an_involution(self, rng):
        for w in random_states(rng, 200):
            s11, s12, s21, s22 = sign_matrix(w.h, w.q, G)
            sign = np.array([[s11, s12], [s21, s22]])
            np.testing.assert_allclose(sign @ sign, np.eye(2), atol=1e-12)

    def test_rest_state_entries(self):
        s11, s12, s21, s22 = sign_matrix(1.0, 0.0, G)
        assert s12 == pytest.approx(1.0 / np.sqrt(G))
        assert s22 == 0.0

    def test_critical_state_without_regularization(self):
        critical_q = np.sqrt(G)  # u = sqrt(g h) at h = 1
        with pytest.raises(SonicDegeneracyError):
            sign_matrix(1.0, critical_q, G, regularize=False)

    def test_critical_state_with_regularization_is_finite(self):
        entries = sign_matrix(1.0, np.sqrt(G), G, regularize=True)
        assert all(np.isfinite(e) for e in entries)

    def test_decompose_interface(self):
        result = decompose_interface(State(1.0, 0.2), State(1.2, 0.1), G)
        np.testing.assert_allclose(result.D_L + result.D_R, 2.0 * np.eye(2), atol=1e-12)
        np.testing.assert_allclose(
            result.abs_Q, abs_q_matrix(State(1.0, 0.2), State(1.2, 0.1), G)
        )

"""Tests for the homogeneous step and the CFL time step."""

import numpy as np
import pytest

from src.domain.boundary import BoundaryCondition, PrescribedDischarge, Transmissive, Wall
from src.domain.errors import NoWaveError, PositivityError
from src.services.numerics.homogeneous import (
    cfl_dt,
    clip_negative_depths,
    homogeneous_step,
    homogeneous_update,
    max_wave_speed,
    next_stop,
    stable_dt,
)
from tests.helpers import G, make_field

WALLS = BoundaryCondition.walls()


class TestHomogeneousStep:
    def test_uniform_rest_state_is_unchanged(self, config):
        field = make_field(np.ones(8))
        result = homogeneous_step(field, 0.1, WALLS, config)
        np.testing.assert_array_equal(result.h, field.h)
        np.testing.assert_array_equal(result.q, field.q)
        assert result.time == pytest.approx(0.1)

    def test_dam_break_first_step(self, config):
        # Only the two cells next to the jump see a flux difference.
        h0 = np.array([2.0] * 5 + [1.0] * 5)
        field = make_field(h0)
        dt = 0.01
        result = homogeneous_step(field, dt, WALLS, config)

        celerity = np.sqrt(G * 1.5)
        expected_h = h0.copy()
        expected_h[4] = 2.0 - dt * 0.5 * celerity
        expected_h[5] = 1.0 + dt * 0.5 * celerity
        expected_q = np.zeros(10)
        expected_q[4:6] = 0.75 * G * dt

        np.testing.assert_allclose(result.h, expected_h, rtol=0, atol=1e-14)
        np.testing.assert_allclose(result.q, expected_q, rtol=0, atol=1e-14)

    def test_water_at_rest_over_varying_bottom(self, config):
        dx = 0.1
        x = (np.arange(10) + 0.5) * dx
        b = 0.2 + 0.1 * np.sin(2 * np.pi * x)
        h = 1.0 - b
        field = make_field(h, b=b, dx=dx)
        dt = stable_dt(field, config)
        result = homogeneous_step(field, dt, WALLS, config)

        # Wall ghosts copy the edge depths.
        padded = [h[0], *h, h[-1]]
        expected_h, expected_q = [], []
        for j in range(10):
            left, centre, right = padded[j], padded[j + 1], padded[j + 2]
            c_left = np.sqrt(G * 0.5 * (left + centre))
            c_right = np.sqrt(G * 0.5 * (centre + right))
            balance = c_right * (right - centre) - c_left * (centre - left)
            expected_h.append(centre + 0.5 * dt / dx * balance)
            expected_q.append(-G * dt / (4 * dx) * (right**2 - left**2))

        np.testing.assert_allclose(result.h, expected_h, rtol=0, atol=1e-13)
        np.testing.assert_allclose(result.q, expected_q, rtol=0, atol=1e-13)

    def test_mass_conserved_between_walls(self, config, rng):
        field = make_field(rng.uniform(0.5, 1.5, 40), q=rng.uniform(-0.2, 0.2, 40), dx=0.25)
        dt = 0.5 * stable_dt(field, config)
        result = homogeneous_step(field, dt, WALLS, config)
        assert result.mass() == pytest.approx(field.mass(), rel=1e-14)

    def test_mirror_symmetry(self, config):
        x = np.linspace(-1.0, 1.0, 20)
        field = make_field(1.0 + 0.3 * np.exp(-10 * x**2), dx=0.1)
        result = field
        for _ in range(5):
            result = homogeneous_step(result, 0.5 * stable_dt(result, config), WALLS, config)
        np.testing.assert_allclose(result.h, result.h[::-1], rtol=0, atol=1e-13)
        np.testing.assert_allclose(result.q, -result.q[::-1], rtol=0, atol=1e-13)

    def test_inflow_matches_mass_change(self, config):
        bc = BoundaryCondition(left=PrescribedDischarge(discharge=lambda t: 0.5), right=Wall())
        field = make_field(np.ones(10))
        result = homogeneous_update(field, 0.05, bc, config)
        assert result.clipped_mass == 0.0
        assert result.boundary_inflow > 0.0
        assert result.field.mass() - field.mass() == pytest.approx(result.boundary_inflow, rel=1e-12)

    def test_transmissive_uniform_flow_is_unchanged(self, config):
        bc = BoundaryCondition(left=Transmissive(), right=Transmissive())
        field = make_field(np.ones(6), q=np.full(6, 0.5))
        result = homogeneous_update(field, 0.05, bc, config)
        np.testing.assert_allclose(result.field.h, 1.0, rtol=0, atol=1e-14)
        np.testing.assert_allclose(result.field.q, 0.5, rtol=0, atol=1e-14)
        assert result.boundary_inflow == pytest.approx(0.0, abs=1e-15)

    def test_draining_cell_is_reported(self, config):
        field = make_field([1.0, 2.0, 1.0])
        with pytest.raises(PositivityError) as excinfo:
            homogeneous_step(field, 10.0, WALLS, config)
        assert excinfo.value.cell == 1
        assert excinfo.value.depth < 0.0

    @pytest.mark.parametrize("dt", [0.0, -1.0, float("nan")])
    def test_invalid_time_step(self, config, dt):
        with pytest.raises(ValueError):
            homogeneous_step(make_field(np.ones(4)), dt, WALLS, config)


class TestClipping:
    def test_roundoff_is_clipped(self):
        h = np.array([1.0, -1e-13])
        q = np.array([0.0, 0.5])
        added = clip_negative_depths(h, q, 2.0, 1e-12, 0.0, "test")
        assert added == pytest.approx(2e-13)
        assert h[1] == 0.0 and q[1] == 0.0

    def test_deep_negative_raises(self):
        with pytest.raises(PositivityError) as excinfo:
            clip_negative_depths(np.array([1.0, 1.0, -1e-3]), np.zeros(3), 1.0, 1e-12, 3.0, "test")
        assert excinfo.value.cell == 2
        assert excinfo.value.time == 3.0

    def test_infinite_tolerance_clips_everything(self):
        h = np.array([-0.5, 1.0])
        added = clip_negative_depths(h, np.zeros(2), 1.0, float("inf"), 0.0, "test")
        assert added == pytest.approx(0.5)
        assert h[0] == 0.0

    def test_nothing_to_clip(self):
        assert clip_negative_depths(np.ones(3), np.zeros(3), 1.0, 1e-12, 0.0, "test") == 0.0


class TestTimeStep:
    def test_wave_speed_at_rest(self, config):
        assert max_wave_speed(make_field(np.ones(4)), config) == pytest.approx(np.sqrt(G))

    def test_dry_cells_are_ignored(self, config):
        field = make_field([0.0, 1.0], q=[0.0, 2.0])
        assert max_wave_speed(field, config) == pytest.approx(2.0 + np.sqrt(G))

    def test_all_dry_raises(self, config):
        with pytest.raises(NoWaveError):
            max_wave_speed(make_field([0.0, 0.0]), config)

    def test_unclamped_step(self, config):
        field = make_field(np.ones(4))
        config = config.with_overrides(t_end=100.0)
        assert cfl_dt(field, config) == pytest.approx(0.5 / np.sqrt(G))

    def test_clamped_to_t_end(self, config):
        field = make_field(np.ones(4))
        assert cfl_dt(field, config.with_overrides(t_end=0.1)) == pytest.approx(0.1)

    def test_clamped_to_snapshot(self, config):
        field = make_field(np.ones(4))
        config = config.with_overrides(t_end=10.0, snapshot_times=(0.05, 5.0))
        assert cfl_dt(field, config) == pytest.approx(0.05)

    def test_next_stop(self, config):
        config = config.with_overrides(t_end=10.0, snapshot_times=(1.0, 5.0))
        assert next_stop(0.0, config) == 1.0
        assert next_stop(1.0, config) == 5.0
        assert next_stop(7.0, config) == 10.0

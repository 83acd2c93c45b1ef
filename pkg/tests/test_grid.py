"""Tests for the domain value types and run configuration."""

import numpy as np
import pytest

from src.config import AppConfig, OutputConfig, RunConfig
from src.domain.errors import ConfigurationError, DepthDomainError
from src.domain.grid import Bathymetry, State, free_surface, lake_at_rest, make_grid
from src.domain.scheme import Scheme
from tests.helpers import make_field


class TestState:
    def test_negative_depth_rejected(self):
        with pytest.raises(DepthDomainError):
            State(h=-0.1, q=0.0)

    def test_non_finite_rejected(self):
        with pytest.raises(DepthDomainError):
            State(h=1.0, q=float("nan"))

    def test_mirrored_flips_discharge(self):
        assert State(h=2.0, q=0.7).mirrored() == State(h=2.0, q=-0.7)

    def test_mean(self):
        assert State.mean(State(1.0, 2.0), State(3.0, -2.0)) == State(2.0, 0.0)

    def test_velocity_of_dry_state_raises(self):
        with pytest.raises(DepthDomainError):
            State(h=0.0, q=0.0).velocity()


class TestGrid:
    def test_spacing_and_centers(self):
        grid = make_grid(0.0, 1.0, 4)
        assert grid.dx == pytest.approx(0.25)
        np.testing.assert_allclose(grid.cell_centers, [0.125, 0.375, 0.625, 0.875])

    @pytest.mark.parametrize("n_cells", [0, 1])
    def test_too_few_cells(self, n_cells):
        with pytest.raises(ConfigurationError):
            make_grid(0.0, 1.0, n_cells)

    def test_degenerate_domain(self):
        with pytest.raises(ConfigurationError):
            make_grid(1.0, 1.0, 10)


class TestField:
    def test_arrays_are_read_only(self):
        field = make_field([1.0, 1.0])
        with pytest.raises(ValueError):
            field.h[0] = 2.0

    def test_negative_depth_rejected(self):
        with pytest.raises(DepthDomainError):
            make_field([1.0, -1e-3])

    def test_length_mismatch_rejected(self):
        with pytest.raises(ConfigurationError):
            make_field([1.0, 1.0], q=[0.0])

    def test_mass(self):
        field = make_field([1.0, 2.0, 3.0], dx=0.5)
        assert field.mass() == pytest.approx(3.0)

    def test_evolve_keeps_other_members(self):
        field = make_field([1.0, 2.0], b=[0.1, 0.2])
        evolved = field.evolve(q=[0.5, 0.5], time=1.0)
        np.testing.assert_array_equal(evolved.h, field.h)
        np.testing.assert_array_equal(evolved.q, [0.5, 0.5])
        assert evolved.bathymetry is field.bathymetry
        assert evolved.time == 1.0

    def test_wet_mask_threshold(self):
        field = make_field([0.0, 5e-7, 1e-6, 1.0])
        np.testing.assert_array_equal(field.wet_mask(1e-6), [False, False, True, True])


class TestBathymetry:
    def test_effective_bottom_keeps_pristine(self):
        bathymetry = Bathymetry(b=[0.0, 0.5])
        redefined = bathymetry.with_effective(np.array([0.0, 0.1]))
        assert redefined.is_redefined
        np.testing.assert_array_equal(redefined.b_pristine, [0.0, 0.5])
        assert not bathymetry.is_redefined

    def test_lake_at_rest_has_flat_surface(self):
        grid = make_grid(0.0, 1.0, 20)
        bathymetry = Bathymetry.from_function(grid, lambda x: 0.3 * np.sin(np.pi * x))
        field = lake_at_rest(grid, bathymetry, 1.0)
        np.testing.assert_allclose(free_surface(field), 1.0, rtol=0, atol=1e-15)
        assert np.all(field.q == 0.0)


class TestRunConfig:
    def test_scheme_string_is_converted(self):
        assert RunConfig(scheme="QTra3").scheme is Scheme.QTRA3

    @pytest.mark.parametrize("cfl", [0.0, -0.5, 1.5])
    def test_cfl_out_of_range(self, cfl):
        with pytest.raises(ConfigurationError):
            RunConfig(cfl=cfl)

    def test_unknown_scheme(self):
        with pytest.raises(ConfigurationError):
            RunConfig(scheme="qtra9")

    def test_snapshots_must_be_sorted(self):
        with pytest.raises(ConfigurationError):
            RunConfig(t_end=2.0, snapshot_times=(2.0, 1.0))

    def test_snapshots_within_t_end(self):
        with pytest.raises(ConfigurationError):
            RunConfig(t_end=1.0, snapshot_times=(2.0,))

    def test_only_trapezoidal_quadrature(self):
        with pytest.raises(ConfigurationError):
            RunConfig(source_quadrature="simpson")

    def test_clip_tolerance(self):
        assert RunConfig().clip_tolerance == 1e-12
        assert RunConfig(wet_dry=True).clip_tolerance == float("inf")

    def test_with_overrides_validates_again(self):
        with pytest.raises(ConfigurationError):
            RunConfig().with_overrides(g=0.0)


class TestAppConfig:
    def test_from_env(self, monkeypatch, tmp_path):
        monkeypatch.setenv("SPLITSWE_OUTPUT_DIR", str(tmp_path))
        monkeypatch.setenv("SPLITSWE_SHOW_PROGRESS", "true")
        monkeypatch.setenv("SPLITSWE_LOG_LEVEL", "debug")
        app = AppConfig.from_env()
        assert app.output.output_dir == tmp_path
        assert app.output.show_progress
        assert app.logging.level == "DEBUG"

    def test_with_overrides(self):
        app = AppConfig(output=OutputConfig(), logging=AppConfig.from_env().logging)
        changed = app.with_overrides(output_params={"csv_digits": 12})
        assert changed.output.csv_digits == 12
        assert app.output.csv_digits == 17

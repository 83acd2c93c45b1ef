"""End-to-end runs of the splitting loop on the benchmark scenarios."""

import numpy as np
import pytest

from src.domain.errors import ConfigurationError
from src.domain.grid import free_surface
from src.domain.scheme import Scheme
from src.services.scenarios import analytic_error, get_scenario, scenario_config
from src.services.simulation import MemorySnapshotSink, SimulationService, run_simulation


class TestStationaryRuns:
    def test_upwind_scheme_keeps_water_at_rest(self):
        scenario = get_scenario(2)
        summary = run_simulation(scenario, scenario_config(scenario, scheme=Scheme.QTRA2))
        field = summary.final_field
        assert summary.final_time == pytest.approx(0.25)
        assert np.max(np.abs(field.q)) <= 1e-12
        assert analytic_error(field, scenario, "linf") <= 1e-12

    def test_trapezoidal_scheme_drifts(self):
        scenario = get_scenario(2)
        summary = run_simulation(scenario, scenario_config(scenario, scheme=Scheme.QTRA1))
        assert analytic_error(summary.final_field, scenario, "linf") > 0.0

    def test_mass_conserved_between_walls(self):
        scenario = get_scenario(1)
        summary = run_simulation(scenario, scenario_config(scenario, n_cells=100, t_end=0.2))
        assert summary.boundary_inflow == 0.0
        assert summary.relative_mass_defect < 1e-12


class TestTimeLoop:
    def test_zero_end_time(self):
        scenario = get_scenario(1)
        sink = MemorySnapshotSink()
        config = scenario_config(scenario, t_end=0.0, snapshot_times=(0.0,))
        summary = run_simulation(scenario, config, sink)
        assert summary.steps == 0
        assert sink.times == [0.0]
        np.testing.assert_array_equal(summary.final_field.h, SimulationService(scenario, config).initial_field().h)

    def test_snapshots_land_on_scheduled_times(self):
        scenario = get_scenario(1)
        sink = MemorySnapshotSink()
        config = scenario_config(scenario, n_cells=50, t_end=0.1, snapshot_times=(0.0, 0.025, 0.05, 0.1))
        run_simulation(scenario, config, sink)
        assert sink.times == [0.0, 0.025, 0.05, 0.1]

    def test_max_steps_stops_early(self):
        scenario = get_scenario(1)
        config = scenario_config(scenario, n_cells=50, max_steps=3)
        summary = run_simulation(scenario, config)
        assert summary.steps == 3
        assert summary.final_time < config.t_end

    def test_dry_start_needs_wet_dry_scheme(self):
        scenario = get_scenario(4)
        config = scenario_config(scenario, scheme=Scheme.QTRA2, t_end=0.1)
        with pytest.raises(ConfigurationError):
            run_simulation(scenario, config)

    def test_shoreline_ledger_includes_boundary_friction(self):
        scenario = get_scenario(4)
        summary = run_simulation(scenario, scenario_config(scenario, t_end=0.5, snapshot_times=()))
        assert summary.boundary_source_mass < 0.0
        assert summary.relative_mass_defect < 1e-10
        assert summary.to_dict()["boundary_source_mass"] == summary.boundary_source_mass

    def test_tidal_inflow_is_tracked(self):
        scenario = get_scenario(3)
        summary = run_simulation(scenario, scenario_config(scenario, t_end=600.0, snapshot_times=()))
        assert summary.boundary_inflow > 0.0
        assert summary.relative_mass_defect < 1e-10


class TestDamBreak:
    def test_schemes_agree(self):
        scenario = get_scenario(1)
        results = {
            scheme: run_simulation(scenario, scenario_config(scenario, scheme=scheme)).final_field
            for scheme in (Scheme.QTRA1, Scheme.QTRA2)
        }
        first, second = results[Scheme.QTRA1], results[Scheme.QTRA2]
        l1 = float(np.sum(np.abs(free_surface(first) - free_surface(second))) * first.grid.dx)
        assert l1 == pytest.approx(0.001824643275791368, abs=1e-12)

    def test_depths_stay_positive(self):
        scenario = get_scenario(1)
        summary = run_simulation(scenario, scenario_config(scenario))
        assert summary.min_depth > 0.0
        assert summary.final_time == pytest.approx(0.5)


@pytest.mark.slow
class TestLongRuns:
    def test_tide_reaches_asymptotic_surface(self):
        scenario = get_scenario(3)
        summary = run_simulation(scenario, scenario_config(scenario, scheme=Scheme.QTRA2))
        field = summary.final_field
        assert summary.final_time == pytest.approx(10800.0)
        assert np.max(np.abs(free_surface(field) - 20.0)) <= 0.2

    def test_shoreline_run_is_stable(self):
        scenario = get_scenario(4)
        config = scenario_config(scenario)
        sink = MemorySnapshotSink()
        summary = run_simulation(scenario, config, sink)
        assert summary.final_time == pytest.approx(5.0)
        assert summary.min_depth >= 0.0
        assert sink.times == [1.0, 2.0, 3.0, 4.0, 5.0]
        for field in sink.fields:
            assert np.all(np.isfinite(field.h)) and np.all(np.isfinite(field.q))
            assert np.all(field.h >= 0.0)
            dry = field.h < config.dry_eps
            assert np.all(field.q[dry] == 0.0)

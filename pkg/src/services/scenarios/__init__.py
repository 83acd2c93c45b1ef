"""Benchmark scenarios and their analytic references."""

from .analytic import Norm, analytic_error, surface_difference
from .bathymetry_loader import BathymetryProfile, load_bottom_profile
from .catalog import SCENARIOS, get_scenario, initial_field, scenario_config

__all__ = [
    "Norm",
    "analytic_error",
    "surface_difference",
    "BathymetryProfile",
    "load_bottom_profile",
    "SCENARIOS",
    "get_scenario",
    "initial_field",
    "scenario_config",
]

"""Run one scenario with several schemes and compare their final surfaces."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from src.config import RunConfig
from src.domain.errors import ConfigurationError
from src.domain.report import SimulationSummary
from src.domain.scenario import Scenario
from src.domain.scheme import Scheme
from src.services.scenarios.analytic import Norm, analytic_error, surface_difference
from src.services.scenarios.catalog import scenario_config
from src.services.simulation.simulation_service import run_simulation
from src.utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class PairwiseDifference:
    first: Scheme
    second: Scheme
    l1: float
    linf: float


@dataclass
class SchemeComparison:
    """Final-time surface differences between schemes, and against the reference if any."""

    scenario: str
    final_time: float
    summaries: Dict[Scheme, SimulationSummary] = field(default_factory=dict)
    differences: List[PairwiseDifference] = field(default_factory=list)
    analytic: Dict[Scheme, Tuple[float, float]] = field(default_factory=dict)  # (l1, linf)

    def difference(self, first: Scheme, second: Scheme) -> PairwiseDifference:
        if first == second:
            return PairwiseDifference(first, second, 0.0, 0.0)
        for diff in self.differences:
            if {diff.first, diff.second} == {first, second}:
                return diff
        raise KeyError(f"No comparison between {first.label} and {second.label}")

    def to_table(self) -> str:
        lines = [
            f"Scheme comparison: {self.scenario} at t={self.final_time:g} s",
            f"{'pair':>18} {'L1':>12} {'Linf':>12}",
        ]
        for diff in self.differences:
            pair = f"{diff.first.label}/{diff.second.label}"
            lines.append(f"{pair:>18} {diff.l1:>12.4e} {diff.linf:>12.4e}")
        for scheme, (l1, linf) in self.analytic.items():
            lines.append(f"{scheme.label + '/exact':>18} {l1:>12.4e} {linf:>12.4e}")
        return "\n".join(lines)

    def to_key_values(self) -> str:
        pairs = [("scenario", self.scenario), ("final_time", f"{self.final_time:.17g}")]
        for diff in self.differences:
            key = f"{diff.first.value}_{diff.second.value}"
            pairs.append((f"{key}_l1", f"{diff.l1:.17g}"))
            pairs.append((f"{key}_linf", f"{diff.linf:.17g}"))
        for scheme, (l1, linf) in self.analytic.items():
            pairs.append((f"{scheme.value}_exact_l1", f"{l1:.17g}"))
            pairs.append((f"{scheme.value}_exact_linf", f"{linf:.17g}"))
        return "\n".join(f"{key}={value}" for key, value in pairs)


def compare_schemes(
    scenario: Scenario,
    schemes: Sequence[Scheme],
    config: Optional[RunConfig] = None,
) -> SchemeComparison:
    """Run ``scenario`` once per scheme and compare the surfaces at t_end over wet cells.

    Raises:
        ConfigurationError: Q-tra3 requested without a Manning coefficient
    """
    base = config or scenario_config(scenario)
    schemes = list(dict.fromkeys(schemes))
    friction = [s for s in schemes if s.has_friction]
    if friction and not (scenario.has_friction or base.manning_M > 0.0):
        raise ConfigurationError(
            f"{friction[0].label} needs a Manning coefficient; '{scenario.name}' has none"
        )

    comparison = SchemeComparison(scenario=scenario.name, final_time=base.t_end)
    for scheme in schemes:
        summary = run_simulation(scenario, base.with_overrides(scheme=scheme))
        comparison.summaries[scheme] = summary
        if scenario.has_reference:
            final = summary.final_field
            comparison.analytic[scheme] = (
                analytic_error(final, scenario, Norm.L1, base.dry_eps),
                analytic_error(final, scenario, Norm.LINF, base.dry_eps),
            )

    for first, second in combinations(schemes, 2):
        a = comparison.summaries[first].final_field
        b = comparison.summaries[second].final_field
        comparison.differences.append(
            PairwiseDifference(
                first=first,
                second=second,
                l1=surface_difference(a, b, Norm.L1, base.dry_eps),
                linf=surface_difference(a, b, Norm.LINF, base.dry_eps),
            )
        )

    logger.info(f"Compared {len(schemes)} scheme(s) on {scenario.name}")
    return comparison

"""Command-line driver.

    splitswe run --test 3 --scheme qtra2 --out output/test3
    splitswe verify c-property --scheme qtra1 --grids 50,100,200
    splitswe verify compare --test 1 --schemes qtra1,qtra2

Exit codes: 0 success, 1 solver failure (or an unmet expectation), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from dotenv import dotenv_values

from src.config import AppConfig, RunConfig
from src.domain.errors import ConfigurationError, SolverError
from src.domain.report import Classification
from src.domain.scenario import Scenario
from src.domain.scheme import Scheme
from src.services.scenarios.catalog import bump_bottom, get_scenario, scenario_config
from src.services.simulation.simulation_service import run_simulation
from src.services.simulation.snapshot_writer import CsvSnapshotSink
from src.services.verification.c_property import DEFAULT_GRIDS, DEFAULT_STEPS, check_c_property
from src.services.verification.scheme_comparison import compare_schemes
from src.utils.logging import get_logger, set_level

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

VERIFY_LEVEL = 1.0  # m, water level over the stationary-test bump
VERIFY_MANNING = 0.015

EXPECTED_CLASSIFICATION = {
    Scheme.QTRA1: Classification.APPROXIMATE,
    Scheme.QTRA2: Classification.EXACT,
    Scheme.QTRA3: Classification.EXACT,
}


class UsageErrorParser(argparse.ArgumentParser):
    """ArgumentParser that raises ConfigurationError instead of exiting."""

    def error(self, message: str):
        raise ConfigurationError(message)


# ---------------------------------------------------------------------------
# Value parsers (shared by flags and config-file entries)
# ---------------------------------------------------------------------------


def _positive_int(value: str) -> int:
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"Expected an integer, got '{value}'") from None
    if number < 1:
        raise ConfigurationError(f"Expected a positive integer, got {number}")
    return number


def _float(value: str) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"Expected a number, got '{value}'") from None


def _float_list(value: str) -> Tuple[float, ...]:
    items = [item.strip() for item in str(value).split(",") if item.strip()]
    if not items:
        raise ConfigurationError(f"Expected a comma-separated list of times, got '{value}'")
    return tuple(_float(item) for item in items)


def _grid_list(value: str) -> Tuple[int, ...]:
    items = [item.strip() for item in str(value).split(",")]
    if not items or any(not item for item in items):
        raise ConfigurationError(f"Malformed grid list '{value}'")
    grids = tuple(_positive_int(item) for item in items)
    if any(n < 2 for n in grids):
        raise ConfigurationError(f"Every grid needs at least 2 cells: '{value}'")
    return grids


def _scheme_list(value: str) -> Tuple[Scheme, ...]:
    items = [item.strip() for item in str(value).split(",") if item.strip()]
    if not items:
        raise ConfigurationError(f"Expected a comma-separated list of schemes, got '{value}'")
    return tuple(Scheme.from_string(item) for item in items)


def _flag(value) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off", ""):
        return False
    raise ConfigurationError(f"Expected a boolean, got '{value}'")


def _test_number(value: str) -> int:
    number = _positive_int(value)
    if number not in (1, 2, 3, 4):
        raise ConfigurationError(f"Unknown test {number} (choose 1, 2, 3 or 4)")
    return number


# Config-file key (flag name without dashes) -> (argparse dest, converter)
CONFIG_KEYS: Dict[str, Tuple[str, Callable]] = {
    "test": ("test", _test_number),
    "scheme": ("scheme", Scheme.from_string),
    "cells": ("cells", _positive_int),
    "cfl": ("cfl", _float),
    "tend": ("t_end", _float),
    "snapshots": ("snapshots", _float_list),
    "manning": ("manning", _float),
    "out": ("out", Path),
    "bottomfile": ("bottom_file", Path),
    "paperliteralbump": ("paper_literal_bump", _flag),
}


def read_config_file(path: Path) -> Dict[str, object]:
    """Flat ``key=value`` file; keys are flag names with or without dashes.

    Raises:
        ConfigurationError: missing file or unknown key
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigurationError(f"Config file not found: {path}")

    values = {}
    for key, raw in dotenv_values(path).items():
        normalized = key.strip().lower().replace("-", "").replace("_", "")
        if normalized not in CONFIG_KEYS:
            raise ConfigurationError(f"Unknown config key '{key}' in {path}")
        dest, convert = CONFIG_KEYS[normalized]
        values[dest] = convert(raw if raw is not None else "")
    return values


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_run_arguments(parser: argparse.ArgumentParser) -> None:
    # Defaults stay None so that scenario and config-file values show through.
    parser.add_argument("--test", type=_test_number, help="Benchmark number (1-4)")
    parser.add_argument("--scheme", type=Scheme.from_string, help="qtra1, qtra2 or qtra3")
    parser.add_argument("--cells", type=_positive_int, help="Number of cells")
    parser.add_argument("--cfl", type=_float, help="CFL number in (0, 1]")
    parser.add_argument("--t-end", dest="t_end", type=_float, help="Final time (s)")
    parser.add_argument("--snapshots", type=_float_list, help="Snapshot times t1,t2,...")
    parser.add_argument("--manning", type=_float, help="Manning coefficient M")
    parser.add_argument("--bottom-file", dest="bottom_file", type=Path, help="Bottom profile (test 3)")
    parser.add_argument(
        "--paper-literal-bump",
        dest="paper_literal_bump",
        action="store_const",
        const=True,
        default=None,
        help="Use the bump formula with offset 1 (tests 1 and 2)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = UsageErrorParser(
        prog="splitswe",
        description="Time-splitting finite-volume solver for the 1D shallow water equations",
    )
    parser.add_argument("--log-level", dest="log_level", help="DEBUG, INFO, WARNING or ERROR")
    commands = parser.add_subparsers(dest="command", parser_class=UsageErrorParser)
    commands.required = True

    run = commands.add_parser("run", help="Run a benchmark scenario")
    _add_run_arguments(run)
    run.add_argument("--out", type=Path, help="Output directory for CSV snapshots")
    run.add_argument("--config", type=Path, help="key=value file with run options")
    run.add_argument(
        "--progress", action="store_const", const=True, default=None, help="Show a progress bar"
    )

    verify = commands.add_parser("verify", help="Verification checks")
    checks = verify.add_subparsers(dest="check", parser_class=UsageErrorParser)
    checks.required = True

    c_property = checks.add_parser("c-property", help="Water-at-rest check over several grids")
    c_property.add_argument("--scheme", type=Scheme.from_string, default=Scheme.QTRA2)
    c_property.add_argument("--grids", type=_grid_list, default=DEFAULT_GRIDS)
    c_property.add_argument("--steps", type=_positive_int, default=DEFAULT_STEPS)
    c_property.add_argument("--level", type=_float, default=VERIFY_LEVEL, help="Surface level (m)")
    c_property.add_argument("--manning", type=_float, help="Manning coefficient for qtra3")
    c_property.add_argument("--format", choices=("table", "kv"), default="table")

    compare = checks.add_parser("compare", help="Compare schemes on one scenario")
    compare.add_argument("--test", type=_test_number, required=True)
    compare.add_argument("--schemes", type=_scheme_list, default=(Scheme.QTRA1, Scheme.QTRA2))
    compare.add_argument("--cells", type=_positive_int)
    compare.add_argument("--t-end", dest="t_end", type=_float)
    compare.add_argument("--paper-literal-bump", dest="paper_literal_bump", action="store_true")
    compare.add_argument("--format", choices=("table", "kv"), default="table")
    return parser


# ---------------------------------------------------------------------------
# run
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RunOptions:
    scenario: Scenario
    config: RunConfig
    output_dir: Path
    show_progress: bool


def resolve_run(args: argparse.Namespace, app: Optional[AppConfig] = None) -> RunOptions:
    """Merge scenario defaults < config file < flags.

    Raises:
        ConfigurationError: missing test, invalid values, or a friction scheme
            on a frictionless scenario without an explicit Manning coefficient
    """
    app = app or AppConfig.from_env()
    values: Dict[str, object] = {}
    if getattr(args, "config", None) is not None:
        values.update(read_config_file(args.config))
    values.update({key: value for key, value in vars(args).items() if value is not None})

    if "test" not in values:
        raise ConfigurationError("No test selected (use --test or 'test=' in the config file)")

    scenario = get_scenario(
        values["test"],
        paper_literal_bump=bool(values.get("paper_literal_bump", False)),
        bottom_file=values.get("bottom_file"),
    )
    scheme = values.get("scheme", scenario.default_scheme)
    if scheme.has_friction and not scenario.has_friction and "manning" not in values:
        raise ConfigurationError(
            f"{scheme.label} on frictionless scenario '{scenario.name}' needs an "
            f"explicit --manning (use --manning 0 for no friction)"
        )
    if "manning" in values and values["manning"] > 0.0 and not scheme.has_friction:
        logger.warning(f"--manning is ignored by {scheme.label}")

    config = scenario_config(
        scenario,
        scheme=scheme,
        cfl=values.get("cfl"),
        n_cells=values.get("cells"),
        t_end=values.get("t_end"),
        manning_M=values.get("manning"),
        snapshot_times=values.get("snapshots"),
    )
    if not config.snapshot_times:
        config = config.with_overrides(snapshot_times=(config.t_end,))

    return RunOptions(
        scenario=scenario,
        config=config,
        output_dir=Path(values.get("out", app.output.output_dir / scenario.name)),
        show_progress=bool(values.get("progress", app.output.show_progress)),
    )


def parse_config(argv: Sequence[str]) -> Tuple[Scenario, RunConfig]:
    """Parse ``run`` options (without the subcommand) into a scenario and its configuration."""
    args = build_parser().parse_args(["run", *argv])
    options = resolve_run(args)
    return options.scenario, options.config


def _run(args: argparse.Namespace, app: AppConfig) -> int:
    options = resolve_run(args, app)
    config = options.config
    sink = CsvSnapshotSink(
        options.output_dir,
        prefix=f"{options.scenario.name}_{config.scheme.value}_",
        include_effective=config.wet_dry,
        digits=app.output.csv_digits,
    )
    for note in options.scenario.notes:
        logger.info(f"Note: {note}")

    summary = run_simulation(options.scenario, config, sink, options.show_progress)

    summary_path = options.output_dir / f"{options.scenario.name}_{config.scheme.value}_summary.json"
    summary_path.parent.mkdir(parents=True, exist_ok=True)
    with open(summary_path, "w", encoding="utf-8") as f:
        json.dump(summary.to_dict(), f, indent=2)
    logger.info(f"Saved summary to {summary_path}")

    for path in summary.snapshot_paths:
        print(path)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _verify_c_property(args: argparse.Namespace) -> int:
    scheme = args.scheme
    manning = args.manning
    if manning is None:
        manning = VERIFY_MANNING if scheme is Scheme.QTRA3 else 0.0
    config = RunConfig(scheme=scheme, cfl=0.5, manning_M=manning)

    report = check_c_property(
        scheme,
        bump_bottom(),
        args.level,
        grid_sizes=args.grids,
        n_steps=args.steps,
        config=config,
    )
    print(report.to_table() if args.format == "table" else report.to_key_values())

    expected = EXPECTED_CLASSIFICATION[scheme]
    if report.classification is not expected:
        logger.error(f"{scheme.label}: expected {expected.value}, got {report.label}")
        return EXIT_FAILURE
    return EXIT_OK


def _verify_compare(args: argparse.Namespace) -> int:
    scenario = get_scenario(args.test, paper_literal_bump=args.paper_literal_bump)
    config = scenario_config(scenario, n_cells=args.cells, t_end=args.t_end, snapshot_times=())
    comparison = compare_schemes(scenario, args.schemes, config)
    print(comparison.to_table() if args.format == "table" else comparison.to_key_values())
    return EXIT_OK


def _verify(args: argparse.Namespace, app: AppConfig) -> int:
    if args.check == "c-property":
        return _verify_c_property(args)
    return _verify_compare(args)


def cli_verify(argv: Sequence[str]) -> int:
    """Run a ``verify`` subcommand; returns the exit code."""
    return main(["verify", *argv])


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        app = AppConfig.from_env()
        level_name = (args.log_level or app.logging.level).upper()
        level = logging.getLevelName(level_name)
        if not isinstance(level, int):
            raise ConfigurationError(f"Unknown log level '{level_name}'")
        set_level(level, app.logging.log_file)

        if args.command == "run":
            return _run(args, app)
        return _verify(args, app)

    except ConfigurationError as e:
        logger.error(f"Usage error: {e}")
        return EXIT_USAGE
    except SolverError as e:
        logger.error(f"Solver failure: {e}")
        return EXIT_FAILURE
    except OSError as e:
        logger.error(f"I/O failure: {e}")
        return EXIT_FAILURE
    except Exception as e:
        logger.error(f"Unexpected failure: {e}", exc_info=True)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())

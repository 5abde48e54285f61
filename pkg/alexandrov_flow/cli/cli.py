"""This module contains the command line: configuration loading and validation, and the
runner that executes one experiment and writes its JSON report and CSV tables.

Exit codes: 0 when every asserted property holds, 1 when a check fails (the report is
still written), 2 on a configuration error or when the experiment stops on an error
before reaching a verdict (no report is written; the log names the error)."""

import argparse
import json
import logging
import os
import sys
from typing import Any, Sequence

from dotenv import load_dotenv

from alexandrov_flow.cli.entry import CountEntry, Entry, MappingEntry, OneOfEntry, PositiveNumberEntry
from alexandrov_flow.cli.experiment import ExperimentGroup
from alexandrov_flow.model_trig import CDParams
from alexandrov_flow.spaces import Space
from alexandrov_flow.utils.errors import AlexandrovFlowError, ConfigError
from alexandrov_flow.utils.utils import write_csv, write_json

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
OUTPUT_ENV = "ALEXANDROV_FLOW_OUT"
DEFAULT_OUTPUT = "out"

EXIT_PASSED = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2

CSV_COLUMNS = """CSV tables (RFC-4180, header row first):
  sllc        <out>/sllc_curve.csv               t, r, phi, f, grad_norm
  contraction <out>/contraction_contraction.csv  s, distance, bound
  curvature   <out>/curvature_verdicts.csv       space, kind_value, kappa, test, seed, tested, skipped,
                                                 worst_margin, passed, expect, matches
  bg          <out>/bg_bg.csv                    center, r, volume, ratio
  cd1d        <out>/cd1d_cd1d.csv                pair, n_prime, t, lhs, rhs, margin
  energy      <out>/energy_energy.csv            eps, energy
  fill        <out>/fill_fill.csv                ring, angle, r, phi
  bound       <out>/bound_bound.csv              R, eps, C, bound
"""


def load_config(path: str) -> dict[str, Any]:
    """Reads a JSON configuration file.

    Args:
        path (str): Path of the file.

    Raises:
        ConfigError: If the file can't be read or is not a JSON object.

    Returns:
        dict[str, Any]: Configuration."""
    try:
        with open(path, encoding="utf-8") as file:
            config = json.load(file)
    except (OSError, json.JSONDecodeError) as error:
        raise ConfigError([f"config: can't read {path} ({error})"]) from error
    if not isinstance(config, dict):
        raise ConfigError([f"config: {path} must contain a JSON object"])
    return config


def _common_entries(command: Any) -> list[Entry]:
    experiment = ExperimentGroup.find(command) if isinstance(command, str) else None
    return [
        OneOfEntry("schema_version", "unsupported schema version", options=[SCHEMA_VERSION]),
        OneOfEntry("experiment", "unknown experiment", options=ExperimentGroup.commands()),
        CountEntry("seed", "must be a nonnegative integer", optional=experiment is None or not experiment.sampling()),
        MappingEntry("space", "must be a space descriptor", optional=experiment is None or not experiment.needs_space()),
        MappingEntry("params", "must be a parameter block", optional=True),
        PositiveNumberEntry("tolerances.tol", "must be a positive number", optional=True),
    ]


def validate(config: dict[str, Any]) -> list[str]:
    """Checks a configuration without running it and collects every problem found.

    Args:
        config (dict[str, Any]): Configuration.

    Returns:
        list[str]: Diagnostics, empty for a valid configuration.

    Example:
        ```python
        from alexandrov_flow.cli import validate

        validate({"schema_version": 1, "experiment": "sllc", "space": {"kind": "euclidean_cone", "theta_total": 4.71}})
        # ["seed: missing required field"]
        ```
    """
    command = config.get("experiment")
    diagnostics = [message for entry in _common_entries(command) for message in entry.diagnose(config)]
    experiment = ExperimentGroup.find(command) if isinstance(command, str) else None
    if experiment is None:
        return diagnostics
    diagnostics.extend(experiment.diagnose(config))
    if isinstance(config.get("space"), dict):
        try:
            Space.from_dict(config["space"])
        except ConfigError as error:
            diagnostics.extend(error.diagnostics)
    params = config.get("params")
    if isinstance(params, dict) and "K" in params and "N" in params:
        try:
            CDParams(float(params["K"]), float(params["N"]))
        except (TypeError, ValueError) as error:
            diagnostics.append(f"params: {error}")
    return diagnostics


def output_dir(config: dict[str, Any], out: str | None = None) -> str:
    """Returns the output directory: the --out flag, then the ALEXANDROV_FLOW_OUT
    environment variable (also read from .env), then output.dir of the configuration.

    Args:
        config (dict[str, Any]): Configuration.
        out (str, optional): Value of --out. Defaults to None.

    Returns:
        str: Directory."""
    return out or os.getenv(OUTPUT_ENV) or (config.get("output") or {}).get("dir") or DEFAULT_OUTPUT


def run(config: dict[str, Any], out_dir: str) -> int:
    """Validates and executes one experiment, writing <out_dir>/<experiment>.json and one
    CSV file per table.

    Args:
        config (dict[str, Any]): Configuration.
        out_dir (str): Output directory.

    Returns:
        int: 0 if every property holds, 1 if a check failed, 2 on a configuration error
            or when the experiment stops on an error."""
    diagnostics = validate(config)
    if diagnostics:
        for message in diagnostics:
            logger.error("Invalid configuration: %s", message)
        return EXIT_CONFIG
    command = config["experiment"]
    try:
        experiment = ExperimentGroup.experiment(command, config)
        if experiment is None:
            raise ConfigError([f"experiment: unknown experiment {command!r}"])
        result = experiment.run()
    except ConfigError as error:
        for message in error.diagnostics:
            logger.error("Invalid configuration: %s", message)
        return EXIT_CONFIG
    except (ValueError, AlexandrovFlowError) as error:
        # no verdict was reached, so no report is written
        logger.error("Experiment %s stopped while running: %s: %s", command, type(error).__name__, error)
        return EXIT_CONFIG

    report = {
        "schema_version": SCHEMA_VERSION,
        "experiment": command,
        "seed": config.get("seed"),
        "config": config,
        "passed": result.passed,
        "report": result.report,
    }
    write_json(os.path.join(out_dir, f"{command}.json"), report)
    for name, (header, rows) in sorted(result.tables.items()):
        write_csv(os.path.join(out_dir, f"{command}_{name}.csv"), header, rows)
    if result.passed:
        logger.info("Experiment %s passed", command)
        return EXIT_PASSED
    logger.warning("Experiment %s failed, see %s", command, os.path.join(out_dir, f"{command}.json"))
    return EXIT_FAILED


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON configuration file")
    common.add_argument("--seed", type=int, help="seed of the run, overrides the configuration")
    common.add_argument("--out", help=f"output directory, overrides ${OUTPUT_ENV} and the configuration")
    common.add_argument("--tol", type=float, help="tolerance of the asserted properties")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")

    parser = argparse.ArgumentParser(
        prog="alexandrov-flow",
        description="Numerical experiments on gradient flows and comparison geometry of singular surfaces.",
        epilog=CSV_COLUMNS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    commands = parser.add_subparsers(dest="command", required=True)
    for command in ExperimentGroup.commands():
        experiment = ExperimentGroup.find(command)
        commands.add_parser(command, parents=[common], help=(experiment.__doc__ or "").strip() if experiment else None)
    commands.add_parser("validate", parents=[common], help="check a configuration file without running it")
    return parser


def _merge_flags(config: dict[str, Any], args: argparse.Namespace) -> dict[str, Any]:
    config = dict(config)
    config.setdefault("schema_version", SCHEMA_VERSION)
    if args.command != "validate":
        config["experiment"] = args.command
    if args.seed is not None:
        config["seed"] = args.seed
    if args.tol is not None:
        config["tolerances"] = {**(config.get("tolerances") or {}), "tol": args.tol}
    return config


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point of the alexandrov-flow command.

    Args:
        argv (Sequence[str], optional): Arguments without the program name. Defaults to sys.argv.

    Returns:
        int: Exit code."""
    args = _parser().parse_args(argv)
    logging.basicConfig(
        level=[logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)],
        format="%(levelname)s %(name)s: %(message)s",
    )
    load_dotenv()
    try:
        config = load_config(args.config) if args.config else {}
    except ConfigError as error:
        for message in error.diagnostics:
            print(message, file=sys.stderr)
        return EXIT_CONFIG
    config = _merge_flags(config, args)
    if args.command == "validate":
        diagnostics = validate(config)
        for message in diagnostics:
            print(message, file=sys.stderr)
        return EXIT_CONFIG if diagnostics else EXIT_PASSED
    return run(config, output_dir(config, args.out))


if __name__ == "__main__":
    sys.exit(main())

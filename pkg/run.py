import dataclasses
import fnmatch
import json
import logging
import traceback
from pathlib import Path
from typing import List, Optional

import stopit
import typer

from core.errors import (
    ConfigError,
    ContractViolation,
    DegenerateInputError,
    DomainError,
    UnsupportedSpaceError,
    UsageError,
)
from engine.base_runner import BaseRunner, ExperimentReport, ordered_map, write_table
from engine.base_runner.runner import TABLE_FORMATS
from engine.runners.runner_factory import RunnerFactory, run_quietly
from lab import RESULTS_DIR
from lab.config_read import read_config_file, read_experiment_configs
from lab.defaults import LOG_LEVEL
from lab.experiment_config import PARAMETERS
from lab.seeding import derive_seed

# Problems with the inputs rather than with the mathematics; exit code 2
USAGE_ERRORS = (UsageError, DomainError, UnsupportedSpaceError)
# Inputs the mathematics cannot evaluate, found while running; also exit code 2
EVALUATION_ERRORS = (ContractViolation, DegenerateInputError)

app = typer.Typer()


@app.callback()
def main():
    logging.basicConfig(level=LOG_LEVEL.upper())


def usage_exit(error: Exception):
    typer.echo(f"Invalid configuration: {error}", err=True)
    raise typer.Exit(code=2)


def evaluation_exit(error: Exception):
    typer.echo(f"Experiment could not be evaluated ({type(error).__name__}): {error}", err=True)
    raise typer.Exit(code=2)


def check_format(table_format: Optional[str]):
    if table_format is not None and table_format not in TABLE_FORMATS:
        raise ConfigError("format", f"must be one of {', '.join(TABLE_FORMATS)}, got {table_format!r}")


def select_entries(config: Path, name: Optional[str]) -> List[dict]:
    entries = read_config_file(config)
    if name is None:
        return entries
    selected = [entry for entry in entries if entry.get("name") == name]
    if not selected:
        raise ConfigError("name", f"no experiment named {name!r} in {config}")
    return selected


def samples_paths(entry: dict) -> bool:
    return "paths" in PARAMETERS.get(entry.get("kind"), {})


def output_for(out: Optional[Path], name: str, many: bool) -> Optional[str]:
    """``--out`` is the report path for one experiment and a directory for several."""
    if out is None:
        return None
    return str(out / f"{name}.json") if many else str(out)


def run_with_timeout(runner: BaseRunner, timeout: float, table_format: Optional[str]) -> ExperimentReport:
    report = None
    with stopit.ThreadingTimeout(timeout) as tt:
        report = runner.run_experiment(table_format=table_format)

    if tt.state != stopit.ThreadingTimeout.EXECUTED:
        print(f"Timed out {runner.name} - {runner.config.kind}, exceeded {timeout} seconds")
        raise typer.Exit(code=2)
    return report


def run_entries(
    entries: List[dict],
    seed: Optional[int],
    paths: Optional[int],
    out: Optional[Path],
    table_format: Optional[str],
    timeout: float,
    directory: bool = False,
    skip_unsampled: bool = False,
) -> bool:
    many = directory or len(entries) > 1
    failed = []
    for entry in entries:
        name = entry.get("name", "<unnamed>")
        entry_paths = None if skip_unsampled and not samples_paths(entry) else paths
        factory = RunnerFactory(seed=seed, paths=entry_paths, output=output_for(out, name, many))
        runner = factory.build_runner(entry)
        print(f"Running experiment: {runner.name} - {runner.config.kind}")
        try:
            report = run_with_timeout(runner, timeout, table_format)
        except USAGE_ERRORS + EVALUATION_ERRORS + (typer.Exit, KeyboardInterrupt):
            raise
        except Exception:
            print(f"Experiment {runner.name} - {runner.config.kind} interrupted")
            traceback.print_exc()
            raise
        if not report.passed:
            failed.append(report)

    for report in failed:
        print(f"FAILED {report.name}: {', '.join(a.name for a in report.failures())}")
    if many:
        print(f"Passed {len(entries) - len(failed)}/{len(entries)} experiments")
    return not failed


@app.command()
def run(
    config: Path = typer.Argument(..., help="JSON file with one experiment or a list of them"),
    name: Optional[str] = typer.Option(None, help="Run only the entry with this name"),
    seed: Optional[int] = typer.Option(None, help="Override the configured seed"),
    paths: Optional[int] = typer.Option(None, help="Override the number of sample paths"),
    out: Optional[Path] = typer.Option(None, help="Report path (a directory when several entries run)"),
    table_format: Optional[str] = typer.Option(None, "--format", help="Also write the rows as csv or jsonl"),
    timeout: float = 86400.0,
):
    """
    Examples:

    python3 run.py run experiments/configurations/fourier.json --name symbol-eval-riesz

    python3 run.py run experiments/configurations/mart.json --paths 20000 --format csv
    """
    try:
        check_format(table_format)
        passed = run_entries(select_entries(config, name), seed, paths, out, table_format, timeout)
    except USAGE_ERRORS as e:
        usage_exit(e)
    except EVALUATION_ERRORS as e:
        evaluation_exit(e)
    if not passed:
        raise typer.Exit(code=1)


def parse_values(values: str) -> list:
    """A JSON list, or comma-separated items each read as JSON when possible."""
    try:
        parsed = json.loads(values)
    except json.JSONDecodeError:
        parsed = None
    if isinstance(parsed, list):
        return parsed

    items = []
    for item in values.split(","):
        item = item.strip()
        try:
            items.append(json.loads(item))
        except json.JSONDecodeError:
            items.append(item)
    return items


def sweep_row(param: str, value, report: ExperimentReport) -> dict:
    row = {param: value, "seed": report.seed, "verdict": report.verdict}
    for assertion in report.assertions:
        row[assertion.name] = assertion.value
    for key, observed in report.observations.items():
        row.setdefault(key, observed)
    return row


@app.command()
def sweep(
    config: Path = typer.Argument(..., help="JSON file with the base experiment"),
    param: str = typer.Option(..., help="Parameter to vary"),
    values: str = typer.Option(..., help='Values as a JSON list or comma separated, e.g. "[1.5, 2, 3]"'),
    name: Optional[str] = typer.Option(None, help="Base entry, when the file holds several"),
    seed: Optional[int] = typer.Option(None, help="Override the base seed"),
    paths: Optional[int] = typer.Option(None, help="Override the number of sample paths"),
    out: Optional[Path] = typer.Option(None, help="Table path"),
    table_format: str = typer.Option("csv", "--format", help="csv or jsonl"),
    processes: Optional[int] = typer.Option(None, help="Worker processes, capped by LAB_THREADS"),
):
    """
    One row per value; each point runs with a sub-seed derived from the base seed,
    the parameter name and the value, so the table does not depend on worker count.

    python3 run.py sweep experiments/configurations/mart.json --name mart-adversarial-p4 --param depth --values 4,8,12
    """
    try:
        check_format(table_format)
        entries = select_entries(config, name)
        if len(entries) > 1:
            raise ConfigError("name", "the file holds several experiments, pick one with --name")
        base = RunnerFactory(seed=seed, paths=paths)._create_config(entries[0])
        values = parse_values(values)
        points = []
        for value in values:
            point = base.with_param(param, value)
            point_seed = derive_seed(base.seed, param, json.dumps(value, sort_keys=True))
            points.append(dataclasses.replace(point, seed=point_seed))
    except USAGE_ERRORS as e:
        usage_exit(e)

    print(f"Running sweep: {base.name} - {base.kind} over {param} ({len(points)} values)")
    try:
        reports = ordered_map(run_quietly, points, processes=processes, desc=f"{base.name} {param}")
    except USAGE_ERRORS as e:
        usage_exit(e)
    except EVALUATION_ERRORS as e:
        evaluation_exit(e)

    rows = [sweep_row(param, value, report) for value, report in zip(values, reports)]
    table_path = out if out is not None else RESULTS_DIR / f"{base.name}-sweep-{param}"
    table_path = write_table(rows, table_path, table_format)
    print(f"Results saved to: {table_path}")

    failed = [(value, report) for value, report in zip(values, reports) if not report.passed]
    for value, report in failed:
        print(f"FAILED {param}={value}: {', '.join(a.name for a in report.failures())}")
    if failed:
        raise typer.Exit(code=1)


@app.command("verify-all")
def verify_all(
    experiments: List[str] = typer.Option(["*"], help="Wildcard patterns over experiment names"),
    seed: Optional[int] = typer.Option(None, help="Override every configured seed"),
    paths: Optional[int] = typer.Option(None, help="Override the number of sample paths where an experiment samples them"),
    out: Optional[Path] = typer.Option(None, help="Report directory"),
    table_format: Optional[str] = typer.Option(None, "--format", help="Also write the rows as csv or jsonl"),
    timeout: float = 86400.0,
):
    """
    Runs the acceptance suite in experiments/configurations.

    --paths applies to the experiments that sample paths and leaves the others alone.

    python3 run.py verify-all --experiments "wiener-*" --experiments "hilbert-*"
    """
    try:
        check_format(table_format)
        all_experiments = read_experiment_configs()
        if not all_experiments:
            raise ConfigError("experiments", "no configurations found")
        selected = [
            config
            for config_name, config in all_experiments.items()
            if any(fnmatch.fnmatch(config_name, pattern) for pattern in experiments)
        ]
        if not selected:
            raise ConfigError("experiments", f"no experiment matches {', '.join(experiments)}")
        # one report per experiment, so --out is always a directory here
        out = RESULTS_DIR if out is None else out
        passed = run_entries(
            selected, seed, paths, out, table_format, timeout, directory=True, skip_unsampled=True
        )
    except USAGE_ERRORS as e:
        usage_exit(e)
    except EVALUATION_ERRORS as e:
        evaluation_exit(e)
    if not passed:
        raise typer.Exit(code=1)


if __name__ == "__main__":
    app()

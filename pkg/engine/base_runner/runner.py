import json
import logging
from pathlib import Path
from typing import List, Optional

import jsons
import pandas as pd

from core.errors import UsageError
from engine.base_runner.report import ExperimentReport, plain
from lab import RESULTS_DIR
from lab.experiment_config import ExperimentConfig

logger = logging.getLogger(__name__)

TABLE_FORMATS = ("csv", "jsonl")


def dump_report(report: ExperimentReport) -> str:
    """Stable JSON text of a report: sorted keys, no timestamps."""
    return json.dumps(jsons.dump(report, strip_privates=True), indent=2, sort_keys=True) + "\n"


def write_table(rows: List[dict], path: Path, table_format: str) -> Path:
    if table_format not in TABLE_FORMATS:
        raise UsageError(f"format must be one of {', '.join(TABLE_FORMATS)}, got {table_format!r}")
    frame = pd.DataFrame([{k: _cell(v) for k, v in row.items()} for row in rows])
    path = Path(path).with_suffix(f".{table_format}")
    path.parent.mkdir(parents=True, exist_ok=True)
    if table_format == "csv":
        frame.to_csv(path, index=False)
    else:
        frame.to_json(path, orient="records", lines=True)
    return path


def _cell(value):
    # nested values go into one CSV cell as JSON text
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True)
    return value


class BaseRunner:
    KIND: Optional[str] = None

    def __init__(self, config: ExperimentConfig):
        if self.KIND is not None and config.kind != self.KIND:
            raise UsageError(f"{type(self).__name__} runs {self.KIND} experiments, got {config.kind}")
        self.config = config
        self.params = config.params
        self.seed = config.seed

    @property
    def name(self) -> str:
        return self.config.name

    def configure(self):
        """Build the objects an experiment needs; invalid parameters fail here."""

    def execute(self, report: ExperimentReport):
        raise NotImplementedError()

    def report_path(self) -> Path:
        if self.config.output:
            return Path(self.config.output)
        return RESULTS_DIR / f"{self.name}.json"

    def save_report(self, report: ExperimentReport, table_format: Optional[str] = None) -> Path:
        result_path = self.report_path()
        result_path.parent.mkdir(parents=True, exist_ok=True)
        with open(result_path, "w") as out:
            out.write(dump_report(report))
        if table_format is not None and report.rows:
            write_table(report.rows, result_path, table_format)
        return result_path

    def run_experiment(
        self, save: bool = True, table_format: Optional[str] = None, verbose: bool = True
    ) -> ExperimentReport:
        def stage(message):
            if verbose:
                print(message)

        stage("Experiment stage: Configure")
        self.configure()

        stage("Experiment stage: Run")
        report = ExperimentReport(
            name=self.name,
            kind=self.config.kind,
            seed=self.seed,
            params=plain(self.config.raw_params()),
        )
        self.execute(report)
        for failure in report.failures():
            logger.warning(
                "%s: %s = %r violates bound %r", self.name, failure.name, failure.value, failure.bound
            )

        stage(f"Experiment stage: Done ({report.verdict})")
        if save:
            result_path = self.save_report(report, table_format)
            stage(f"Results saved to: {result_path}")
        return report

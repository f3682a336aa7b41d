from engine.base_runner.parallel import ordered_map, worker_count
from engine.base_runner.report import Assertion, ExperimentReport
from engine.base_runner.runner import BaseRunner, dump_report, write_table

__all__ = [
    "Assertion",
    "BaseRunner",
    "ExperimentReport",
    "dump_report",
    "ordered_map",
    "worker_count",
    "write_table",
]

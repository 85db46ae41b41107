from runner.experiments import EXPERIMENTS, run_experiment
from runner.models import (
    RESULTS_HEADER,
    ExperimentSpec,
    ResultRow,
    RowBudgetError,
    RowResult,
    RunnerError,
    RunSummary,
    ScanRow,
    SpecError,
)
from runner.scan import gap_trend_holds, monotone_step, scan_row, sharp_threshold_scan
from runner.writer import ResultWriter, read_results

__all__ = [
    "EXPERIMENTS",
    "RESULTS_HEADER",
    "ExperimentSpec",
    "ResultRow",
    "ResultWriter",
    "RowBudgetError",
    "RowResult",
    "RunSummary",
    "RunnerError",
    "ScanRow",
    "SpecError",
    "gap_trend_holds",
    "monotone_step",
    "read_results",
    "run_experiment",
    "scan_row",
    "sharp_threshold_scan",
]

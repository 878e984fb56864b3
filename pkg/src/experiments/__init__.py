"""Experiment harness: runner, statistics and CSV records."""

from .records import COLUMNS, read_records, records_frame, write_records
from .stats import Z_95, aggregate, series_table, trend_report
from .runner import (
    ExperimentResult,
    PointSummary,
    repetition_seed,
    run_experiment,
    run_repetition
)

__all__ = [
    'COLUMNS',
    'read_records',
    'records_frame',
    'write_records',
    'Z_95',
    'aggregate',
    'series_table',
    'trend_report',
    'ExperimentResult',
    'PointSummary',
    'repetition_seed',
    'run_experiment',
    'run_repetition'
]

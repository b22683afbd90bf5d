"""
Experiments
===========
Seeded, resumable experiment sweeps that emit one CSV row per trial.
"""

from .journal import TrialJournal, open_journal
from .keys import derive_seed, instance_seed, trial_idempotency_key, trial_seed
from .rows import CSV_COLUMNS, ExperimentRow, emit_rows, parse_rows
from .runner import ExperimentRunner, TrialTask, no_rate, run_trial

__all__ = [
    "ExperimentRunner",
    "ExperimentRow",
    "TrialJournal",
    "open_journal",
    "TrialTask",
    "run_trial",
    "no_rate",
    "emit_rows",
    "parse_rows",
    "CSV_COLUMNS",
    "derive_seed",
    "trial_seed",
    "instance_seed",
    "trial_idempotency_key",
]

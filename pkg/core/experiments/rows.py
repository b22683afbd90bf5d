"""
Experiment Rows
===============
The CSV record emitted for every trial, and its codec.
"""

import csv
from dataclasses import astuple, dataclass, fields
from typing import Iterable, List, TextIO

from ..errors import ParameterError


@dataclass(frozen=True)
class ExperimentRow:
    experiment_id: str
    q: int
    n: int
    sigma: int
    epsilon: float
    trial: int
    seed: int
    verdict: str
    queries_used: int
    wall_time: float


CSV_COLUMNS = tuple(f.name for f in fields(ExperimentRow))

_CONVERTERS = {
    "experiment_id": str,
    "q": int,
    "n": int,
    "sigma": int,
    "epsilon": float,
    "trial": int,
    "seed": int,
    "verdict": str,
    "queries_used": int,
    "wall_time": float,
}


def emit_rows(rows: Iterable[ExperimentRow], out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(astuple(row))


def parse_rows(source: TextIO) -> List[ExperimentRow]:
    reader = csv.DictReader(source)
    if reader.fieldnames is None:
        return []
    if tuple(reader.fieldnames) != CSV_COLUMNS:
        raise ParameterError(f"unexpected CSV header: {reader.fieldnames}")
    try:
        return [
            ExperimentRow(**{name: _CONVERTERS[name](record[name]) for name in CSV_COLUMNS})
            for record in reader
        ]
    except (TypeError, ValueError) as exc:
        raise ParameterError(f"malformed CSV row: {exc}") from exc

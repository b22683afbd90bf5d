"""
Trial Journal
=============
SQLite-backed journal of completed experiment trials.
"""

import logging
import time
from dataclasses import asdict
from typing import Optional

from sqlalchemy import (
    Column,
    Float,
    Index,
    Integer,
    MetaData,
    String,
    Table,
    UniqueConstraint,
    create_engine,
    func,
)
from sqlalchemy.engine import Engine

from .rows import ExperimentRow

logger = logging.getLogger(__name__)


class TrialJournal:
    """SQLite-backed journal of experiment trials.

    Every completed trial is stored with its idempotency key, so an
    interrupted experiment resumes by skipping the trials already recorded.
    """

    TABLE_NAME = "trial_rows"

    def __init__(self, engine: Engine, schema_version: int = 1):
        self._engine = engine
        self._schema_version = schema_version
        self._metadata = MetaData()
        self._table = self._define_table()
        self._ensure_table()

    def _define_table(self) -> Table:
        """Define the trial_rows table schema."""
        return Table(
            self.TABLE_NAME,
            self._metadata,
            Column("id", Integer, primary_key=True, autoincrement=True),
            Column("schema_version", Integer, nullable=False, default=self._schema_version),
            Column("idempotency_key", String, nullable=False),
            Column("experiment_id", String, nullable=False),
            Column("q", Integer, nullable=False),
            Column("n", Integer, nullable=False),
            Column("sigma", Integer, nullable=False),
            Column("epsilon", Float, nullable=False),
            Column("trial", Integer, nullable=False),
            Column("seed", String, nullable=False),
            Column("verdict", String, nullable=False),
            Column("queries_used", Integer, nullable=False),
            Column("wall_time", Float, nullable=False),
            Column("created_at", Float, nullable=False),
            UniqueConstraint("idempotency_key", name="uq_trial_key"),
            Index("idx_trial_rows_experiment", "experiment_id"),
        )

    def _ensure_table(self) -> None:
        """Create the table if it doesn't exist."""
        self._metadata.create_all(self._engine)

    def record_row(self, idempotency_key: str, row: ExperimentRow) -> None:
        """Record a completed trial."""
        values = asdict(row)
        # 64-bit seeds overflow SQLite integers
        values["seed"] = str(row.seed)
        with self._engine.connect() as conn:
            conn.execute(
                self._table.insert().values(
                    schema_version=self._schema_version,
                    idempotency_key=idempotency_key,
                    created_at=time.time(),
                    **values,
                )
            )
            conn.commit()
        logger.debug(f"[JOURNAL] recorded {row.experiment_id} trial {row.trial}")

    def lookup_row(self, idempotency_key: str) -> Optional[ExperimentRow]:
        """Return the journaled row for a trial key, or None."""
        with self._engine.connect() as conn:
            row = conn.execute(
                self._table.select().where(self._table.c.idempotency_key == idempotency_key)
            ).fetchone()
        return None if row is None else self._to_row(row._mapping)

    def compact(self, experiment_id: str) -> int:
        """Remove all rows of an experiment. Returns count of deleted rows."""
        with self._engine.connect() as conn:
            result = conn.execute(
                self._table.delete().where(self._table.c.experiment_id == experiment_id)
            )
            conn.commit()
            return result.rowcount  # type: ignore[return-value]

    def row_count(self, experiment_id: str) -> int:
        """Count rows of an experiment."""
        with self._engine.connect() as conn:
            row = conn.execute(
                self._table.select()
                .with_only_columns(func.count())
                .where(self._table.c.experiment_id == experiment_id)
            ).fetchone()
            return row[0] if row else 0

    @staticmethod
    def _to_row(mapping) -> ExperimentRow:
        return ExperimentRow(
            experiment_id=mapping["experiment_id"],
            q=mapping["q"],
            n=mapping["n"],
            sigma=mapping["sigma"],
            epsilon=mapping["epsilon"],
            trial=mapping["trial"],
            seed=int(mapping["seed"]),
            verdict=mapping["verdict"],
            queries_used=mapping["queries_used"],
            wall_time=mapping["wall_time"],
        )


def open_journal(db_file: str, schema_version: int = 1) -> TrialJournal:
    """Open (creating if needed) the journal stored in a SQLite file."""
    return TrialJournal(create_engine(f"sqlite:///{db_file}"), schema_version=schema_version)

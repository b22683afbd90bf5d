"""
Experiment Runner
=================
Runs declared sweeps with per-trial derived seeds, an optional worker pool
and an optional journal that lets an interrupted experiment resume.
"""

import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from ..errors import InvariantViolation
from ..exact_core import Text, period_set, shortest_cover
from ..farness import gen_coverable, gen_far
from ..numtheory import reachability_table
from ..policies import ExperimentSpec, ExperimentSweep, FarnessPolicy, TesterConfig
from ..streaming import stream_init
from ..tester import QueryOracle, Verdict, run_cover_tester, run_seed_tester
from .journal import TrialJournal
from .keys import instance_seed, trial_idempotency_key, trial_seed
from .rows import ExperimentRow

logger = logging.getLogger(__name__)

# (verdict, queries used, text length)
Outcome = Tuple[str, int, int]


@dataclass(frozen=True)
class TrialTask:
    """Everything a worker needs to run one trial."""

    sweep: ExperimentSweep
    trial: int
    seed: int
    text: Optional[Tuple[int, ...]] = None


# =============================================================================
# Trial Kinds
# =============================================================================


def _random_text(rng: random.Random, n: int, sigma: int) -> Tuple[int, ...]:
    return tuple(rng.randint(1, sigma) for _ in range(n))


def _coverable_text(rng: random.Random, q: int, n: int, sigma: int) -> Tuple[int, ...]:
    """A random coverable text whose length is the reachable length closest to n (above q)."""
    c = rng.randint(1, q)
    pattern = _random_text(rng, c, sigma)
    reach = reachability_table(period_set(pattern).periods, 2 * n)
    lengths = [ell for ell in range(n, q, -1) if reach[ell - c]]
    lengths = lengths or [ell for ell in range(n + 1, 2 * n + 1) if reach[ell - c]]
    return gen_coverable(pattern, lengths[0], rng).letters


def _tester_trial(task: TrialTask, text: Tuple[int, ...], tester: Callable) -> Outcome:
    sweep = task.sweep
    config = TesterConfig(q=sweep.q, n=len(text), epsilon=sweep.epsilon, rng_seed=task.seed)
    verdict: Verdict = tester(config, QueryOracle.from_text(text))
    return verdict.answer, verdict.queries_used, len(text)


def _soundness(task: TrialTask) -> Outcome:
    assert task.text is not None
    return _tester_trial(task, task.text, run_cover_tester)


def _seed_soundness(task: TrialTask) -> Outcome:
    assert task.text is not None
    return _tester_trial(task, task.text, run_seed_tester)


def _completeness(task: TrialTask) -> Outcome:
    sweep = task.sweep
    text = _coverable_text(random.Random(task.seed), sweep.q, sweep.n, sweep.sigma)
    answer, queries, n = _tester_trial(task, text, run_cover_tester)
    if answer != "YES":
        raise InvariantViolation(
            f"cover tester rejected a coverable text (experiment {sweep.id}, trial {task.trial})"
        )
    return answer, queries, n


def _queries(task: TrialTask) -> Outcome:
    sweep = task.sweep
    text = _random_text(random.Random(task.seed), sweep.n, sweep.sigma)
    return _tester_trial(task, text, run_cover_tester)


def _streaming(task: TrialTask) -> Outcome:
    sweep = task.sweep
    rng = random.Random(task.seed)
    n = rng.randint(sweep.q + 1, sweep.n)
    if rng.random() < 0.5:
        text = _coverable_text(rng, sweep.q, n, sweep.sigma)
    else:
        text = _random_text(rng, n, sweep.sigma)

    state = stream_init(sweep.q, mode="ints")
    for letter in text:
        state.push(letter)
    streamed = state.finalize()
    exact = shortest_cover(text)
    expected = exact if exact <= sweep.q else None
    if streamed != expected:
        raise InvariantViolation(
            f"stream returned {streamed}, exact answer {expected} "
            f"(experiment {sweep.id}, trial {task.trial})"
        )
    return "AGREE", state.peak_buffer, len(text)


_TRIAL_KINDS: Dict[str, Callable[[TrialTask], Outcome]] = {
    "soundness": _soundness,
    "seed-soundness": _seed_soundness,
    "completeness": _completeness,
    "queries": _queries,
    "streaming": _streaming,
}


def run_trial(task: TrialTask) -> ExperimentRow:
    """Run one trial; module-level so worker processes can unpickle it."""
    started = time.perf_counter()
    verdict, queries, n = _TRIAL_KINDS[task.sweep.kind](task)
    sweep = task.sweep
    return ExperimentRow(
        experiment_id=sweep.id,
        q=sweep.q,
        n=n,
        sigma=sweep.sigma,
        epsilon=sweep.epsilon,
        trial=task.trial,
        seed=task.seed,
        verdict=verdict,
        queries_used=queries,
        wall_time=time.perf_counter() - started,
    )


def no_rate(rows: List[ExperimentRow]) -> float:
    """Fraction of rows whose verdict is NO (0.0 for no rows)."""
    if not rows:
        return 0.0
    return sum(row.verdict == "NO" for row in rows) / len(rows)


# =============================================================================
# Runner
# =============================================================================


class ExperimentRunner:
    """Runs every sweep of an :class:`ExperimentSpec`.

    Rows come back in (sweep, trial) order regardless of completion order.
    Trials already present in the journal are returned from it instead of
    being re-run; with ``fresh`` the journaled rows of each sweep are
    dropped first.
    """

    def __init__(
        self,
        spec: ExperimentSpec,
        journal: Optional[TrialJournal] = None,
        jobs: int = 1,
        farness: Optional[FarnessPolicy] = None,
        fresh: bool = False,
    ):
        self.spec = spec
        self.journal = journal
        self.jobs = max(1, jobs)
        self.farness = farness or FarnessPolicy()
        self.fresh = fresh

    def run(self) -> List[ExperimentRow]:
        rows: List[ExperimentRow] = []
        for sweep in self.spec.experiments:
            rows.extend(self.run_sweep(sweep))
        return rows

    def run_sweep(self, sweep: ExperimentSweep) -> List[ExperimentRow]:
        parameters = sweep.model_dump()
        keys = [
            trial_idempotency_key(self.spec.master_seed, parameters, t)
            for t in range(sweep.total_trials)
        ]
        done: Dict[int, ExperimentRow] = {}
        if self.journal is not None and self.fresh:
            dropped = self.journal.compact(sweep.id)
            logger.info(f"[EXPERIMENT] {sweep.id}: dropped {dropped} journaled row(s)")
        if self.journal is not None:
            for t, key in enumerate(keys):
                cached = self.journal.lookup_row(key)
                if cached is not None:
                    done[t] = cached

        pending = [t for t in range(sweep.total_trials) if t not in done]
        logger.info(
            f"[EXPERIMENT] {sweep.id}: {len(pending)} trial(s) to run, {len(done)} from journal"
        )
        tasks = self._plan(sweep, pending)
        for task, row in zip(tasks, self._execute(tasks)):
            if self.journal is not None:
                self.journal.record_row(keys[task.trial], row)
            done[task.trial] = row
        if self.journal is not None:
            logger.debug(
                f"[JOURNAL] {sweep.id} holds {self.journal.row_count(sweep.id)} row(s)"
            )
        return [done[t] for t in range(sweep.total_trials)]

    def _plan(self, sweep: ExperimentSweep, pending: List[int]) -> List[TrialTask]:
        master = self.spec.master_seed
        if sweep.kind not in ("soundness", "seed-soundness"):
            return [TrialTask(sweep, t, trial_seed(master, sweep.id, t)) for t in pending]

        target = "seed" if sweep.kind == "seed-soundness" else "cover"
        instances: Dict[int, Tuple[int, ...]] = {}
        tasks = []
        for t in pending:
            i = t // sweep.trials
            if i not in instances:
                certificate = gen_far(
                    sweep.q,
                    sweep.sigma,
                    sweep.n,
                    sweep.epsilon,
                    random.Random(instance_seed(master, sweep.id, i)),
                    max_attempts=self.farness.max_attempts,
                    budget=self.farness.enumeration_budget,
                    target=target,
                    verify=self.farness.verify_transitions,
                )
                assert isinstance(certificate.text, Text)
                instances[i] = certificate.text.letters
            tasks.append(TrialTask(sweep, t, trial_seed(master, sweep.id, t), instances[i]))
        return tasks

    def _execute(self, tasks: List[TrialTask]) -> Iterator[ExperimentRow]:
        """Rows in task order, yielded as soon as each is available."""
        if self.jobs == 1 or len(tasks) <= 1:
            for task in tasks:
                yield run_trial(task)
            return
        chunksize = max(1, len(tasks) // (4 * self.jobs))
        with ProcessPoolExecutor(max_workers=self.jobs) as pool:
            yield from pool.map(run_trial, tasks, chunksize=chunksize)

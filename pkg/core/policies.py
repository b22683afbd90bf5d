"""
Quasiperiod Toolkit Policies
============================
Configuration models for the tester, the farness oracles, the streaming
algorithm and the experiment harness.
"""

import math
from typing import Callable, Dict, List, Literal

from pydantic import BaseModel, Field, computed_field, field_validator, model_validator

from .settings import settings

# =============================================================================
# Tester Policies
# =============================================================================


class TesterConfig(BaseModel):
    """Parameters of one tester run.

    The sample count follows m = max(1, ceil(24 * log2(max(q, 2)) / epsilon)).
    """

    q: int = Field(..., ge=1)
    n: int = Field(..., ge=2)
    epsilon: float = Field(..., gt=0.0, le=1.0)
    rng_seed: int = Field(default=0, ge=0, lt=2**64)

    model_config = {"extra": "forbid", "frozen": True}

    @model_validator(mode="after")
    def _q_below_n(self) -> "TesterConfig":
        if self.q >= self.n:
            raise ValueError(f"q must be smaller than n (q={self.q}, n={self.n})")
        return self

    @computed_field  # type: ignore[prop-decorator]
    @property
    def sample_count(self) -> int:
        return max(1, math.ceil(24 * math.log2(max(self.q, 2)) / self.epsilon))

    @computed_field  # type: ignore[prop-decorator]
    @property
    def query_bound(self) -> int:
        return (self.sample_count + 1) * 4 * self.q**3 + 2 * self.q

    def with_seed(self, rng_seed: int) -> "TesterConfig":
        return self.model_copy(update={"rng_seed": rng_seed})


# =============================================================================
# Farness Policies
# =============================================================================


class FarnessPolicy(BaseModel):
    """Policy for the exhaustive distance oracles and the far-instance generator."""

    enumeration_budget: int = Field(default_factory=lambda: settings.enumeration_budget, ge=1)
    max_attempts: int = Field(default=64, ge=1)
    verify_transitions: bool = Field(
        default=False, description="Re-check every optimal placement chain against exact_core"
    )

    model_config = {"extra": "forbid"}


# =============================================================================
# Streaming Policies
# =============================================================================


StreamMode = Literal["bytes", "ints"]


class StreamPolicy(BaseModel):
    """Policy for the one-pass shortest-cover stream."""

    q: int = Field(..., ge=1)
    mode: StreamMode = "bytes"

    model_config = {"extra": "forbid"}


# =============================================================================
# Experiment Policies
# =============================================================================


EXPERIMENT_KINDS = ("soundness", "completeness", "queries", "streaming", "seed-soundness")


class ExperimentSweep(BaseModel):
    """One declared sweep of an experiment file."""

    id: str = Field(..., min_length=1)
    kind: str
    q: int = Field(default=2, ge=1)
    n: int = Field(default=4096, ge=2)
    sigma: int = Field(default=2, ge=1)
    epsilon: float = Field(default=0.1, gt=0.0, le=1.0)
    trials: int = Field(default=100, ge=0, description="Trials per instance")
    instances: int = Field(default=1, ge=1, description="Certified instances (soundness kinds)")

    model_config = {"extra": "forbid"}

    @model_validator(mode="after")
    def _q_below_n(self) -> "ExperimentSweep":
        if self.q >= self.n:
            raise ValueError(f"q must be smaller than n (q={self.q}, n={self.n})")
        return self

    @field_validator("kind")
    @classmethod
    def _known_kind(cls, value: str) -> str:
        if value not in EXPERIMENT_KINDS:
            raise ValueError(
                f"unknown experiment kind '{value}'. Valid kinds: {', '.join(EXPERIMENT_KINDS)}"
            )
        return value

    @property
    def total_trials(self) -> int:
        if self.kind in ("soundness", "seed-soundness"):
            return self.instances * self.trials
        return self.trials


class ExperimentSpec(BaseModel):
    """A full experiment file: a master seed and the sweeps to run."""

    master_seed: int = Field(default=0, ge=0)
    experiments: List[ExperimentSweep] = Field(default_factory=list)

    model_config = {"extra": "forbid"}

    @field_validator("experiments")
    @classmethod
    def _unique_ids(cls, value: List[ExperimentSweep]) -> List[ExperimentSweep]:
        ids = [sweep.id for sweep in value]
        duplicates = sorted({i for i in ids if ids.count(i) > 1})
        if duplicates:
            raise ValueError(f"experiment ids must be unique, duplicated: {duplicates}")
        return value


# =============================================================================
# Convenience Presets
# =============================================================================


def create_soundness_sweep(
    q: int = 2, n: int = 4096, epsilon: float = 0.1, trials: int = 500, instances: int = 5
) -> ExperimentSweep:
    """Rejection rate of the cover tester on certified epsilon-far instances."""
    return ExperimentSweep(
        id=f"soundness-q{q}-eps{epsilon}",
        kind="soundness",
        q=q,
        n=n,
        sigma=2,
        epsilon=epsilon,
        trials=trials,
        instances=instances,
    )


def create_completeness_sweep(
    q: int = 6, n: int = 100_000, sigma: int = 3, epsilon: float = 0.5, trials: int = 1000
) -> ExperimentSweep:
    """Acceptance of the cover tester on generated coverable strings."""
    return ExperimentSweep(
        id=f"completeness-q{q}",
        kind="completeness",
        q=q,
        n=n,
        sigma=sigma,
        epsilon=epsilon,
        trials=trials,
    )


def create_query_sweep(
    q: int = 4, n: int = 100_000, epsilon: float = 0.1, trials: int = 20
) -> ExperimentSweep:
    """Queries used by the cover tester on uniform random texts."""
    return ExperimentSweep(
        id=f"queries-q{q}", kind="queries", q=q, n=n, sigma=2, epsilon=epsilon, trials=trials
    )


def create_streaming_sweep(
    q: int = 8, n: int = 10_000, sigma: int = 2, trials: int = 10_000
) -> ExperimentSweep:
    """Agreement of the streaming algorithm with the exact shortest cover."""
    return ExperimentSweep(
        id=f"streaming-q{q}-s{sigma}", kind="streaming", q=q, n=n, sigma=sigma, trials=trials
    )


def create_seed_soundness_sweep(
    q: int = 2, n: int = 4096, epsilon: float = 0.1, trials: int = 500, instances: int = 5
) -> ExperimentSweep:
    """Rejection rate of the seed tester on texts certified far from any short seed."""
    return ExperimentSweep(
        id=f"seed-soundness-q{q}-eps{epsilon}",
        kind="seed-soundness",
        q=q,
        n=n,
        sigma=2,
        epsilon=epsilon,
        trials=trials,
        instances=instances,
    )


PRESET_SWEEPS: Dict[str, Callable[[], ExperimentSweep]] = {
    "soundness": create_soundness_sweep,
    "seed-soundness": create_seed_soundness_sweep,
    "completeness": create_completeness_sweep,
    "queries": create_query_sweep,
    "streaming": create_streaming_sweep,
}

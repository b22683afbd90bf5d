"""
Tests for Toolkit Policies
==========================
Configuration models, presets and environment settings.
"""

import pytest
from pydantic import ValidationError

from core.policies import (
    EXPERIMENT_KINDS,
    PRESET_SWEEPS,
    ExperimentSpec,
    ExperimentSweep,
    FarnessPolicy,
    StreamPolicy,
    TesterConfig,
    create_completeness_sweep,
    create_query_sweep,
    create_seed_soundness_sweep,
    create_soundness_sweep,
    create_streaming_sweep,
)
from core.settings import Settings

# =============================================================================
# Settings Tests
# =============================================================================


class TestSettings:
    def test_defaults(self, monkeypatch):
        for name in ("QP_LOG_LEVEL", "QP_ENUMERATION_BUDGET", "QP_JOBS", "QP_JOURNAL_DB"):
            monkeypatch.delenv(name, raising=False)
        settings = Settings(_env_file=None)
        assert settings.log_level == "WARNING"
        assert settings.enumeration_budget == 100_000
        assert settings.jobs == 1
        assert settings.journal_db_file is None

    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("QP_ENUMERATION_BUDGET", "500")
        monkeypatch.setenv("QP_JOURNAL_DB", "/tmp/trials.db")
        settings = Settings()
        assert settings.enumeration_budget == 500
        assert settings.journal_db_file == "/tmp/trials.db"

    def test_env_file_values(self, monkeypatch, tmp_path):
        monkeypatch.delenv("QP_ENUMERATION_BUDGET", raising=False)
        monkeypatch.delenv("QP_JOBS", raising=False)
        path = tmp_path / "custom.env"
        path.write_text("QP_ENUMERATION_BUDGET=500\nQP_JOBS=3\n")
        settings = Settings(_env_file=str(path))
        assert settings.enumeration_budget == 500
        assert settings.jobs == 3

    def test_dotenv_in_working_directory(self, monkeypatch, tmp_path):
        monkeypatch.delenv("QP_JOURNAL_DB", raising=False)
        (tmp_path / ".env").write_text("QP_JOURNAL_DB=trials.db\n")
        monkeypatch.chdir(tmp_path)
        assert Settings().journal_db_file == "trials.db"

    def test_environment_beats_env_file(self, monkeypatch, tmp_path):
        monkeypatch.setenv("QP_JOBS", "2")
        path = tmp_path / "custom.env"
        path.write_text("QP_JOBS=7\n")
        assert Settings(_env_file=str(path)).jobs == 2

    def test_invalid_budget(self, monkeypatch):
        monkeypatch.setenv("QP_ENUMERATION_BUDGET", "0")
        with pytest.raises(ValidationError):
            Settings()

    def test_frozen(self):
        with pytest.raises(ValidationError):
            Settings().jobs = 4  # type: ignore[misc]


# =============================================================================
# Tester Config Tests
# =============================================================================


class TestTesterConfig:
    def test_frozen(self):
        config = TesterConfig(q=2, n=100, epsilon=0.1)
        with pytest.raises(ValidationError):
            config.q = 3  # type: ignore[misc]

    def test_extra_fields_forbidden(self):
        with pytest.raises(ValidationError):
            TesterConfig(q=2, n=100, epsilon=0.1, delta=0.2)

    def test_seed_range(self):
        with pytest.raises(ValidationError):
            TesterConfig(q=2, n=100, epsilon=0.1, rng_seed=2**64)

    def test_sample_count_grows_with_q(self):
        small = TesterConfig(q=2, n=10_000, epsilon=0.1)
        large = TesterConfig(q=8, n=10_000, epsilon=0.1)
        assert large.sample_count == 3 * small.sample_count

    def test_serialized_fields(self):
        dumped = TesterConfig(q=2, n=4096, epsilon=0.1).model_dump()
        assert dumped["sample_count"] == 240
        assert dumped["query_bound"] == 7716


# =============================================================================
# Farness and Stream Policy Tests
# =============================================================================


class TestFarnessPolicy:
    def test_defaults(self):
        policy = FarnessPolicy()
        assert policy.max_attempts == 64
        assert policy.verify_transitions is False
        assert policy.enumeration_budget >= 1

    def test_attempts_positive(self):
        with pytest.raises(ValidationError):
            FarnessPolicy(max_attempts=0)


class TestStreamPolicy:
    def test_default_mode(self):
        assert StreamPolicy(q=4).mode == "bytes"

    def test_unknown_mode(self):
        with pytest.raises(ValidationError):
            StreamPolicy(q=4, mode="utf8")

    def test_q_positive(self):
        with pytest.raises(ValidationError):
            StreamPolicy(q=0)


# =============================================================================
# Experiment Policy Tests
# =============================================================================


class TestExperimentSweep:
    def test_unknown_kind_lists_valid_kinds(self):
        with pytest.raises(ValidationError) as excinfo:
            ExperimentSweep(id="x", kind="latency")
        for kind in EXPERIMENT_KINDS:
            assert kind in str(excinfo.value)

    def test_q_below_n(self):
        with pytest.raises(ValidationError):
            ExperimentSweep(id="x", kind="queries", q=10, n=10)

    def test_total_trials(self):
        assert ExperimentSweep(id="a", kind="soundness", trials=10, instances=3).total_trials == 30
        assert ExperimentSweep(id="b", kind="queries", trials=10, instances=3).total_trials == 10

    def test_extra_fields_forbidden(self):
        with pytest.raises(ValidationError):
            ExperimentSweep(id="x", kind="queries", seed=3)


class TestExperimentSpec:
    def test_empty(self):
        spec = ExperimentSpec.model_validate_json("{}")
        assert spec.master_seed == 0
        assert spec.experiments == []

    def test_from_json(self):
        spec = ExperimentSpec.model_validate_json(
            '{"master_seed": 5, "experiments": [{"id": "s", "kind": "streaming", "q": 3, "n": 50}]}'
        )
        assert spec.master_seed == 5
        assert spec.experiments[0].kind == "streaming"

    def test_duplicate_ids(self):
        sweep = ExperimentSweep(id="dup", kind="queries")
        with pytest.raises(ValidationError, match="unique"):
            ExperimentSpec(experiments=[sweep, sweep])


class TestPresets:
    def test_soundness(self):
        sweep = create_soundness_sweep()
        assert (sweep.q, sweep.n, sweep.sigma, sweep.epsilon) == (2, 4096, 2, 0.1)
        assert sweep.total_trials == 2500

    def test_completeness(self):
        sweep = create_completeness_sweep()
        assert sweep.kind == "completeness"
        assert sweep.trials == 1000

    def test_queries(self):
        assert create_query_sweep(4).id == "queries-q4"

    def test_streaming(self):
        sweep = create_streaming_sweep()
        assert sweep.q == 8
        assert sweep.trials == 10_000

    def test_seed_soundness(self):
        assert create_seed_soundness_sweep().kind == "seed-soundness"

    def test_presets_combine_into_spec(self):
        spec = ExperimentSpec(
            experiments=[create_soundness_sweep(), create_completeness_sweep(), create_streaming_sweep()]
        )
        assert len(spec.experiments) == 3

    def test_every_kind_has_a_named_preset(self):
        assert set(PRESET_SWEEPS) == set(EXPERIMENT_KINDS)
        for name, factory in PRESET_SWEEPS.items():
            assert factory().kind == name

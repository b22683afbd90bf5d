"""
Quasiperiod Toolkit Core
========================
Exact cover and seed algorithms, sublinear-query testers, a small-space
streaming shortest-cover algorithm, and farness oracles for validating them.
"""

from .errors import (
    BudgetExceededError,
    GenerationError,
    InvariantViolation,
    ParameterError,
    QuasiperiodError,
    StreamTooShortError,
    StreamUsageError,
    UnreachableLengthError,
)
from .exact_core import (
    OccurrenceList,
    PeriodSet,
    Text,
    all_covers,
    borders_up_to,
    is_cover,
    is_seed,
    occurrences,
    period_set,
    shortest_cover,
)
from .farness import (
    INFINITE,
    FarnessCertificate,
    dist_to_cover,
    dist_to_Q,
    dist_to_seed,
    gen_coverable,
    gen_far,
)
from .numtheory import (
    ConicalWitness,
    conical_representable,
    construct_covered_string,
    frobenius_bound,
    gcd_aware_representable,
)
from .policies import (
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
from .streaming import StreamState, stream_finalize, stream_init, stream_push
from .tester import (
    FragmentSpec,
    QueryOracle,
    Verdict,
    fragment_decomposition,
    is_consistent,
    run_cover_tester,
    run_seed_tester,
)

__all__ = [
    "Text",
    "PeriodSet",
    "OccurrenceList",
    "period_set",
    "borders_up_to",
    "occurrences",
    "is_cover",
    "all_covers",
    "shortest_cover",
    "is_seed",
    "ConicalWitness",
    "conical_representable",
    "frobenius_bound",
    "gcd_aware_representable",
    "construct_covered_string",
    "QueryOracle",
    "FragmentSpec",
    "Verdict",
    "fragment_decomposition",
    "is_consistent",
    "run_cover_tester",
    "run_seed_tester",
    "StreamState",
    "stream_init",
    "stream_push",
    "stream_finalize",
    "INFINITE",
    "FarnessCertificate",
    "dist_to_cover",
    "dist_to_seed",
    "dist_to_Q",
    "gen_coverable",
    "gen_far",
    "TesterConfig",
    "FarnessPolicy",
    "StreamPolicy",
    "ExperimentSweep",
    "ExperimentSpec",
    "PRESET_SWEEPS",
    "create_soundness_sweep",
    "create_completeness_sweep",
    "create_query_sweep",
    "create_streaming_sweep",
    "create_seed_soundness_sweep",
    "QuasiperiodError",
    "ParameterError",
    "UnreachableLengthError",
    "BudgetExceededError",
    "StreamTooShortError",
    "StreamUsageError",
    "GenerationError",
    "InvariantViolation",
]

__version__ = "0.2.0"

"""
Trial Keys
==========
Deterministic, counter-based seeds and idempotency keys for experiment trials.

Seed = first 8 bytes (big-endian) of SHA-256 over the canonical JSON of
(master_seed, experiment_id, purpose, counter). Every trial derives its own
seed without coordination, so trials may run in any order or in parallel.
"""

import hashlib
import json
from typing import Any, Dict


def _digest(payload: Dict[str, Any]) -> bytes:
    encoded = json.dumps(payload, sort_keys=True, default=str)
    return hashlib.sha256(encoded.encode()).digest()


def derive_seed(master_seed: int, experiment_id: str, counter: int, purpose: str = "trial") -> int:
    """64-bit seed for the ``counter``-th draw of ``purpose`` within an experiment."""
    payload = {
        "master": master_seed,
        "experiment": experiment_id,
        "purpose": purpose,
        "counter": counter,
    }
    return int.from_bytes(_digest(payload)[:8], "big")


def trial_seed(master_seed: int, experiment_id: str, trial_index: int) -> int:
    return derive_seed(master_seed, experiment_id, trial_index, purpose="trial")


def instance_seed(master_seed: int, experiment_id: str, instance_index: int) -> int:
    return derive_seed(master_seed, experiment_id, instance_index, purpose="instance")


def trial_idempotency_key(
    master_seed: int,
    sweep: Dict[str, Any],
    trial_index: int,
) -> str:
    """Key identifying one trial of one exact sweep definition.

    Key = SHA-256(master_seed + sorted sweep parameters + trial_index)[:32]
    """
    payload = {"master": master_seed, "sweep": sweep, "trial": trial_index}
    return _digest(payload).hex()[:32]

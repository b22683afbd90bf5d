"""
Farness
=======
Hamming-distance oracles to Q(q) and instance generators.

A C-coverable string of length n is determined by a chain of occurrence
starts whose gaps are periods of C; the distance oracles minimize Hamming
mismatches over such chains by dynamic programming. Seed variants let the
chain start before position 1 and end after position n.
"""

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Literal, Optional, Tuple, Union

import numpy as np

from .errors import (
    BudgetExceededError,
    GenerationError,
    InvariantViolation,
    ParameterError,
    UnreachableLengthError,
)
from .exact_core import Text, TextLike, _covers, as_letters, hamming, period_set, seed_of
from .numtheory import reachability_table
from .settings import settings

logger = logging.getLogger(__name__)

FarnessTarget = Literal["cover", "seed"]


class Unreachable(Enum):
    """No string of the requested length can be covered by the candidate."""

    MARKER = "inf"

    def __str__(self) -> str:
        return self.value


INFINITE = Unreachable.MARKER

Distance = Union[int, Unreachable]


# =============================================================================
# Placement-Chain Dynamic Program
# =============================================================================


def _placement_dp(
    s: Tuple[int, ...], c: Tuple[int, ...], overhang: bool
) -> Optional[Tuple[int, List[int]]]:
    """Cheapest placement chain as (mismatches, starts), or None if none exists."""
    n, q = len(s), len(c)
    periods = period_set(c).periods
    lo = 2 - q if overhang else 1
    hi = n if overhang else n - q + 1
    size = hi - lo + 1

    padded = np.full(n + 2 * q, -1, dtype=np.int64)
    padded[q : q + n] = s
    # mismatch[j][k]: letter j of an occurrence starting at lo + k disagrees with S
    mismatch = np.empty((q, size), dtype=np.int64)
    for j in range(q):
        start = lo + j + q - 1
        window = padded[start : start + size]
        mismatch[j] = (window != c[j]) & (window > 0)
    tail_costs = np.cumsum(mismatch[::-1], axis=0)[::-1]
    placement_cost = tail_costs[0].tolist()
    step_cost = {delta: tail_costs[q - delta].tolist() for delta in periods}

    first_free = (1 - lo) if overhang else 0
    costs: List[Optional[int]] = [None] * size
    parents: List[int] = [-1] * size
    for k in range(size):
        best = placement_cost[k] if k <= first_free else None
        parent = -1
        for delta in periods:
            prev = k - delta
            if prev < 0 or costs[prev] is None:
                continue
            candidate = costs[prev] + step_cost[delta][k]
            if best is None or candidate < best:
                best, parent = candidate, prev
        costs[k] = best
        parents[k] = parent

    finals = range(n - q + 1 - lo, size) if overhang else range(size - 1, size)
    reachable = [k for k in finals if costs[k] is not None]
    if not reachable:
        return None
    end = min(reachable, key=lambda k: costs[k])
    chain = []
    k = end
    while k != -1:
        chain.append(lo + k)
        k = parents[k]
    return costs[end], chain[::-1]


def _realize(n: int, c: Tuple[int, ...], chain: List[int]) -> Tuple[int, ...]:
    q = len(c)
    letters = [0] * n
    for p in chain:
        for i in range(max(1, p), min(n, p + q - 1) + 1):
            letters[i - 1] = c[i - p]
    return tuple(letters)


def _distance(s: Tuple[int, ...], c: Tuple[int, ...], overhang: bool, verify: bool) -> Distance:
    if not c or len(c) > len(s):
        raise ParameterError(f"candidate length must lie in [1, {len(s)}]")
    result = _placement_dp(s, c, overhang)
    if result is None:
        return INFINITE
    cost, chain = result
    if verify:
        realized = _realize(len(s), c, chain)
        holds = seed_of(c, realized) if overhang else _covers(c, realized)
        if not holds or hamming(s, realized) != cost:
            raise InvariantViolation(f"placement chain {chain} does not realize distance {cost}")
    return cost


def dist_to_cover(text: TextLike, pattern: TextLike, verify: bool = False) -> Distance:
    """Minimum Hamming distance from S to a length-n string covered by C."""
    return _distance(as_letters(text), as_letters(pattern), overhang=False, verify=verify)


def dist_to_seed(text: TextLike, pattern: TextLike, verify: bool = False) -> Distance:
    """Minimum Hamming distance from S to a length-n string having C as a seed."""
    return _distance(as_letters(text), as_letters(pattern), overhang=True, verify=verify)


def closest_covered_string(text: TextLike, pattern: TextLike) -> Tuple[Distance, Optional[Text]]:
    """The nearest C-coverable string to S and its distance (None when unreachable)."""
    s, c = as_letters(text), as_letters(pattern)
    if not c or len(c) > len(s):
        raise ParameterError(f"candidate length must lie in [1, {len(s)}]")
    result = _placement_dp(s, c, overhang=False)
    if result is None:
        return INFINITE, None
    cost, chain = result
    return cost, Text(_realize(len(s), c, chain))


# =============================================================================
# Certificates
# =============================================================================


def _format_distance(value: Distance) -> str:
    return str(value)


def _parse_distance(value: str) -> Distance:
    return INFINITE if value == INFINITE.value else int(value)


@dataclass(frozen=True)
class FarnessCertificate:
    """Exhaustive distance of a text to every candidate of length at most q."""

    n: int
    q: int
    sigma: int
    distance_lower_bound: int
    per_candidate_distances: Dict[Tuple[int, ...], Distance] = field(default_factory=dict)
    target: FarnessTarget = "cover"
    text: Optional[Text] = None

    def __post_init__(self) -> None:
        finite = [d for d in self.per_candidate_distances.values() if d is not INFINITE]
        if finite and min(finite) != self.distance_lower_bound:
            raise InvariantViolation("distance_lower_bound is not the minimum candidate distance")

    def is_far(self, epsilon: float) -> bool:
        return self.distance_lower_bound >= math.ceil(epsilon * self.n)

    def to_text(self) -> str:
        lines = [
            f"n={self.n} q={self.q} sigma={self.sigma} target={self.target} "
            f"bound={self.distance_lower_bound}"
        ]
        for candidate, distance in self.per_candidate_distances.items():
            lines.append(f"{':'.join(map(str, candidate))},{_format_distance(distance)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, payload: str) -> "FarnessCertificate":
        lines = [line for line in payload.splitlines() if line.strip()]
        if not lines:
            raise ParameterError("empty certificate")
        try:
            header = dict(item.split("=", 1) for item in lines[0].split())
            distances: Dict[Tuple[int, ...], Distance] = {}
            for line in lines[1:]:
                candidate, distance = line.split(",")
                distances[tuple(int(x) for x in candidate.split(":"))] = _parse_distance(distance)
            return cls(
                n=int(header["n"]),
                q=int(header["q"]),
                sigma=int(header["sigma"]),
                target=header["target"],  # type: ignore[arg-type]
                distance_lower_bound=int(header["bound"]),
                per_candidate_distances=distances,
            )
        except (KeyError, ValueError) as exc:
            raise ParameterError(f"malformed certificate: {exc}") from exc


def dist_to_Q(
    text: TextLike,
    q: int,
    sigma: int,
    budget: Optional[int] = None,
    target: FarnessTarget = "cover",
    verify: bool = False,
) -> FarnessCertificate:
    """Distance of S to Q(q) by exhaustive enumeration of candidates over [sigma]."""
    s = as_letters(text)
    n = len(s)
    if not 1 <= q <= n:
        raise ParameterError(f"q must lie in [1, {n}], got {q}")
    if sigma < 1:
        raise ParameterError(f"sigma must be positive, got {sigma}")
    if max(s) > sigma:
        raise ParameterError(
            f"text uses letter {max(s)} outside the alphabet [1, {sigma}]; "
            "candidates over [sigma] cannot reach it"
        )
    budget = settings.enumeration_budget if budget is None else budget
    count = sum(sigma**c for c in range(1, q + 1))
    if count > budget:
        raise BudgetExceededError(
            f"{count} candidates exceed the enumeration budget of {budget}; "
            "use a smaller sigma or q"
        )

    overhang = target == "seed"
    distances: Dict[Tuple[int, ...], Distance] = {}
    for c in range(1, q + 1):
        for candidate in itertools.product(range(1, sigma + 1), repeat=c):
            distances[candidate] = _distance(s, candidate, overhang=overhang, verify=verify)
    bound = min(d for d in distances.values() if d is not INFINITE)
    return FarnessCertificate(
        n=n,
        q=q,
        sigma=sigma,
        distance_lower_bound=bound,
        per_candidate_distances=distances,
        target=target,
        text=text if isinstance(text, Text) else Text(s),
    )


def dist_to_seeded(
    text: TextLike, q: int, sigma: int, budget: Optional[int] = None, verify: bool = False
) -> FarnessCertificate:
    """Distance of S to the strings having a seed of length at most q."""
    return dist_to_Q(text, q, sigma, budget=budget, target="seed", verify=verify)


# =============================================================================
# Generators
# =============================================================================


def gen_coverable(pattern: TextLike, n: int, rng: random.Random) -> Text:
    """A random length-n string covered by C, built from a random placement chain."""
    c = as_letters(pattern)
    periods = period_set(c)
    q = len(c)
    reach = reachability_table(periods.periods, n - q) if n >= q else None
    if reach is None or not reach[n - q]:
        raise UnreachableLengthError(
            f"length {n} is not reachable for |C|={q}: n - |C| must be a conical combination "
            f"of the period set {periods.periods} (gcd {periods.gcd_value})"
        )

    letters = list(c)
    remaining = n - q
    while remaining > 0:
        options = [d for d in periods.periods if d <= remaining and reach[remaining - d]]
        delta = rng.choice(options)
        letters.extend(c[q - delta :])
        remaining -= delta
    sigma = pattern.sigma if isinstance(pattern, Text) else None
    return Text(tuple(letters), sigma)


def gen_far(
    q: int,
    sigma: int,
    n: int,
    epsilon: float,
    rng: random.Random,
    max_attempts: int = 64,
    budget: Optional[int] = None,
    target: FarnessTarget = "cover",
    verify: bool = False,
) -> FarnessCertificate:
    """Rejection-sample uniform texts until one is certified epsilon-far."""
    if sigma < 2:
        raise ParameterError("no far instance exists over a unary alphabet: every string is in Q(1)")
    if epsilon < 0:
        raise ParameterError(f"epsilon must be non-negative, got {epsilon}")
    threshold = math.ceil(epsilon * n)
    best: Optional[int] = None
    for attempt in range(1, max_attempts + 1):
        text = Text(tuple(rng.randint(1, sigma) for _ in range(n)), sigma)
        certificate = dist_to_Q(text, q, sigma, budget=budget, target=target, verify=verify)
        if certificate.distance_lower_bound >= threshold:
            logger.info(
                f"[FARNESS] certified {target} distance {certificate.distance_lower_bound} "
                f">= {threshold} after {attempt} attempt(s)"
            )
            return certificate
        if best is None or certificate.distance_lower_bound > best:
            best = certificate.distance_lower_bound
    raise GenerationError(
        f"no {epsilon}-far text found in {max_attempts} attempts; best distance {best}, "
        f"needed {threshold}"
    )

"""
Number Theory
=============
Conical combinations, Frobenius-bound checks and the covered-string
construction obtained by overlapping a candidate with itself.
"""

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, List, Optional, Tuple

import numpy as np

from .errors import InvariantViolation, ParameterError, UnreachableLengthError
from .exact_core import Text, TextLike, as_letters, period_set

# =============================================================================
# Domain Types
# =============================================================================


@dataclass(frozen=True)
class ConicalWitness:
    """Coefficients x_i with sum(x_i * a_i) == target."""

    generators: Tuple[int, ...]
    coefficients: Tuple[int, ...]
    target: int

    def __post_init__(self) -> None:
        if len(self.generators) != len(self.coefficients):
            raise ParameterError("generators and coefficients must have equal length")
        if any(x < 0 for x in self.coefficients):
            raise ParameterError("coefficients must be natural numbers")
        total = sum(x * a for x, a in zip(self.coefficients, self.generators))
        if total != self.target:
            raise InvariantViolation(f"witness sums to {total}, expected {self.target}")

    def scaled(self, factor: int) -> "ConicalWitness":
        """The same coefficients over generators multiplied by ``factor``."""
        return ConicalWitness(
            generators=tuple(a * factor for a in self.generators),
            coefficients=self.coefficients,
            target=self.target * factor,
        )


def _normalize(generators: Iterable[int]) -> Tuple[int, ...]:
    values = tuple(sorted(set(generators)))
    if not values:
        raise ParameterError("generator set must be nonempty")
    if values[0] < 1:
        raise ParameterError("generators must be positive integers")
    return values


# =============================================================================
# Representability
# =============================================================================


def reachability_table(generators: Iterable[int], n: int) -> np.ndarray:
    """Boolean table over [0, n]: entry v is True iff v is a conical combination."""
    values = _normalize(generators)
    if n < 0:
        return np.zeros(0, dtype=bool)
    return _suffix_tables(values, n)[0]


def _suffix_tables(values: Tuple[int, ...], n: int) -> List[np.ndarray]:
    # tables[j][v]: v is representable using only values[j:]
    tables = [np.zeros(n + 1, dtype=bool) for _ in range(len(values) + 1)]
    tables[-1][0] = True
    for j in range(len(values) - 1, -1, -1):
        a = values[j]
        table = tables[j + 1].copy()
        for residue in range(min(a, n + 1)):
            table[residue::a] = np.logical_or.accumulate(table[residue::a])
        tables[j] = table
    return tables


def conical_representable(generators: Iterable[int], n: int) -> Optional[ConicalWitness]:
    """Return the lexicographically smallest witness for n, or None.

    Coefficients are ordered by ascending generator; the first coefficient is
    minimized first.
    """
    values = _normalize(generators)
    if n < 0:
        return None
    tables = _suffix_tables(values, n)
    if not tables[0][n]:
        return None

    remaining = n
    coefficients = []
    for j, a in enumerate(values):
        x = 0
        while not tables[j + 1][remaining - x * a]:
            x += 1
        coefficients.append(x)
        remaining -= x * a
    return ConicalWitness(generators=values, coefficients=tuple(coefficients), target=n)


def frobenius_bound(generators: Iterable[int]) -> int:
    """Threshold 2*a_{k-1}*floor(a_k/k) - a_k above which every n is representable."""
    values = _normalize(generators)
    if len(values) < 2:
        raise ParameterError("the Frobenius bound needs at least two generators")
    if reduce(gcd, values) != 1:
        raise ParameterError(f"generators {values} are not set-wise co-prime")
    k = len(values)
    return 2 * values[-2] * (values[-1] // k) - values[-1]


def gcd_aware_representable(
    generators: Iterable[int], n: int, q: Optional[int] = None
) -> Optional[ConicalWitness]:
    """Witness for n over A, using the gcd-scaled reduction when n >= 2q^3."""
    values = _normalize(generators)
    bound = values[-1] if q is None else q
    if values[-1] > bound:
        raise ParameterError(f"generators must be bounded by q={bound}")
    g = reduce(gcd, values)
    if n % g != 0:
        return None
    if n < 2 * bound**3:
        return conical_representable(values, n)

    reduced = conical_representable([a // g for a in values], n // g)
    if reduced is None:
        raise InvariantViolation(f"no witness for n={n} over {values} although n >= 2q^3")
    return reduced.scaled(g)


# =============================================================================
# Bound Sweeps
# =============================================================================


def square_bound_counterexamples(q: int, span: int = 200) -> List[Tuple[Tuple[int, ...], int]]:
    """(A, n) pairs violating the 2q^2 bound for gcd-1 subsets of [q]."""
    failures = []
    low, high = 2 * q * q, 2 * q * q + span
    for mask in range(1, 1 << q):
        subset = tuple(a for a in range(1, q + 1) if mask >> (a - 1) & 1)
        if reduce(gcd, subset) != 1:
            continue
        table = reachability_table(subset, high)
        failures.extend((subset, int(v)) for v in np.flatnonzero(~table[low:]) + low)
    return failures


def frobenius_bound_counterexamples(
    generators: Iterable[int], span: Optional[int] = None
) -> List[int]:
    """Values in (bound, bound + span] that are not representable."""
    values = _normalize(generators)
    bound = frobenius_bound(values)
    span = 3 * values[-1] if span is None else span
    low = max(bound + 1, 0)
    high = bound + span
    if high < low:
        return []
    table = reachability_table(values, high)
    return [int(v) for v in np.flatnonzero(~table[low:]) + low]


# =============================================================================
# Covered String Construction
# =============================================================================


def construct_covered_string(pattern: TextLike, length: int) -> Text:
    """Overlap copies of C, largest period first, to reach ``length`` letters."""
    c = as_letters(pattern)
    periods = period_set(c)
    q = len(c)
    g = periods.gcd_value
    if q % g != 0:
        raise InvariantViolation(f"gcd {g} of the period set does not divide |C|={q}")
    if (length % g == 0) != ((length - q) % g == 0):
        raise InvariantViolation("gcd | length and gcd | length - |C| disagree")
    if length < q:
        raise UnreachableLengthError(f"length not reachable: {length} < |C|={q}")

    witness = conical_representable(periods.periods, length - q)
    if witness is None:
        if length >= 2 * q**3 + q and length % g == 0:
            raise InvariantViolation(f"no witness for length {length} above 2q^3+q")
        raise UnreachableLengthError(
            f"length not reachable: {length} - {q} is not a conical combination of "
            f"{periods.periods} (gcd {g})"
        )

    letters = list(c)
    for a, x in sorted(zip(witness.generators, witness.coefficients), reverse=True):
        for _ in range(x):
            letters.extend(c[q - a :])
    sigma = pattern.sigma if isinstance(pattern, Text) else None
    return Text(tuple(letters), sigma)

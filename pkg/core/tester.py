"""
Cover and Seed Testers
======================
Sublinear-query testers for "S has a cover (seed) of length at most q".

The testers see the text only through a :class:`QueryOracle`. They sample
fragments of length 4q^3 from a decomposition whose consecutive fragments
overlap by 2q^3 positions, and keep a candidate only if it is consistent on
every sampled fragment: it is a seed of the fragment, and every occurrence
fully inside the fragment sits at a global position p with
gcd(periods(C)) | p - 1 (shifted by the left overhang for seeds).
"""

import logging
import os
import random
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Literal, Optional, Sequence, Tuple

from .errors import InvariantViolation, ParameterError
from .exact_core import (
    TextLike,
    all_covers,
    as_letters,
    occurrences,
    period_set,
    seed_of,
)
from .policies import TesterConfig

logger = logging.getLogger(__name__)

# =============================================================================
# Query Oracles
# =============================================================================


class QueryOracle:
    """Answers "what is the letter at position i" and counts every query."""

    def __init__(
        self,
        source: Callable[[int], int],
        length: int,
        record_log: bool = False,
    ):
        self._source = source
        self.length = length
        self.query_count = 0
        self.access_log: Optional[List[int]] = [] if record_log else None

    @classmethod
    def from_text(cls, text: TextLike, record_log: bool = False) -> "QueryOracle":
        letters = as_letters(text)
        return cls(lambda i: letters[i - 1], len(letters), record_log=record_log)

    def query(self, position: int) -> int:
        if not 1 <= position <= self.length:
            raise ParameterError(f"query position {position} outside [1, {self.length}]")
        self.query_count += 1
        if self.access_log is not None:
            self.access_log.append(position)
        return self._source(position)


class FileOracle(QueryOracle):
    """Oracle over a byte file (symbol = byte + 1), reading one byte per query.

    A single trailing newline is not part of the text.
    """

    def __init__(self, path: str, record_log: bool = False):
        self._handle = open(path, "rb")
        size = os.fstat(self._handle.fileno()).st_size
        for ending in (b"\r\n", b"\n"):
            if size >= len(ending):
                self._handle.seek(size - len(ending))
                if self._handle.read(len(ending)) == ending:
                    size -= len(ending)
                    break
        super().__init__(self._read_byte, size, record_log=record_log)

    def _read_byte(self, position: int) -> int:
        self._handle.seek(position - 1)
        return self._handle.read(1)[0] + 1

    def close(self) -> None:
        self._handle.close()

    def __enter__(self) -> "FileOracle":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()


class _PositionReader:
    """Reads oracle positions at most once each."""

    def __init__(self, oracle: QueryOracle):
        self._oracle = oracle
        self._known: Dict[int, int] = {}

    def read(self, start: int, length: int) -> Tuple[int, ...]:
        letters = []
        for position in range(start, start + length):
            if position not in self._known:
                self._known[position] = self._oracle.query(position)
            letters.append(self._known[position])
        return tuple(letters)


# =============================================================================
# Fragment Decomposition and Consistency
# =============================================================================


@dataclass(frozen=True)
class FragmentSpec:
    """A fragment S[global_start .. global_start + length - 1].

    Index 0 denotes the length-4q^3 suffix sampled in addition to the
    decomposition; decomposition fragments are numbered from 1.
    """

    index: int
    global_start: int
    length: int

    @property
    def global_end(self) -> int:
        return self.global_start + self.length - 1


def fragment_decomposition(n: int, q: int) -> List[FragmentSpec]:
    """Fragments of length 4q^3 starting every 2q^3 positions, clipped to n."""
    if n < 1 or q < 1:
        raise ParameterError(f"n and q must be positive (n={n}, q={q})")
    step, size = 2 * q**3, 4 * q**3
    return [
        FragmentSpec(index=i + 1, global_start=start, length=min(size, n - start + 1))
        for i, start in enumerate(range(1, n + 1, step))
    ]


def _alignments(
    c: Tuple[int, ...], fragment: Tuple[int, ...], global_start: int, g: int
) -> Optional[set]:
    """Residues (p - 1) mod g of the occurrences in a fragment, or None if C is no seed of it."""
    if len(fragment) < len(c):
        logger.debug(f"[TESTER] fragment at {global_start} is shorter than the candidate")
        return None
    if not seed_of(c, fragment):
        return None
    return {(global_start + p - 2) % g for p in occurrences(c, fragment).positions}


def is_consistent(
    pattern: TextLike, fragment_letters: TextLike, global_start: int, overhang: int = 0
) -> bool:
    """C-consistency of a fragment placed at ``global_start``.

    ``overhang`` is the length of the part of the covering that sticks out
    to the left of S; it is 0 for covers.
    """
    c, f = as_letters(pattern), as_letters(fragment_letters)
    g = period_set(c).gcd_value
    residues = _alignments(c, f, global_start, g)
    if residues is None:
        return False
    return residues <= {(-overhang) % g}


def _survives(
    c: Tuple[int, ...],
    fragments: Sequence[Tuple[FragmentSpec, Tuple[int, ...]]],
    flush: bool,
) -> bool:
    # flush: the covering starts at position 1; otherwise one common overhang shift is allowed
    g = period_set(c).gcd_value
    seen: set = set()
    for spec, letters in fragments:
        residues = _alignments(c, letters, spec.global_start, g)
        if residues is None:
            return False
        seen |= residues
        if (flush and seen - {0}) or len(seen) > 1:
            return False
    return True


def count_consistent_fragments(
    text: TextLike, pattern: TextLike, q: int, overhang: int = 0
) -> int:
    """Number of C-consistent fragments in the full decomposition of S."""
    s = as_letters(text)
    return sum(
        is_consistent(pattern, s[spec.global_start - 1 : spec.global_end], spec.global_start, overhang)
        for spec in fragment_decomposition(len(s), q)
    )


def candidate_seeds(window: TextLike, q: int) -> List[Tuple[int, ...]]:
    """Distinct substrings of ``window`` of length 1..q, shortest first."""
    w = as_letters(window)
    found = {w[i : i + c] for c in range(1, q + 1) for i in range(len(w) - c + 1)}
    return sorted(found, key=lambda c: (len(c), c))


# =============================================================================
# Testers
# =============================================================================


@dataclass(frozen=True)
class Verdict:
    """Outcome of a tester run; the answer is YES iff some candidate survived."""

    queries_used: int
    surviving_candidates: Tuple[int, ...]
    sampled_fragment_indices: Tuple[int, ...] = ()
    exact: bool = False

    @property
    def answer(self) -> Literal["YES", "NO"]:
        return "YES" if self.surviving_candidates else "NO"


def _check_oracle(config: TesterConfig, oracle: QueryOracle) -> None:
    if oracle.length != config.n:
        raise ParameterError(f"oracle serves {oracle.length} positions but n={config.n}")


def _sample(config: TesterConfig) -> List[FragmentSpec]:
    block = 4 * config.q**3
    # clipped tail fragments are never drawn; the index-0 suffix fragment spans them
    full = [f for f in fragment_decomposition(config.n, config.q) if f.length == block]
    rng = random.Random(config.rng_seed)
    picked = [rng.choice(full) for _ in range(config.sample_count)]
    suffix = FragmentSpec(index=0, global_start=config.n - block + 1, length=block)
    return picked + [suffix]


def _read_fragments(
    reader: _PositionReader, sampled: Iterable[FragmentSpec]
) -> List[Tuple[FragmentSpec, Tuple[int, ...]]]:
    distinct = dict.fromkeys(sampled)
    return [(spec, reader.read(spec.global_start, spec.length)) for spec in distinct]


def _finish(
    config: TesterConfig,
    oracle: QueryOracle,
    start_count: int,
    survivors: Iterable[int],
    sampled: Sequence[FragmentSpec],
    exact: bool,
    label: str,
) -> Verdict:
    used = oracle.query_count - start_count
    if used > config.query_bound:
        raise InvariantViolation(f"{used} queries exceed the bound {config.query_bound}")
    verdict = Verdict(
        queries_used=used,
        surviving_candidates=tuple(sorted(set(survivors))),
        sampled_fragment_indices=tuple(spec.index for spec in sampled),
        exact=exact,
    )
    logger.info(
        f"[TESTER] {label} {verdict.answer} q={config.q} n={config.n} "
        f"queries={used}/{config.query_bound} survivors={list(verdict.surviving_candidates)}"
    )
    return verdict


def run_cover_tester(config: TesterConfig, oracle: QueryOracle) -> Verdict:
    """Accept iff some border of length at most q is consistent on every sampled fragment."""
    _check_oracle(config, oracle)
    start_count = oracle.query_count
    q, n = config.q, config.n
    reader = _PositionReader(oracle)

    if n <= 4 * q**3:
        s = reader.read(1, n)
        survivors = [c for c in all_covers(s) if c <= q]
        return _finish(config, oracle, start_count, survivors, [], True, "cover")

    sampled = _sample(config)
    fragments = _read_fragments(reader, sampled)
    head = reader.read(1, q)
    tail = reader.read(n - q + 1, q)
    borders = [c for c in range(1, q + 1) if head[:c] == tail[q - c :]]
    survivors = [c for c in borders if _survives(head[:c], fragments, flush=True)]
    return _finish(config, oracle, start_count, survivors, sampled, False, "cover")


def run_seed_tester(config: TesterConfig, oracle: QueryOracle) -> Verdict:
    """Accept iff some substring of S[1..2q] of length at most q survives every sampled fragment."""
    _check_oracle(config, oracle)
    start_count = oracle.query_count
    q, n = config.q, config.n
    reader = _PositionReader(oracle)

    if n <= 4 * q**3:
        s = reader.read(1, n)
        survivors = [len(c) for c in candidate_seeds(s, q) if seed_of(c, s)]
        return _finish(config, oracle, start_count, survivors, [], True, "seed")

    sampled = _sample(config)
    fragments = _read_fragments(reader, sampled)
    window = reader.read(1, 2 * q)
    survivors = [
        len(c) for c in candidate_seeds(window, q) if _survives(c, fragments, flush=False)
    ]
    return _finish(config, oracle, start_count, survivors, sampled, False, "seed")

"""
Streaming Shortest Cover
========================
One-pass computation of the shortest cover of length at most q in O(q)
working space.

The prefix P = S[1..q] supplies the candidates P[1..c]. The stream is cut
into fragments of length 4q starting every 2q positions; a candidate that is
not a seed of some fragment dies. At the end, the survivors that are also
borders of S (read off the borders of P·$·L, L the last q letters) are
exactly the covers of length at most q.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import BinaryIO, Deque, Dict, Iterable, Iterator, List, Optional

from .errors import ParameterError, StreamTooShortError, StreamUsageError
from .exact_core import failure_function, seed_of
from .policies import StreamMode

logger = logging.getLogger(__name__)

SENTINEL = 0


@dataclass
class StreamState:
    """Mutable state of one stream; only ``push`` and ``finalize`` advance it."""

    q: int
    mode: StreamMode = "bytes"
    prefix: List[int] = field(default_factory=list)
    candidate_mask: List[bool] = field(default_factory=list)
    window: Deque[int] = field(default_factory=deque)
    letters_seen: int = 0
    letter_table: Dict[int, int] = field(default_factory=dict)
    all_dead: bool = False
    finalized: bool = False
    peak_buffer: int = 0

    def __post_init__(self) -> None:
        if self.q < 1:
            raise ParameterError(f"q must be positive, got {self.q}")
        self.window = deque(maxlen=4 * self.q)
        self.candidate_mask = [True] * self.q

    @property
    def survivors(self) -> List[int]:
        if self.all_dead:
            return []
        return [c for c in range(1, self.q + 1) if self.candidate_mask[c - 1]]

    @property
    def buffered(self) -> int:
        return len(self.window) + len(self.prefix)

    def push(self, letter: int) -> "StreamState":
        if self.finalized:
            raise StreamUsageError("push after finalize")
        if self.mode == "bytes" and not 0 <= letter <= 255:
            raise ParameterError(f"byte stream letter out of range: {letter}")
        self.letters_seen += 1
        if self.all_dead:
            return self

        if self.letters_seen <= self.q:
            mapped = self.letter_table.setdefault(letter, len(self.letter_table) + 1)
            self.prefix.append(mapped)
        elif letter in self.letter_table:
            mapped = self.letter_table[letter]
        else:
            logger.debug(f"[STREAM] letter {letter} absent from the prefix, all candidates die")
            self._kill_all()
            return self

        self.window.append(mapped)
        self._track_space()
        span = 4 * self.q
        if self.letters_seen >= span and (self.letters_seen - span) % (2 * self.q) == 0:
            self._check_fragment(tuple(self.window))
        return self

    def finalize(self) -> Optional[int]:
        if self.finalized:
            raise StreamUsageError("stream already finalized")
        if self.letters_seen < self.q:
            raise StreamTooShortError(
                f"stream shorter than q: {self.letters_seen} letters, q={self.q}"
            )
        self.finalized = True
        if self.all_dead:
            return None

        n, q = self.letters_seen, self.q
        if n < 4 * q:
            self._check_fragment(tuple(self.window))
        else:
            last_full_end = 4 * q + 2 * q * ((n - 4 * q) // (2 * q))
            if last_full_end < n:
                tail_length = n - last_full_end + 2 * q
                self._check_fragment(tuple(self.window)[-tail_length:])

        suffix = list(self.window)[-q:]
        fail = failure_function(self.prefix + [SENTINEL] + suffix)
        borders = set()
        b = fail[-1]
        while b > 0:
            borders.add(b)
            b = fail[b - 1]
        for c in range(1, q + 1):
            if c not in borders:
                self.candidate_mask[c - 1] = False

        survivors = self.survivors
        result = survivors[0] if survivors else None
        logger.info(f"[STREAM] n={n} q={q} shortest cover={result} peak buffer={self.peak_buffer}")
        return result

    def _check_fragment(self, fragment: tuple) -> None:
        for c in self.survivors:
            if not seed_of(tuple(self.prefix[:c]), fragment):
                self.candidate_mask[c - 1] = False
        if not self.survivors:
            logger.debug(f"[STREAM] every candidate died by position {self.letters_seen}")

    def _kill_all(self) -> None:
        self.all_dead = True
        self.candidate_mask = [False] * self.q
        self.window.clear()
        self.prefix.clear()

    def _track_space(self) -> None:
        self.peak_buffer = max(self.peak_buffer, self.buffered)
        if self.buffered > 5 * self.q:
            raise AssertionError(f"stream buffer {self.buffered} exceeds 5q={5 * self.q}")


# =============================================================================
# Functional Interface
# =============================================================================


def stream_init(q: int, mode: StreamMode = "bytes") -> StreamState:
    return StreamState(q=q, mode=mode)


def stream_push(state: StreamState, letter: int) -> StreamState:
    return state.push(letter)


def stream_finalize(state: StreamState) -> Optional[int]:
    return state.finalize()


def shortest_cover_streaming(
    letters: Iterable[int], q: int, mode: StreamMode = "ints"
) -> Optional[int]:
    """Run one stream over ``letters`` and return the shortest cover of length at most q."""
    state = stream_init(q, mode)
    for letter in letters:
        state.push(letter)
    return state.finalize()


def iter_letters(stream: BinaryIO, mode: StreamMode, chunk_size: int = 1 << 16) -> Iterator[int]:
    """Yield raw letters from a binary stream: one per byte, or whitespace-separated integers.

    In byte mode a single trailing newline is dropped.
    """
    if mode == "ints":
        pending = b""
        while chunk := stream.read(chunk_size):
            tokens = (pending + chunk).split()
            pending = b"" if chunk[-1:].isspace() else tokens.pop() if tokens else b""
            for token in tokens:
                yield _parse_int(token)
        if pending:
            yield _parse_int(pending)
        return

    held = b""
    while chunk := stream.read(chunk_size):
        data = held + chunk
        cut = max(0, len(data) - 2)
        yield from data[:cut]
        held = data[cut:]
    if held.endswith(b"\r\n"):
        held = held[:-2]
    elif held.endswith(b"\n"):
        held = held[:-1]
    yield from held


def _parse_int(token: bytes) -> int:
    try:
        value = int(token)
    except ValueError as exc:
        raise ParameterError(f"malformed integer letter: {token!r}") from exc
    if value < 1:
        raise ParameterError(f"integer letters must be positive, got {value}")
    return value

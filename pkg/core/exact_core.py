"""
Exact Core
==========
Exact baselines for borders, periods, occurrences, covers and seeds.

These functions are the ground truth every other module is checked against.
Positions are 1-based and global (``S[i..j]`` notation); letters are positive
integers, the value 0 being reserved as a sentinel outside every alphabet.
"""

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from .errors import ParameterError

DEFAULT_ALPHABET = "abcdefghijklmnopqrstuvwxyz"

# =============================================================================
# Domain Types
# =============================================================================


@dataclass(frozen=True)
class Text:
    """An immutable string over the integer alphabet [sigma].

    Indexing and iteration follow Python conventions (0-based); use
    :meth:`fragment` for the 1-based inclusive ``S[i..j]`` view.
    """

    letters: Tuple[int, ...]
    sigma: Optional[int] = None

    def __post_init__(self) -> None:
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if letters and min(letters) < 1:
            raise ParameterError("letters must be positive integers")
        if self.sigma is not None:
            if self.sigma < 1:
                raise ParameterError(f"sigma must be positive, got {self.sigma}")
            if letters and max(letters) > self.sigma:
                raise ParameterError(f"letter {max(letters)} exceeds sigma={self.sigma}")

    @classmethod
    def from_str(cls, value: str, alphabet: str = DEFAULT_ALPHABET) -> "Text":
        """Map the i-th letter of ``alphabet`` to symbol i+1."""
        index = {ch: i + 1 for i, ch in enumerate(alphabet)}
        try:
            letters = tuple(index[ch] for ch in value)
        except KeyError as exc:
            raise ParameterError(f"letter {exc.args[0]!r} is not in the alphabet") from exc
        return cls(letters, sigma=len(alphabet))

    def to_str(self, alphabet: str = DEFAULT_ALPHABET) -> str:
        if self.letters and max(self.letters) > len(alphabet):
            raise ParameterError("alphabet too small to render this text")
        return "".join(alphabet[x - 1] for x in self.letters)

    def fragment(self, i: int, j: int) -> "Text":
        """Return S[i..j] (1-based, inclusive)."""
        if not 1 <= i <= j + 1 <= len(self.letters) + 1:
            raise ParameterError(f"fragment [{i}, {j}] out of range for length {len(self)}")
        return Text(self.letters[i - 1 : j], self.sigma)

    def prefix(self, length: int) -> "Text":
        return self.fragment(1, length)

    def suffix(self, length: int) -> "Text":
        n = len(self.letters)
        return self.fragment(n - length + 1, n)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, index: int) -> int:
        return self.letters[index]


TextLike = Union[Text, Sequence[int]]


def as_letters(value: TextLike) -> Tuple[int, ...]:
    """Return the letters of a Text or plain sequence as a tuple."""
    if isinstance(value, Text):
        return value.letters
    return tuple(value)


@dataclass(frozen=True)
class PeriodSet:
    """The period set of a candidate together with its gcd."""

    periods: Tuple[int, ...]
    gcd_value: int

    @property
    def length(self) -> int:
        # |C| is always the largest period
        return self.periods[-1]

    def __contains__(self, period: object) -> bool:
        return period in self.periods

    def __iter__(self) -> Iterator[int]:
        return iter(self.periods)

    def __len__(self) -> int:
        return len(self.periods)


@dataclass(frozen=True)
class OccurrenceList:
    pattern_length: int
    positions: Tuple[int, ...]

    def __iter__(self) -> Iterator[int]:
        return iter(self.positions)

    def __len__(self) -> int:
        return len(self.positions)


# =============================================================================
# Borders and Periods
# =============================================================================


def failure_function(text: TextLike) -> List[int]:
    """KMP prefix function: entry i is the longest proper border of S[1..i+1]."""
    s = as_letters(text)
    fail = [0] * len(s)
    k = 0
    for i in range(1, len(s)):
        while k > 0 and s[i] != s[k]:
            k = fail[k - 1]
        if s[i] == s[k]:
            k += 1
        fail[i] = k
    return fail


def _proper_borders(fail: List[int]) -> List[int]:
    borders = []
    b = fail[-1] if fail else 0
    while b > 0:
        borders.append(b)
        b = fail[b - 1]
    return borders


def period_set(pattern: TextLike) -> PeriodSet:
    """Return every period of C; p is a period iff |C| - p is a border."""
    c = as_letters(pattern)
    if not c:
        raise ParameterError("empty pattern")
    q = len(c)
    periods = sorted({q} | {q - b for b in _proper_borders(failure_function(c))})
    return PeriodSet(periods=tuple(periods), gcd_value=reduce(gcd, periods))


def borders_up_to(text: TextLike, q: int) -> List[int]:
    """All border lengths b in [1, q] of S, ascending (S itself included when q = |S|)."""
    s = as_letters(text)
    n = len(s)
    if q < 1 or q > n:
        raise ParameterError(f"q must lie in [1, {n}], got {q}")
    borders = [b for b in _proper_borders(failure_function(s)) if b <= q]
    if n <= q:
        borders.append(n)
    return sorted(borders)


# =============================================================================
# Occurrences, Covers and Seeds
# =============================================================================


def occurrences(pattern: TextLike, text: TextLike) -> OccurrenceList:
    """Every 1-based start position of C in S (Knuth-Morris-Pratt)."""
    c = as_letters(pattern)
    s = as_letters(text)
    m = len(c)
    if m == 0:
        raise ParameterError("empty pattern")
    if m > len(s):
        return OccurrenceList(pattern_length=m, positions=())

    fail = failure_function(c)
    positions = []
    k = 0
    for i, letter in enumerate(s):
        while k > 0 and letter != c[k]:
            k = fail[k - 1]
        if letter == c[k]:
            k += 1
        if k == m:
            positions.append(i - m + 2)
            k = fail[k - 1]
    return OccurrenceList(pattern_length=m, positions=tuple(positions))


def _check_pattern(c: Tuple[int, ...], s: Tuple[int, ...]) -> None:
    if not c:
        raise ParameterError("empty pattern")
    if len(c) > len(s):
        raise ParameterError(f"pattern length {len(c)} exceeds text length {len(s)}")


def _covers(c: Tuple[int, ...], s: Tuple[int, ...]) -> bool:
    m, n = len(c), len(s)
    positions = occurrences(c, s).positions
    if not positions or positions[0] != 1 or positions[-1] != n - m + 1:
        return False
    return all(b - a <= m for a, b in zip(positions, positions[1:]))


def is_cover(pattern: TextLike, text: TextLike) -> bool:
    """True iff every position of S lies inside an occurrence of C."""
    c, s = as_letters(pattern), as_letters(text)
    _check_pattern(c, s)
    return _covers(c, s)


def all_covers(text: TextLike) -> List[int]:
    """Lengths of all covers of S, ascending; |S| is always included."""
    s = as_letters(text)
    if not s:
        raise ParameterError("covers are defined only for non-empty strings")
    return [b for b in borders_up_to(s, len(s)) if _covers(s[:b], s)]


def shortest_cover(text: TextLike) -> int:
    return all_covers(text)[0]


def seed_of(c: Tuple[int, ...], s: Tuple[int, ...]) -> bool:
    """Seed check without argument validation.

    Sweeps the full occurrences of C in S left to right, seeded with the
    partial occurrence overhanging the left end that reaches furthest, and
    closes with the partial occurrence overhanging the right end that starts
    earliest.
    """
    m, n = len(c), len(s)
    covered = 0
    for a in range(1, m):
        if s[: m - a] == c[a:]:
            covered = m - a
            break

    for p in occurrences(c, s).positions:
        if p > covered + 1:
            return False
        covered = p + m - 1
    if covered >= n:
        return True

    for p in range(n - m + 2, n + 1):
        if s[p - 1 :] == c[: n - p + 1]:
            return p <= covered + 1
    return False


def is_seed(pattern: TextLike, text: TextLike) -> bool:
    """True iff C covers some X·S·Y, X a prefix and Y a suffix of C."""
    c, s = as_letters(pattern), as_letters(text)
    _check_pattern(c, s)
    return seed_of(c, s)


def is_seed_bruteforce(pattern: TextLike, text: TextLike) -> bool:
    """Reference seed check over every overhang pair (a, b) in [0, |C|]^2."""
    c, s = as_letters(pattern), as_letters(text)
    _check_pattern(c, s)
    m = len(c)
    for a in range(m + 1):
        for b in range(m + 1):
            if _covers(c, c[:a] + s + c[m - b :]):
                return True
    return False


def has_seed_up_to(text: TextLike, q: int) -> bool:
    """True iff some substring of S of length at most q is a seed of S."""
    s = as_letters(text)
    if q < 1:
        raise ParameterError(f"q must be positive, got {q}")
    if len(s) <= q:
        return True
    candidates = {s[i : i + c] for c in range(1, q + 1) for i in range(len(s) - c + 1)}
    return any(seed_of(c, s) for c in sorted(candidates, key=len))


def hamming(first: TextLike, second: TextLike) -> int:
    a, b = as_letters(first), as_letters(second)
    if len(a) != len(b):
        raise ParameterError("Hamming distance requires two strings of equal lengths")
    return sum(x != y for x, y in zip(a, b))

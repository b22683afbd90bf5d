"""
Tests for Exact Core
====================
Borders, periods, occurrences, covers and seeds against hand-checked values
and brute-force definitions.
"""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.errors import ParameterError
from core.exact_core import (
    OccurrenceList,
    PeriodSet,
    Text,
    all_covers,
    borders_up_to,
    failure_function,
    has_seed_up_to,
    hamming,
    is_cover,
    is_seed,
    is_seed_bruteforce,
    occurrences,
    period_set,
    shortest_cover,
)

EXAMPLE_COVERED = "abaababaababaaba"
EXAMPLE_SEEDED = "aabaababaababaabaa"


def t(value: str) -> Text:
    return Text.from_str(value)


texts = st.lists(st.integers(min_value=1, max_value=3), min_size=1, max_size=14)


def naive_periods(c):
    return [p for p in range(1, len(c) + 1) if all(c[i] == c[i + p] for i in range(len(c) - p))]


def chain_occurrences(c, rng, count):
    """Concatenate overlapping copies of c, each shifted by one of its periods."""
    periods = period_set(c).periods
    s = list(c)
    for _ in range(count):
        p = rng.choice(periods)
        s.extend(c[len(c) - p :])
    return tuple(s)


def naive_cover(c, s):
    m = len(c)
    covered = [False] * len(s)
    for i in range(len(s) - m + 1):
        if tuple(s[i : i + m]) == tuple(c):
            for j in range(i, i + m):
                covered[j] = True
    return all(covered)


# =============================================================================
# Text Tests
# =============================================================================


class TestText:
    def test_from_str_maps_alphabet_to_symbols(self):
        text = t("abc")
        assert text.letters == (1, 2, 3)
        assert text.to_str() == "abc"

    def test_fragment_is_one_based_inclusive(self):
        text = t(EXAMPLE_COVERED)
        assert text.fragment(4, 6).to_str() == "aba"
        assert text.prefix(3).to_str() == "aba"
        assert text.suffix(6).to_str() == "abaaba"

    def test_fragment_out_of_range(self):
        with pytest.raises(ParameterError):
            t("abc").fragment(2, 4)

    def test_letter_above_sigma_rejected(self):
        with pytest.raises(ParameterError):
            Text((1, 3), sigma=2)

    def test_nonpositive_letter_rejected(self):
        with pytest.raises(ParameterError):
            Text((1, 0))

    def test_unknown_character_rejected(self):
        with pytest.raises(ParameterError):
            Text.from_str("ab?")

    def test_text_is_immutable(self):
        text = t("ab")
        with pytest.raises(AttributeError):
            text.letters = (1,)  # type: ignore[misc]


# =============================================================================
# Borders and Periods Tests
# =============================================================================


class TestPeriodSet:
    def test_aba(self):
        assert period_set(t("aba")) == PeriodSet(periods=(2, 3), gcd_value=1)

    def test_ab(self):
        assert period_set(t("ab")) == PeriodSet(periods=(2,), gcd_value=2)

    def test_single_letter(self):
        periods = period_set(t("b"))
        assert periods.periods == (1,)
        assert periods.gcd_value == 1

    def test_empty_pattern(self):
        with pytest.raises(ParameterError, match="empty pattern"):
            period_set(())

    def test_length_is_trivial_period(self):
        periods = period_set(t("abaab"))
        assert periods.length == 5
        assert 5 in periods

    @given(texts)
    @settings(max_examples=200, deadline=None)
    def test_matches_definition(self, letters):
        periods = period_set(letters)
        assert list(periods.periods) == naive_periods(letters)
        assert all(p % periods.gcd_value == 0 for p in periods)


class TestBorders:
    def test_example_string(self):
        assert borders_up_to(t(EXAMPLE_COVERED), 6) == [1, 3, 6]

    def test_whole_string_is_border(self):
        assert borders_up_to(t("ab"), 2) == [2]

    def test_unary(self):
        assert borders_up_to(t("aaaa"), 3) == [1, 2, 3]

    @pytest.mark.parametrize("q", [0, 17])
    def test_q_out_of_range(self, q):
        with pytest.raises(ParameterError):
            borders_up_to(t(EXAMPLE_COVERED), q)

    def test_failure_function(self):
        assert failure_function(t("abaab")) == [0, 0, 1, 1, 2]

    @given(texts)
    @settings(max_examples=200, deadline=None)
    def test_matches_prefix_suffix_comparison(self, letters):
        n = len(letters)
        expected = [b for b in range(1, n + 1) if letters[:b] == letters[n - b :]]
        assert borders_up_to(letters, n) == expected


# =============================================================================
# Occurrences and Covers Tests
# =============================================================================


class TestOccurrences:
    def test_example_string(self):
        found = occurrences(t("aba"), t(EXAMPLE_COVERED))
        assert found == OccurrenceList(pattern_length=3, positions=(1, 4, 6, 9, 11, 14))

    def test_absent_letter(self):
        assert occurrences(t("b"), t("aaa")).positions == ()

    def test_self_match(self):
        assert occurrences(t("abc"), t("abc")).positions == (1,)

    def test_pattern_longer_than_text_is_empty(self):
        assert len(occurrences(t("abcd"), t("abc"))) == 0

    @given(texts, texts)
    @settings(max_examples=200, deadline=None)
    def test_matches_sliding_window(self, c, s):
        expected = tuple(
            i + 1 for i in range(len(s) - len(c) + 1) if s[i : i + len(c)] == c
        )
        assert occurrences(c, s).positions == expected


class TestCovers:
    @pytest.mark.parametrize("cover", ["aba", "abaaba", "abaababaaba", EXAMPLE_COVERED])
    def test_example_covers(self, cover):
        assert is_cover(t(cover), t(EXAMPLE_COVERED)) is True

    def test_single_letter_does_not_cover(self):
        assert is_cover(t("a"), t(EXAMPLE_COVERED)) is False

    def test_pattern_longer_than_text(self):
        with pytest.raises(ParameterError):
            is_cover(t("abc"), t("ab"))

    @pytest.mark.parametrize(
        "text,expected",
        [(EXAMPLE_COVERED, [3, 6, 11, 16]), ("ab", [2]), ("aaaa", [1, 2, 3, 4])],
    )
    def test_all_covers(self, text, expected):
        assert all_covers(t(text)) == expected

    @pytest.mark.parametrize("text,expected", [(EXAMPLE_COVERED, 3), ("aaaa", 1), ("ab", 2)])
    def test_shortest_cover(self, text, expected):
        assert shortest_cover(t(text)) == expected

    def test_all_covers_of_empty_text(self):
        with pytest.raises(ParameterError):
            all_covers(())

    @given(texts)
    @settings(max_examples=200, deadline=None)
    def test_all_covers_matches_definition(self, letters):
        n = len(letters)
        expected = [c for c in range(1, n + 1) if naive_cover(letters[:c], letters)]
        assert all_covers(letters) == expected
        assert all_covers(letters)[-1] == n


# =============================================================================
# Seed Tests
# =============================================================================


class TestSeeds:
    @pytest.mark.parametrize("seed", ["aba", "abaab"])
    def test_example_seeds(self, seed):
        assert is_seed(t(seed), t(EXAMPLE_SEEDED)) is True
        assert is_seed_bruteforce(t(seed), t(EXAMPLE_SEEDED)) is True

    def test_no_occurrence_possible(self):
        assert is_seed(t("aba"), t("bbbbb")) is False

    def test_seed_need_not_occur_in_text(self):
        assert is_seed(t("ab"), t("ba")) is True

    def test_pattern_longer_than_text(self):
        with pytest.raises(ParameterError):
            is_seed(t("abab"), t("aba"))

    def test_every_cover_is_a_seed(self):
        assert is_seed(t("aba"), t(EXAMPLE_COVERED)) is True

    @given(
        st.lists(st.integers(min_value=1, max_value=2), min_size=1, max_size=4),
        st.lists(st.integers(min_value=1, max_value=2), min_size=4, max_size=12),
    )
    @settings(max_examples=300, deadline=None)
    def test_fast_check_matches_bruteforce(self, c, s):
        assert is_seed(c, s) == is_seed_bruteforce(c, s)

    @given(st.lists(st.integers(min_value=1, max_value=3), min_size=2, max_size=10))
    @settings(max_examples=200, deadline=None)
    def test_has_seed_up_to_matches_any_candidate(self, s):
        # a seed shorter than S uses only letters of S
        q = 3
        letters = sorted(set(s))
        expected = len(s) <= q or any(
            is_seed_bruteforce(c, s)
            for m in range(1, q + 1)
            for c in itertools.product(letters, repeat=m)
            if m <= len(s)
        )
        assert has_seed_up_to(s, q) == expected


class TestSeedStructure:
    def test_chained_occurrences_are_covered(self):
        rng = random.Random(11)
        for c in ((1, 2, 1), (1, 1, 2, 1, 1), (2, 1)):
            assert is_cover(c, chain_occurrences(c, rng, 6))

    def test_every_long_substring_of_covered_text_is_seeded(self):
        rng = random.Random(12)
        for c in ((1, 2, 1), (1, 2, 1, 1, 2), (1, 2)):
            s = chain_occurrences(c, rng, 5)
            for i in range(len(s)):
                for j in range(i + len(c), len(s) + 1):
                    assert is_seed(c, s[i:j]), (c, s, i, j)

    def test_overlapping_seeded_fragments_combine(self):
        rng = random.Random(13)
        combined = 0
        for _ in range(25):
            c = rng.choice(((1, 2, 1), (1, 2), (1, 1, 2)))
            s = list(chain_occurrences(c, rng, 4))
            if rng.random() < 0.5:
                s[rng.randrange(len(s))] = rng.randint(1, 2)
            s = tuple(s)
            m, n = len(c), len(s)
            # 0-based half-open S[i:j] and S[k:end] with i <= k, j <= end, overlap j - k >= 2m
            for i in range(n):
                for k in range(i, n):
                    for j in range(k + 2 * m, n + 1):
                        if not is_seed(c, s[i:j]):
                            continue
                        for end in range(j, n + 1):
                            if is_seed(c, s[k:end]):
                                combined += 1
                                assert is_seed(c, s[i:end]), (c, s, i, k, j, end)
        assert combined > 0


class TestHamming:
    def test_distance(self):
        assert hamming(t("abab"), t("bbbb")) == 2

    def test_unequal_lengths(self):
        with pytest.raises(ParameterError):
            hamming(t("ab"), t("abc"))

"""Weighted token edit distance and window search."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from transmark.matcher import (
    DEFAULT_THRESHOLD,
    WINDOW_SLACK,
    char_distance,
    locate_subsegment,
    sequence_distance,
    token_substitution_cost,
    window_cost,
)
from transmark.tokenizer import TokenSpan

import oracles

SYMBOLS = ("a", "b", "ab", "ba", "aab")
token_lists = st.lists(st.sampled_from(SYMBOLS), max_size=8)


def spans_of(words):
    """Token spans for a list of words joined by single spaces."""
    out = []
    pos = 0
    for word in words:
        out.append(TokenSpan(text=word, start=pos, end=pos + len(word)))
        pos += len(word) + 1
    return out


def locate(haystack, needle, threshold=DEFAULT_THRESHOLD):
    return locate_subsegment(spans_of(haystack), spans_of(needle),
                             threshold=threshold)


class TestCharDistance:
    @pytest.mark.parametrize("a,b,want", [
        ("kitten", "sitting", 3),
        ("", "", 0),
        ("", "abc", 3),
        ("abc", "", 3),
        ("same", "same", 0),
        ("flaw", "lawn", 2),
        ("Big", "big", 1),  # case-sensitive at this level
    ])
    def test_examples(self, a, b, want):
        assert char_distance(a, b) == want

    @given(a=st.text(max_size=8), b=st.text(max_size=8))
    @settings(max_examples=200)
    def test_matches_full_matrix_reference(self, a, b):
        assert char_distance(a, b) == oracles.char_distance_ref(a, b)


class TestSubstitutionCost:
    def test_casefolded_equal_tokens_cost_nothing(self):
        assert token_substitution_cost("Big", "bIG") == 0

    def test_normalized_by_longer_token(self):
        assert token_substitution_cost("bigg", "big") == Fraction(1, 4)

    def test_both_empty(self):
        assert token_substitution_cost("", "") == 0

    def test_against_empty(self):
        assert token_substitution_cost("ab", "") == 1

    @given(a=st.text(max_size=8), b=st.text(max_size=8))
    @settings(max_examples=200)
    def test_matches_reference_and_stays_in_range(self, a, b):
        got = token_substitution_cost(a, b)
        assert got == oracles.substitution_cost_ref(a, b)
        assert 0 <= got <= 1

    def test_casefold_can_change_length(self):
        # ß casefolds to "ss", so the normalizer must use folded lengths.
        assert token_substitution_cost("ß", "ss") == 0


class TestSequenceDistance:
    def test_equal_sequences(self):
        assert sequence_distance(["the", "big", "cat"],
                                 ["the", "big", "cat"]) == 0

    def test_single_near_token(self):
        assert sequence_distance(["bigg", "cat"],
                                 ["big", "cat"]) == Fraction(1, 4)

    def test_pure_insertions(self):
        assert sequence_distance([], ["a", "b"]) == 2

    @given(a=token_lists, b=token_lists)
    @settings(max_examples=150)
    def test_matches_recursive_reference(self, a, b):
        assert sequence_distance(a, b) == oracles.weighted_distance_ref(a, b)


class TestLocate:
    def test_exact_subsequence(self):
        got = locate(["the", "big", "cat"], ["big", "cat"])
        assert got.range == (1, 3)
        assert got.cost == 0

    def test_near_miss_within_threshold(self):
        got = locate(["the", "big", "cat"], ["bigg", "cat"], threshold=0.5)
        assert got.range == (1, 3)
        assert got.cost == 0.125

    def test_no_match_above_threshold(self):
        assert locate(["a", "b", "c"], ["x", "y"], threshold=0.2) is None

    def test_empty_haystack(self):
        assert locate([], ["a"], threshold=1.0) is None

    def test_empty_needle_rejected(self):
        with pytest.raises(ValueError):
            locate(["a"], [])

    @pytest.mark.parametrize("threshold", [-0.1, 1.1, 2])
    def test_threshold_out_of_range_rejected(self, threshold):
        with pytest.raises(ValueError):
            locate(["a"], ["a"], threshold=threshold)

    def test_tie_prefers_leftmost(self):
        got = locate(["x", "a", "a"], ["a"])
        assert got.range == (1, 2)

    def test_tie_prefers_shortest_window(self):
        # Both the length-1 and length-2 window at 0 cost exactly 1.
        got = locate(["x", "y"], ["q"], threshold=1.0)
        assert got.range == (0, 1)
        assert got.cost == 1.0

    def test_default_threshold_applies(self):
        assert locate(["x", "y"], ["q"]) is None

    @given(hay=token_lists, ndl=st.lists(st.sampled_from(SYMBOLS),
                                         min_size=1, max_size=4),
           threshold=st.sampled_from([0.0, 0.2, DEFAULT_THRESHOLD, 0.5, 1.0]))
    @settings(max_examples=400)
    def test_matches_exhaustive_window_reference(self, hay, ndl, threshold):
        got = locate(hay, ndl, threshold=threshold)
        want = oracles.best_window_ref(hay, ndl, threshold)
        if want is None:
            assert got is None
        else:
            start, end, cost = want
            assert got is not None
            assert got.range == (start, end)
            assert got.cost == float(cost)

    @given(hay=token_lists, ndl=st.lists(st.sampled_from(SYMBOLS),
                                         min_size=1, max_size=4))
    @settings(max_examples=200)
    def test_result_shape(self, hay, ndl):
        got = locate(hay, ndl, threshold=1.0)
        if len(hay) < max(1, len(ndl) - WINDOW_SLACK):
            # No admissible window even exists.
            assert got is None
            return
        assert got is not None
        assert 0 <= got.start < got.end <= len(hay)
        length = got.end - got.start
        assert max(1, len(ndl) - WINDOW_SLACK) <= length <= len(ndl) + WINDOW_SLACK
        assert 0 <= got.cost <= 1

    @given(words=st.lists(st.sampled_from(SYMBOLS), min_size=1, max_size=8),
           data=st.data())
    @settings(max_examples=200)
    def test_embedded_needle_found_at_leftmost_occurrence(self, words, data):
        i = data.draw(st.integers(0, len(words) - 1))
        j = data.draw(st.integers(i + 1, len(words)))
        needle = words[i:j]
        got = locate(words, needle)
        assert got is not None
        assert got.cost == 0
        first = next(k for k in range(len(words))
                     if words[k:k + len(needle)] == needle)
        assert got.range == (first, first + len(needle))


class TestWindowCost:
    def test_normalizes_by_longer_side(self):
        assert window_cost(["a"], ["a", "b", "c"]) == Fraction(2, 3)

    @given(a=token_lists, b=st.lists(st.sampled_from(SYMBOLS), min_size=1,
                                     max_size=6))
    @settings(max_examples=150)
    def test_range_and_identity(self, a, b):
        cost = window_cost(a, b)
        assert 0 <= cost <= 1
        if a == b:
            assert cost == 0

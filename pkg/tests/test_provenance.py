"""Unmodified-MT measurement and warning thresholds."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from transmark.docmodel import RichText
from transmark.drafts import ORIGIN_MT, ORIGIN_SCRATCH, ORIGIN_SOURCE, Draft, TranslationUnit
from transmark.provenance import (
    OVERALL,
    ProvenanceConfig,
    ProvenanceWarning,
    evaluate_draft,
    token_edit_distance,
    unmodified_ratio,
)

import oracles

token_lists = st.lists(st.sampled_from(["a", "b", "ab", "A"]), max_size=5)


def rt(text):
    return RichText(text=text, spans=())


def mt_unit(block, baseline, current):
    return TranslationUnit(source_block_id=block, origin=ORIGIN_MT,
                           current=rt(current), mt_provider="mirror",
                           mt_baseline=rt(baseline))


def draft_of(*units):
    return Draft(id="d1", source_lang="es", target_lang="ca",
                 source_title="Berlín", target_title="Berlín",
                 units=tuple(units))


WORDS = ("uno dos tres cuatro cinco seis siete ocho nueve diez "
         "once doce trece catorce quince dieciséis diecisiete "
         "dieciocho diecinueve veinte").split()


def text_of(n):
    return " ".join(WORDS[:n])


def edited(n, changed):
    """n tokens with the first ``changed`` of them replaced."""
    return " ".join([f"x{i}" for i in range(changed)] + WORDS[changed:n])


class TestTokenEditDistance:
    @pytest.mark.parametrize("a,b,want", [
        ([], [], 0),
        (["a"], [], 1),
        ([], ["a", "b"], 2),
        (["a", "b", "c"], ["a", "b", "c"], 0),
        (["a", "b", "c", "d"], ["a", "b", "x", "d"], 1),
        (["A"], ["a"], 1),  # case matters here
        (["the", "big", "cat"], ["big", "cat"], 1),
    ])
    def test_examples(self, a, b, want):
        assert token_edit_distance(a, b) == want

    @given(a=token_lists, b=token_lists)
    @settings(max_examples=150)
    def test_matches_naive_recursion(self, a, b):
        assert token_edit_distance(a, b) == oracles.naive_token_distance(a, b)

    @given(a=token_lists, b=token_lists)
    @settings(max_examples=150)
    def test_metric_shape(self, a, b):
        d = token_edit_distance(a, b)
        assert d == token_edit_distance(b, a)
        assert 0 <= d <= max(len(a), len(b))
        assert (d == 0) == (a == b)


class TestUnmodifiedRatio:
    def test_single_substitution_in_four(self):
        assert unmodified_ratio(rt("a b c d"), rt("a b x d")) == 0.75

    def test_untouched_text(self):
        assert unmodified_ratio(rt("hola món"), rt("hola món")) == 1.0

    def test_fully_rewritten(self):
        assert unmodified_ratio(rt("a b"), rt("x y")) == 0.0

    def test_both_empty(self):
        assert unmodified_ratio(rt(""), rt("")) == 1.0

    def test_one_side_empty(self):
        assert unmodified_ratio(rt("a b"), rt("")) == 0.0

    def test_markup_is_ignored_tokens_decide(self):
        from transmark.docmodel import Span, Strong
        a = RichText(text="a b", spans=(Span(start=0, end=1,
                                             annotation=Strong()),))
        assert unmodified_ratio(a, rt("a b")) == 1.0

    @given(a=token_lists, b=token_lists)
    @settings(max_examples=100)
    def test_stays_in_unit_range(self, a, b):
        got = unmodified_ratio(rt(" ".join(a)), rt(" ".join(b)))
        assert 0.0 <= got <= 1.0


class TestEvaluateDraft:
    def test_untouched_long_unit_warns_twice(self):
        report = evaluate_draft(draft_of(mt_unit("cxb0", text_of(12),
                                                 text_of(12))))
        assert report.per_unit == {"cxb0": 1.0}
        assert report.overall == 1.0
        assert [w.subject for w in report.warnings] == ["cxb0", OVERALL]
        assert report.warnings[0] == ProvenanceWarning(
            subject="cxb0", ratio=1.0, threshold=0.85)
        assert report.warnings[1] == ProvenanceWarning(
            subject=OVERALL, ratio=1.0, threshold=0.75)

    def test_half_rewritten_unit_warns_nowhere(self):
        report = evaluate_draft(draft_of(mt_unit("cxb0", text_of(12),
                                                 edited(12, 6))))
        assert report.per_unit == {"cxb0": 0.5}
        assert report.overall == 0.5
        assert report.warnings == ()

    def test_weighted_overall_with_one_noisy_unit(self):
        report = evaluate_draft(draft_of(
            mt_unit("cxb0", text_of(20), text_of(20)),
            mt_unit("cxb1", text_of(20), edited(20, 12))))
        assert report.per_unit == {"cxb0": 1.0, "cxb1": 0.4}
        assert report.overall == pytest.approx(0.7)
        assert [w.subject for w in report.warnings] == ["cxb0"]

    def test_short_unit_skips_the_unit_warning(self):
        report = evaluate_draft(draft_of(mt_unit("cxb0", text_of(9),
                                                 text_of(9))))
        assert report.per_unit == {"cxb0": 1.0}
        assert [w.subject for w in report.warnings] == [OVERALL]

    def test_ten_tokens_is_enough_to_warn(self):
        report = evaluate_draft(draft_of(mt_unit("cxb0", text_of(10),
                                                 text_of(10))))
        assert [w.subject for w in report.warnings] == ["cxb0", OVERALL]

    def test_non_mt_units_never_contribute(self):
        units = (
            TranslationUnit(source_block_id="cxb0", origin=ORIGIN_SOURCE,
                            current=rt(text_of(12))),
            TranslationUnit(source_block_id="cxb1", origin=ORIGIN_SCRATCH,
                            current=rt(text_of(12))),
        )
        report = evaluate_draft(draft_of(*units))
        assert report.per_unit == {}
        assert report.overall == 0.0
        assert report.warnings == ()

    def test_mixed_origins_only_count_mt(self):
        report = evaluate_draft(draft_of(
            TranslationUnit(source_block_id="cxb0", origin=ORIGIN_SCRATCH,
                            current=rt(text_of(15))),
            mt_unit("cxb1", text_of(12), edited(12, 6))))
        assert report.per_unit == {"cxb1": 0.5}
        assert report.overall == 0.5

    def test_empty_draft(self):
        report = evaluate_draft(draft_of())
        assert report == type(report)(per_unit={}, overall=0.0, warnings=())

    def test_custom_thresholds(self):
        cfg = ProvenanceConfig(unit_threshold=0.4, overall_threshold=1.0,
                               min_unit_tokens=0)
        report = evaluate_draft(
            draft_of(mt_unit("cxb0", text_of(4), edited(4, 2))), cfg)
        assert [w.subject for w in report.warnings] == ["cxb0"]
        assert report.warnings[0].threshold == 0.4

    def test_growth_beyond_baseline_counts_as_edits(self):
        report = evaluate_draft(draft_of(
            mt_unit("cxb0", text_of(5), text_of(20))))
        assert report.per_unit == {"cxb0": 0.25}


class TestConfigValidation:
    @pytest.mark.parametrize("kwargs", [
        {"unit_threshold": 1.5},
        {"unit_threshold": -0.1},
        {"overall_threshold": 2.0},
        {"min_unit_tokens": -1},
    ])
    def test_bad_values_rejected(self, kwargs):
        with pytest.raises(ValueError):
            ProvenanceConfig(**kwargs)

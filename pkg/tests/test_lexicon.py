"""Normalization, stem matching, stop words, and chart-label expansion."""

from __future__ import annotations

import string

import pytest
from hypothesis import given
from hypothesis import strategies as st

from slidecov.lexicon import (
    Lexicon,
    default_lexicon,
    expand_labels,
    load_stop_words,
    normalize_token,
    normalize_words,
    split_words,
    stem,
    stems_match,
)

LEX = default_lexicon()


class TestNormalizeToken:
    @pytest.mark.parametrize(
        "raw,expected",
        [
            ("Review,", "review"),
            ("circle", "circle"),
            ("(Colors)", "colors"),
            ("—dash—", "dash"),
            ("CAFÉ", "café"),
            ("42nd", "42nd"),
            ("2021.", "2021"),
            ("state-of-the-art", "state-of-the-art"),
        ],
    )
    def test_kept_tokens(self, raw, expected):
        assert normalize_token(raw, LEX) == expected

    @pytest.mark.parametrize("raw", ["the", "The", "a", "AN", "and", "...", "-", "", "don’t", "Its"])
    def test_dropped_tokens(self, raw):
        assert normalize_token(raw, LEX) is None

    def test_curly_apostrophe_folds_to_ascii(self):
        assert normalize_token("isn’t!", LEX) == normalize_token("isn't", LEX)

    def test_nfkc_compatibility_fold(self):
        # fullwidth letters normalize onto their ascii forms
        assert normalize_token("Ｒｅｖｉｅｗ", LEX) == "review"

    def test_number_words_off_by_default(self):
        lex = Lexicon(stop_words=frozenset({"the"}))
        assert normalize_token("three", lex) == "three"

    def test_number_words_mapped_when_enabled(self):
        lex = Lexicon(stop_words=frozenset({"the"}), match_number_words=True)
        assert normalize_token("three", lex) == "3"
        assert normalize_token("Twenty,", lex) == "20"

    @given(st.text(alphabet=string.printable, max_size=20))
    def test_idempotent(self, raw):
        first = normalize_token(raw, LEX)
        if first is not None:
            assert normalize_token(first, LEX) == first


class TestStopWords:
    def test_default_list_shape(self):
        sw = load_stop_words()
        assert len(sw) > 300
        assert {"the", "a", "an", "and", "of", "don't"} <= sw
        assert {"review", "circle", "points", "sales"}.isdisjoint(sw)

    def test_custom_list_with_comments(self, tmp_path):
        p = tmp_path / "stops.txt"
        p.write_text("# header\nfoo\nBAR  # trailing\n\n")
        assert load_stop_words(str(p)) == frozenset({"foo", "bar"})

    def test_empty_stop_list_rejected(self):
        with pytest.raises(ValueError):
            Lexicon(stop_words=frozenset())

    def test_min_prefix_len_floor(self):
        with pytest.raises(ValueError):
            Lexicon(stop_words=frozenset({"the"}), min_prefix_len=1)


class TestStemsMatch:
    def test_family_matches_pairwise(self):
        stems = [stem(w) for w in ("application", "applying", "app")]
        for a in stems:
            for b in stems:
                assert stems_match(a, b, LEX)

    @pytest.mark.parametrize(
        "a,b,expected",
        [
            ("review", "review", True),
            ("cat", "car", False),
            ("app", "applic", True),
            ("ap", "applic", False),  # shared prefix below the floor
            ("x", "x", True),
            ("chart", "charter", True),
        ],
    )
    def test_cases(self, a, b, expected):
        assert stems_match(a, b, LEX) is expected
        assert stems_match(b, a, LEX) is expected

    def test_prefix_floor_configurable(self):
        wide = Lexicon(stop_words=frozenset({"the"}), min_prefix_len=2)
        assert stems_match("ap", "applic", wide)
        narrow = Lexicon(stop_words=frozenset({"the"}), min_prefix_len=6)
        assert not stems_match("app", "applic", narrow)
        assert stems_match("applic", "applic", narrow)  # equality always matches

    @given(
        st.text(alphabet=string.ascii_lowercase, min_size=1, max_size=10),
        st.text(alphabet=string.ascii_lowercase, min_size=1, max_size=10),
    )
    def test_symmetric_and_reflexive(self, a, b):
        assert stems_match(a, a, LEX)
        assert stems_match(a, b, LEX) == stems_match(b, a, LEX)


class TestExpandLabels:
    def test_trigger_unions_chart_vocabulary(self):
        out = expand_labels(["plot"], LEX)
        assert out[0] == "plot"
        assert set(LEX.chart_expansion_words) <= set(out)

    def test_no_trigger_is_identity(self):
        assert expand_labels(["dog"], LEX) == ["dog"]
        assert expand_labels([], LEX) == []

    def test_union_deduplicates_keeping_input_order(self):
        out = expand_labels(["graph", "dog"], LEX)
        assert out[:2] == ["graph", "dog"]
        assert len(out) == len(set(out))
        assert set(LEX.chart_expansion_words) <= set(out)

    def test_trigger_via_stem_not_exact_string(self):
        out = expand_labels(["charts"], LEX)
        assert set(LEX.chart_expansion_words) <= set(out)

    def test_multiword_label_can_trigger(self):
        out = expand_labels(["bar chart"], LEX)
        assert set(LEX.chart_expansion_words) <= set(out)

    @given(st.lists(st.sampled_from(["plot", "dog", "graph", "sales", "line"]), max_size=4))
    def test_never_removes_input(self, labels):
        out = expand_labels(labels, LEX)
        assert set(labels) <= set(out) | set(labels)  # dedup may collapse repeats
        for label in labels:
            assert label in out


class TestWordHelpers:
    def test_split_words_is_whitespace_split(self):
        assert split_words("  a\tb\nc ") == ["a", "b", "c"]

    def test_normalize_words_drops_stops_preserves_order(self):
        assert normalize_words("We will Review the points, and paths!", LEX) == [
            "review",
            "points",
            "paths",
        ]

    def test_normalize_words_golden_finals_plus_interim(self):
        # finals ["we will review"] + interim "points and"
        assert normalize_words("we will review points and", LEX) == ["review", "points"]

"""Read-order ranking: row-major sort, tie-breaks, synthetic token boxes."""

from __future__ import annotations

from hypothesis import given

from conftest import deck_of, decks, image_el, text_el, video_el
from slidecov.lexicon import default_lexicon, normalize_token
from slidecov.readorder import LABEL_TOKEN, OCR_TOKEN, TEXT_TOKEN, compute_read_order

LEX = default_lexicon()


def uids_in_rank_order(slide):
    units = compute_read_order(slide, LEX)
    assert [u.rank for u in units] == list(range(len(units)))
    return [u.uid for u in units]


class TestFixtureOrder:
    def test_demo_slide_rank_golden(self, brushes_deck):
        # hand-derived: row-major y then x; "and" is a stop word, so the
        # colors token keeps its textual index 4
        assert uids_in_rank_order(brushes_deck.slides[0]) == [
            "title:t:0", "title:t:1", "title:t:2", "title:t:3",
            "circle_head:t:0", "circle_head:t:1",
            "brush_img:l:0", "brush_img:l:1",
            "circle_body:t:0", "circle_body:t:1", "circle_body:t:2", "circle_body:t:4",
            "stitch_head:t:0", "stitch_head:t:1",
            "stitch_body:t:0", "stitch_body:t:1", "stitch_body:t:2", "stitch_body:t:4",
        ]

    def test_first_review_ranks_before_second(self, brushes_deck):
        units = compute_read_order(brushes_deck.slides[0], LEX)
        by_uid = {u.uid: u for u in units}
        assert by_uid["circle_body:t:0"].rank < by_uid["stitch_body:t:0"].rank


class TestSortRules:
    def test_y_major(self):
        deck = deck_of([text_el("low", "valley", y=0.6), text_el("high", "summit", y=0.1)])
        assert uids_in_rank_order(deck.slides[0]) == ["high:t:0", "low:t:0"]

    def test_x_breaks_same_row(self):
        deck = deck_of([
            text_el("right", "beta", y=0.2, x=0.6, w=0.3),
            text_el("left", "alpha", y=0.2, x=0.1, w=0.3),
        ])
        assert uids_in_rank_order(deck.slides[0]) == ["left:t:0", "right:t:0"]

    def test_identical_bboxes_order_by_element_id(self):
        deck = deck_of([
            text_el("b", "bravo", y=0.2, x=0.2),
            text_el("a", "alpha", y=0.2, x=0.2),
        ])
        assert uids_in_rank_order(deck.slides[0]) == ["a:t:0", "b:t:0"]

    def test_labels_sort_at_image_origin_before_its_ocr(self):
        deck = deck_of([
            image_el("img", x=0.1, y=0.1, labels=["wheel"], ocr=[("sales", 0.1, 0.1)]),
        ])
        assert uids_in_rank_order(deck.slides[0]) == ["img:l:0", "img:o:0"]

    def test_ocr_tokens_sort_by_their_own_boxes(self):
        deck = deck_of([
            image_el("img", x=0.1, y=0.1, w=0.5, h=0.5,
                     ocr=[("beta", 0.4, 0.3), ("alpha", 0.15, 0.3), ("gamma", 0.2, 0.5)]),
        ])
        assert uids_in_rank_order(deck.slides[0]) == ["img:o:1", "img:o:0", "img:o:2"]


class TestSyntheticBoxes:
    def test_newline_rows_rank_top_down(self):
        deck = deck_of([text_el("t", "alpha beta\ngamma", y=0.1, h=0.2)])
        assert uids_in_rank_order(deck.slides[0]) == ["t:t:0", "t:t:1", "t:t:2"]

    def test_interleaves_with_element_between_rows(self):
        # a tall two-row text block and a one-liner sitting between the rows
        deck = deck_of([
            text_el("tall", "alpha\nomega", y=0.1, h=0.4),
            text_el("mid", "beta", y=0.25, h=0.05),
        ])
        assert uids_in_rank_order(deck.slides[0]) == ["tall:t:0", "mid:t:0", "tall:t:1"]

    def test_explicit_token_boxes_override_textual_order(self):
        el = text_el("t", "red blue", y=0.1)
        el["token_boxes"] = [
            {"x": 0.5, "y": 0.1, "w": 0.1, "h": 0.05},
            {"x": 0.1, "y": 0.1, "w": 0.1, "h": 0.05},
        ]
        deck = deck_of([el])
        assert uids_in_rank_order(deck.slides[0]) == ["t:t:1", "t:t:0"]


class TestUnitContent:
    def test_stop_words_never_become_units(self):
        deck = deck_of([text_el("t", "the and of")])
        assert compute_read_order(deck.slides[0], LEX) == []

    def test_decorative_elements_skipped(self):
        deck = deck_of([
            text_el("t", "alpha", decorative=True),
            image_el("i", labels=["dog"], decorative=True),
        ])
        assert compute_read_order(deck.slides[0], LEX) == []

    def test_video_has_no_units(self):
        deck = deck_of([video_el("v")])
        assert compute_read_order(deck.slides[0], LEX) == []

    def test_empty_slide(self):
        deck = deck_of([])
        assert compute_read_order(deck.slides[0], LEX) == []

    def test_alt_text_replaces_labels(self):
        deck = deck_of([image_el("i", labels=["drawing"], alt_text="colorful wheel")])
        units = compute_read_order(deck.slides[0], LEX)
        assert [u.raw for u in units] == ["colorful", "wheel"]
        assert all(u.unit_kind == LABEL_TOKEN for u in units)

    def test_multiword_label_splits_into_units(self):
        deck = deck_of([image_el("i", labels=["red wheel"])])
        units = compute_read_order(deck.slides[0], LEX)
        assert [u.raw for u in units] == ["red", "wheel"]

    def test_chart_label_expansion_creates_units(self):
        deck = deck_of([image_el("i", labels=["chart"])])
        raws = {u.raw for u in compute_read_order(deck.slides[0], LEX)}
        assert set(LEX.chart_expansion_words) <= raws

    def test_countable_flags(self):
        deck = deck_of([
            text_el("t", "alpha", y=0.1),
            image_el("i", y=0.3, labels=["dog"], ocr=[("sales", 0.12, 0.32)]),
        ])
        units = compute_read_order(deck.slides[0], LEX)
        flags = {u.uid: (u.unit_kind, u.countable) for u in units}
        assert flags["t:t:0"] == (TEXT_TOKEN, True)
        assert flags["i:o:0"] == (OCR_TOKEN, True)
        assert flags["i:l:0"] == (LABEL_TOKEN, False)

    def test_label_bbox_is_image_bbox_and_token_index_none(self):
        deck = deck_of([image_el("i", x=0.2, y=0.3, labels=["dog"])])
        (unit,) = compute_read_order(deck.slides[0], LEX)
        assert unit.bbox == deck.slides[0].elements[0].bbox
        assert unit.token_index is None


class TestRankTotality:
    @given(decks(max_slides=2, max_elements=5))
    def test_ranks_are_exactly_0_to_n(self, deck):
        for slide in deck.slides:
            units = compute_read_order(slide, LEX)
            assert sorted(u.rank for u in units) == list(range(len(units)))
            assert len({u.uid for u in units}) == len(units)
            for u in units:
                # raw survives normalization by construction
                assert normalize_token(u.raw, LEX) is not None

    @given(decks(max_slides=1, max_elements=5))
    def test_order_is_deterministic(self, deck):
        a = compute_read_order(deck.slides[0], LEX)
        b = compute_read_order(deck.slides[0], LEX)
        assert a == b

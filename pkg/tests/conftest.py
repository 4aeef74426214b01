"""Shared fixtures, deck factories, brute-force oracles, and strategies."""

from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import strategies as st

from slidecov.engine import TranscriptEvent
from slidecov.events_io import load_transcript
from slidecov.lexicon import default_lexicon, stem, stems_match
from slidecov.model import Deck, deck_from_dict, load_deck
from slidecov.readorder import LABEL_TOKEN, MatchUnit

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def lexicon():
    return default_lexicon()


@pytest.fixture(scope="session")
def brushes_deck() -> Deck:
    return load_deck(str(FIXTURES / "brushes_deck.json"))


@pytest.fixture(scope="session")
def brushes_events() -> list[TranscriptEvent]:
    return load_transcript(str(FIXTURES / "brushes_transcript.jsonl"))


# --- deck construction helpers -------------------------------------------

def bbox(x=0.1, y=0.1, w=0.3, h=0.1) -> dict:
    return {"x": x, "y": y, "w": w, "h": h}


def text_el(eid: str, text: str, *, x=0.1, y=0.1, w=0.5, h=0.08, **extra) -> dict:
    return {"id": eid, "kind": "text", "bbox": bbox(x, y, w, h), "text": text, **extra}


def image_el(eid: str, *, x=0.1, y=0.1, w=0.3, h=0.2, labels=None, ocr=None, **extra) -> dict:
    el: dict = {"id": eid, "kind": "image", "bbox": bbox(x, y, w, h)}
    if labels is not None:
        el["labels"] = labels
    if ocr is not None:
        # ocr: list of (text, x, y) triples in slide coordinates
        el["ocr_words"] = [
            {"text": t, "bbox": bbox(ox, oy, 0.04, 0.03)} for (t, ox, oy) in ocr
        ]
    el.update(extra)
    return el


def video_el(eid: str, *, x=0.6, y=0.5, w=0.3, h=0.2, **extra) -> dict:
    return {"id": eid, "kind": "video", "bbox": bbox(x, y, w, h), **extra}


def deck_of(*slide_elements: list[dict], title: str = "Deck") -> Deck:
    slides = [{"index": i, "elements": els} for i, els in enumerate(slide_elements)]
    return deck_from_dict({"title": title, "slides": slides})


# --- transcript event shorthand -------------------------------------------

def interim(text: str, t: int = 0) -> TranscriptEvent:
    return TranscriptEvent(type="interim", text=text, t_ms=t)


def final(text: str, t: int = 0) -> TranscriptEvent:
    return TranscriptEvent(type="final", text=text, t_ms=t)


def slide_change(slide: int, t: int = 0) -> TranscriptEvent:
    return TranscriptEvent(type="slide_change", slide=slide, t_ms=t)


def end(t: int = 0) -> TranscriptEvent:
    return TranscriptEvent(type="end", t_ms=t)


# --- brute-force oracles ---------------------------------------------------

def oracle_align(units, spoken, lexicon) -> frozenset[str]:
    """Naive O(n*m) simulation of the cursor rule, sharing no engine code."""
    ordered = sorted(units, key=lambda u: u.rank)
    matched: set[str] = set()
    cursor = 0
    for word in spoken:
        word_stem = stem(word)
        at_or_after = None
        anywhere = None
        for u in ordered:
            if u.uid in matched or not stems_match(word_stem, u.stem, lexicon):
                continue
            if anywhere is None:
                anywhere = u
            if u.rank >= cursor:
                at_or_after = u
                break
        pick = at_or_after if at_or_after is not None else anywhere
        if pick is not None:
            matched.add(pick.uid)
            cursor = pick.rank + 1
    return frozenset(matched)


def oracle_word_coverage(units: list[MatchUnit], matched: frozenset[str]) -> float:
    countable = [u for u in units if u.unit_kind != LABEL_TOKEN]
    if not countable:
        return 1.0
    return sum(1 for u in countable if u.uid in matched) / len(countable)


# --- hypothesis strategies -------------------------------------------------

# Deliberately collision-heavy: stem-prefix relatives, stop words, digits.
VOCAB = [
    "review", "reviews", "points", "paths", "colors", "colorful", "circle",
    "brush", "brushes", "stitches", "application", "applying", "app", "apple",
    "appetite", "chart", "charts", "graph", "plot", "sales", "data", "growth",
    "alpha", "beta", "gamma", "delta", "2021", "2022", "the", "and", "of",
    "naïve", "don't",
]

_vocab_word = st.sampled_from(VOCAB)
_phrase = st.lists(_vocab_word, min_size=0, max_size=6).map(" ".join)


@st.composite
def deck_dicts(draw, max_slides: int = 2, max_elements: int = 4) -> dict:
    n_slides = draw(st.integers(1, max_slides))
    slides = []
    eid = 0
    for i in range(n_slides):
        elements = []
        for _ in range(draw(st.integers(0, max_elements))):
            kind = draw(st.sampled_from(["text", "text", "image", "video"]))
            x = draw(st.integers(0, 60)) / 100
            y = draw(st.integers(0, 80)) / 100
            if kind == "text":
                words = draw(st.lists(_vocab_word, min_size=1, max_size=6))
                elements.append(text_el(f"e{eid}", " ".join(words), x=x, y=y, w=0.3))
            elif kind == "image":
                labels = draw(st.lists(_vocab_word, max_size=2))
                ocr_words = draw(st.lists(_vocab_word, max_size=3))
                ocr = [
                    (w, min(x + 0.05 * j, 0.9), min(y + 0.02, 0.95))
                    for j, w in enumerate(ocr_words)
                ]
                elements.append(
                    image_el(f"e{eid}", x=x, y=y, labels=labels or None, ocr=ocr or None)
                )
            else:
                elements.append(video_el(f"e{eid}", x=x, y=y))
            eid += 1
        slides.append({"index": i, "elements": elements})
    return {"title": "fuzz deck", "slides": slides}


def decks(**kwargs) -> st.SearchStrategy[Deck]:
    return deck_dicts(**kwargs).map(deck_from_dict)


@st.composite
def event_streams(draw, n_slides: int, max_events: int = 10) -> list[TranscriptEvent]:
    """Random speech/slide_change mix with oscillating interims, then end."""
    events = []
    t = 0
    for _ in range(draw(st.integers(1, max_events))):
        t += draw(st.integers(0, 400))
        kind = draw(st.sampled_from(["interim", "interim", "final", "slide_change"]))
        if kind == "slide_change":
            events.append(slide_change(draw(st.integers(0, n_slides - 1)), t))
        else:
            text = draw(_phrase)
            events.append(interim(text, t) if kind == "interim" else final(text, t))
    events.append(end(t + 10))
    return events


@st.composite
def deck_and_stream(draw, max_slides: int = 2, max_elements: int = 4,
                    max_events: int = 10):
    deck = draw(decks(max_slides=max_slides, max_elements=max_elements))
    events = draw(event_streams(len(deck.slides), max_events=max_events))
    return deck, events

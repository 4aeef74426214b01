"""Streaming alignment of spoken words to slide match units.

The matcher is an online fold over the spoken word sequence: a cursor walks
the slide's read order, each spoken word claims the first unclaimed unit at
or after the cursor whose stem matches (falling back to the earliest
unclaimed match anywhere), and the cursor jumps past the claimed unit. This
deterministic cursor rule is what makes a repeated slide word resolve to
the instance the presenter most plausibly meant.

Transcript streaming follows two rules: every interim result triggers a
full recompute of the slide's spoken sequence (finals + latest interim),
and matches are unioned with everything "ever spoken" on that slide, so a
revised transcription can never un-highlight a word.

State values are immutable; events are applied strictly in arrival order by
a single writer. Snapshots taken at event boundaries are safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Iterable

from .errors import SessionEndedError, SlideRangeError
from .lexicon import Lexicon, normalize_words, stem, stems_match
from .model import Deck, VIDEO
from .readorder import LABEL_TOKEN, OCR_TOKEN, TEXT_TOKEN, MatchUnit, compute_read_order

INTERIM = "interim"
FINAL = "final"
SLIDE_CHANGE = "slide_change"
END = "end"

HIGHLIGHT = "highlight"
IMAGE_HIGHLIGHT = "image_highlight"
VIDEO_REMINDER = "video_reminder"
SLIDE_SUMMARY = "slide_summary"
SESSION_END = "session_end"


@dataclass(frozen=True)
class TranscriptEvent:
    """One wire event: a speech fragment, a slide change, or end of session."""

    type: str
    text: str = ""
    slide: int | None = None
    t_ms: int = 0


@dataclass(frozen=True)
class OutputEvent:
    """Feedback emitted toward viewers; also the unit of the output stream."""

    type: str
    t_ms: int = 0
    slide: int | None = None
    element_id: str | None = None
    token_index: int | None = None
    word_coverage: float | None = None


@dataclass(frozen=True)
class SlideMatchState:
    """Per-slide transcript buffers and the ever-spoken match record."""

    finals: tuple[str, ...] = ()
    latest_interim: str = ""
    matched_units: frozenset[str] = frozenset()
    covered_elements: frozenset[str] = frozenset()
    cursor: int = 0


class DeckIndex:
    """Read-order units per slide plus a memo of stem -> candidate ranks.

    Derived entirely from (deck, lexicon); the memo is a cache, not state,
    so sharing one index across snapshots keeps everything deterministic.
    """

    def __init__(self, deck: Deck, lexicon: Lexicon):
        self.deck = deck
        self.lexicon = lexicon
        self.units: tuple[tuple[MatchUnit, ...], ...] = tuple(
            tuple(compute_read_order(slide, lexicon)) for slide in deck.slides
        )
        self._candidates: list[dict[str, tuple[int, ...]]] = [{} for _ in deck.slides]

    def candidate_ranks(self, slide: int, spoken_stem: str) -> tuple[int, ...]:
        memo = self._candidates[slide]
        ranks = memo.get(spoken_stem)
        if ranks is None:
            ranks = tuple(
                u.rank for u in self.units[slide]
                if stems_match(u.stem, spoken_stem, self.lexicon)
            )
            memo[spoken_stem] = ranks
        return ranks


@dataclass(frozen=True)
class SessionState:
    """Whole-session match state; one active slide, single writer."""

    deck: Deck
    lexicon: Lexicon
    index: DeckIndex = field(compare=False, repr=False, default=None)  # type: ignore[assignment]
    slides: tuple[SlideMatchState, ...] = ()
    active_slide: int = 0
    ended: bool = False
    last_t_ms: int = 0


def _align_core(
    spoken: Iterable[str],
    candidate_ranks: Callable[[str], tuple[int, ...]],
    by_rank: dict[int, MatchUnit],
) -> tuple[frozenset[str], int]:
    cursor = 0
    matched_ranks: set[int] = set()
    for word in spoken:
        ranks = candidate_ranks(stem(word))
        chosen = None
        fallback = None
        for r in ranks:  # ascending
            if r in matched_ranks:
                continue
            if fallback is None:
                fallback = r
            if r >= cursor:
                chosen = r
                break
        if chosen is None:
            chosen = fallback
        if chosen is None:
            continue
        matched_ranks.add(chosen)
        cursor = chosen + 1
    return frozenset(by_rank[r].uid for r in matched_ranks), cursor


def align_sequence(
    units: list[MatchUnit] | tuple[MatchUnit, ...],
    spoken: list[str],
    lexicon: Lexicon,
) -> frozenset[str]:
    """Match one spoken sequence against one slide's units (pure).

    ``spoken`` must already be normalized (stop words removed); ``units``
    must come from compute_read_order. Returns the matched unit uids.
    """
    ordered = sorted(units, key=lambda u: u.rank)
    memo: dict[str, tuple[int, ...]] = {}

    def candidates(spoken_stem: str) -> tuple[int, ...]:
        ranks = memo.get(spoken_stem)
        if ranks is None:
            ranks = tuple(u.rank for u in ordered if stems_match(u.stem, spoken_stem, lexicon))
            memo[spoken_stem] = ranks
        return ranks

    matched, _ = _align_core(spoken, candidates, {u.rank: u for u in ordered})
    return matched


def covered_element_ids(units: Iterable[MatchUnit], matched: frozenset[str]) -> frozenset[str]:
    """Images whose bounding box counts as covered: any label or OCR hit."""
    covered = set()
    for u in units:
        if u.uid in matched and u.unit_kind in (LABEL_TOKEN, OCR_TOKEN):
            covered.add(u.element_id)
    return frozenset(covered)


def word_coverage(units: Iterable[MatchUnit], matched: frozenset[str]) -> float:
    """Matched countable units over total countable units; 1.0 when empty."""
    total = 0
    hit = 0
    for u in units:
        if not u.countable:
            continue
        total += 1
        if u.uid in matched:
            hit += 1
    return hit / total if total else 1.0


def reconcile_transcript(
    state: SlideMatchState, event: TranscriptEvent, lexicon: Lexicon
) -> tuple[SlideMatchState, list[str]]:
    """Fold a speech fragment into the slide buffers and return the full
    normalized spoken sequence for the slide.

    Finals append and clear the pending interim; an interim replaces the
    previous interim. The sequence is always recomputed from scratch, so a
    revised interim simply vanishes from the result.
    """
    if event.type == FINAL:
        state = replace(state, finals=state.finals + (event.text,), latest_interim="")
    elif event.type == INTERIM:
        state = replace(state, latest_interim=event.text)
    else:
        raise ValueError(f"not a speech event: {event.type}")
    text = " ".join(state.finals + ((state.latest_interim,) if state.latest_interim else ()))
    return state, normalize_words(text, lexicon)


def slide_transcript(state: SlideMatchState) -> str:
    """Raw transcript text for a slide, trailing interim included."""
    parts = list(state.finals)
    if state.latest_interim:
        parts.append(state.latest_interim)
    return " ".join(p.strip() for p in parts if p.strip())


def _video_reminders(deck: Deck, slide: int, t_ms: int) -> list[OutputEvent]:
    return [
        OutputEvent(type=VIDEO_REMINDER, t_ms=t_ms, slide=slide, element_id=el.id)
        for el in deck.slides[slide].elements
        if el.kind == VIDEO and not el.decorative
    ]


def _slide_summary(index: DeckIndex, state: SessionState, slide: int, t_ms: int) -> OutputEvent:
    cov = word_coverage(index.units[slide], state.slides[slide].matched_units)
    return OutputEvent(type=SLIDE_SUMMARY, t_ms=t_ms, slide=slide, word_coverage=cov)


def new_session(deck: Deck, lexicon: Lexicon) -> tuple[SessionState, list[OutputEvent]]:
    """Fresh session on slide 0. The returned events are the video
    reminders for slide 0, if any."""
    index = DeckIndex(deck, lexicon)
    state = SessionState(
        deck=deck,
        lexicon=lexicon,
        index=index,
        slides=tuple(SlideMatchState() for _ in deck.slides),
        active_slide=0,
        ended=False,
    )
    return state, _video_reminders(deck, 0, 0)


def _apply_speech(state: SessionState, event: TranscriptEvent) -> tuple[SessionState, list[OutputEvent]]:
    slide = state.active_slide
    index = state.index
    units = index.units[slide]
    slide_state, spoken = reconcile_transcript(state.slides[slide], event, state.lexicon)

    by_rank = {u.rank: u for u in units}
    pass_matched, cursor = _align_core(
        spoken, lambda s: index.candidate_ranks(slide, s), by_rank
    )
    merged = slide_state.matched_units | pass_matched
    newly = merged - slide_state.matched_units
    covered = covered_element_ids(units, merged)
    newly_covered = covered - slide_state.covered_elements

    by_uid = {u.uid: u for u in units}
    outputs: list[tuple[tuple[int, int], OutputEvent]] = []
    for uid in newly:
        u = by_uid[uid]
        if u.unit_kind == LABEL_TOKEN:
            continue
        outputs.append((
            (u.rank, 0),
            OutputEvent(type=HIGHLIGHT, t_ms=event.t_ms, slide=slide,
                        element_id=u.element_id, token_index=u.token_index),
        ))
    for element_id in newly_covered:
        trigger_rank = min(
            u.rank for u in units
            if u.element_id == element_id and u.uid in newly and u.unit_kind != TEXT_TOKEN
        )
        outputs.append((
            (trigger_rank, 1),
            OutputEvent(type=IMAGE_HIGHLIGHT, t_ms=event.t_ms, slide=slide, element_id=element_id),
        ))
    outputs.sort(key=lambda pair: pair[0])

    slide_state = replace(
        slide_state, matched_units=merged, covered_elements=covered, cursor=cursor
    )
    slides = state.slides[:slide] + (slide_state,) + state.slides[slide + 1:]
    new_state = replace(state, slides=slides, last_t_ms=event.t_ms)
    return new_state, [ev for _, ev in outputs]


def handle_event(state: SessionState, event: TranscriptEvent) -> tuple[SessionState, list[OutputEvent]]:
    """Apply one transcript event; returns the new state and emitted feedback."""
    if state.ended:
        raise SessionEndedError(f"event {event.type!r} after session end")

    if event.type in (INTERIM, FINAL):
        return _apply_speech(state, event)

    if event.type == SLIDE_CHANGE:
        if event.slide is None or not 0 <= event.slide < len(state.deck.slides):
            raise SlideRangeError(-1 if event.slide is None else event.slide, len(state.deck.slides))
        departed = state.active_slide
        new_state = replace(state, active_slide=event.slide, last_t_ms=event.t_ms)
        outputs = [_slide_summary(state.index, new_state, departed, event.t_ms)]
        outputs.extend(_video_reminders(state.deck, event.slide, event.t_ms))
        return new_state, outputs

    if event.type == END:
        new_state = replace(state, ended=True, last_t_ms=event.t_ms)
        outputs = [
            _slide_summary(state.index, new_state, state.active_slide, event.t_ms),
            OutputEvent(type=SESSION_END, t_ms=event.t_ms),
        ]
        return new_state, outputs

    raise ValueError(f"unknown event type: {event.type!r}")


def run_session(
    deck: Deck, lexicon: Lexicon, events: Iterable[TranscriptEvent]
) -> tuple[SessionState, list[OutputEvent], bool]:
    """Fold a whole recorded event sequence through a fresh session.

    If the stream does not finish with an end event, one is appended at the
    last seen timestamp; the returned flag says whether that happened.
    """
    state, outputs = new_session(deck, lexicon)
    for event in events:
        state, out = handle_event(state, event)
        outputs.extend(out)
    end_appended = not state.ended
    if end_appended:
        state, out = handle_event(state, TranscriptEvent(type=END, t_ms=state.last_t_ms))
        outputs.extend(out)
    return state, outputs, end_appended

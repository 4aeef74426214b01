"""Newline-delimited JSON wire formats for transcript and output events.

One record per line; the same single-record form travels as a websocket
text frame. Field names match the event dataclasses exactly.
"""

from __future__ import annotations

import json
from typing import Any, Iterable, Iterator

from .engine import (
    END, FINAL, INTERIM, SLIDE_CHANGE,
    HIGHLIGHT, IMAGE_HIGHLIGHT, SESSION_END, SLIDE_SUMMARY, VIDEO_REMINDER,
    OutputEvent, TranscriptEvent,
)
from .errors import EventStreamError

TRANSCRIPT_TYPES = {INTERIM, FINAL, SLIDE_CHANGE, END}
OUTPUT_TYPES = {HIGHLIGHT, IMAGE_HIGHLIGHT, VIDEO_REMINDER, SLIDE_SUMMARY, SESSION_END}


def transcript_event_to_record(ev: TranscriptEvent) -> dict[str, Any]:
    record: dict[str, Any] = {"type": ev.type}
    if ev.type in (INTERIM, FINAL):
        record["text"] = ev.text
    if ev.type == SLIDE_CHANGE:
        record["slide"] = ev.slide
    record["t_ms"] = ev.t_ms
    return record


def transcript_event_from_record(record: Any, line_no: int | None = None) -> TranscriptEvent:
    if not isinstance(record, dict):
        raise EventStreamError("event must be a JSON object", line_no)
    etype = record.get("type")
    if etype not in TRANSCRIPT_TYPES:
        raise EventStreamError(f"unknown event type: {etype!r}", line_no)
    t_ms = record.get("t_ms", 0)
    if not isinstance(t_ms, int) or t_ms < 0:
        raise EventStreamError(f"t_ms must be a non-negative integer, got {t_ms!r}", line_no)
    if etype in (INTERIM, FINAL):
        text = record.get("text")
        if not isinstance(text, str):
            raise EventStreamError(f"{etype} event requires a string 'text' field", line_no)
        return TranscriptEvent(type=etype, text=text, t_ms=t_ms)
    if etype == SLIDE_CHANGE:
        slide = record.get("slide")
        if not isinstance(slide, int) or slide < 0:
            raise EventStreamError(f"slide_change requires a non-negative 'slide', got {slide!r}", line_no)
        return TranscriptEvent(type=etype, slide=slide, t_ms=t_ms)
    return TranscriptEvent(type=END, t_ms=t_ms)


def parse_transcript_line(line: str, line_no: int | None = None) -> TranscriptEvent:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as e:
        raise EventStreamError(f"not valid JSON: {e.msg}", line_no) from e
    return transcript_event_from_record(record, line_no)


def read_transcript_stream(lines: Iterable[str]) -> Iterator[TranscriptEvent]:
    """Parse a transcript stream, skipping blank lines.

    Enforces non-decreasing t_ms; errors carry the 1-based line number.
    """
    last_t = -1
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        ev = parse_transcript_line(line, line_no)
        if ev.t_ms < last_t:
            raise EventStreamError(
                f"t_ms went backwards ({ev.t_ms} after {last_t})", line_no
            )
        last_t = ev.t_ms
        yield ev


def load_transcript(path: str) -> list[TranscriptEvent]:
    with open(path, encoding="utf-8") as fh:
        return list(read_transcript_stream(fh))


def transcript_event_to_json(ev: TranscriptEvent) -> str:
    return json.dumps(transcript_event_to_record(ev), ensure_ascii=False)


def output_event_to_record(ev: OutputEvent) -> dict[str, Any]:
    record: dict[str, Any] = {"type": ev.type}
    if ev.slide is not None:
        record["slide"] = ev.slide
    if ev.element_id is not None:
        record["element_id"] = ev.element_id
    if ev.token_index is not None:
        record["token_index"] = ev.token_index
    if ev.word_coverage is not None:
        record["word_coverage"] = ev.word_coverage
    record["t_ms"] = ev.t_ms
    return record


def output_event_from_record(record: dict[str, Any]) -> OutputEvent:
    etype = record.get("type")
    if etype not in OUTPUT_TYPES:
        raise ValueError(f"unknown output event type: {etype!r}")
    return OutputEvent(
        type=etype,
        slide=record.get("slide"),
        element_id=record.get("element_id"),
        token_index=record.get("token_index"),
        word_coverage=record.get("word_coverage"),
        t_ms=record.get("t_ms", 0),
    )


def output_event_to_json(ev: OutputEvent) -> str:
    return json.dumps(output_event_to_record(ev), ensure_ascii=False)


def write_output_stream(events: Iterable[OutputEvent]) -> str:
    return "".join(output_event_to_json(ev) + "\n" for ev in events)

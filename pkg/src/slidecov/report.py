"""Post-session coverage report: metrics, suggestions, what-if edits.

Coverage counts text and OCR tokens only; label tokens are a matching aid.
Edits (delete, alt-text, mark decorative) recompute the displayed numbers
over the remaining elements but never touch the recorded match data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from typing import Any

from .engine import SessionState, covered_element_ids, slide_transcript
from .errors import ReportEditError
from .model import Deck, Element, Slide, deck_from_dict, IMAGE, TEXT, VIDEO
from .readorder import MatchUnit

SCHEMA_VERSION = 1

UNCOVERED = "uncovered"
PARTIAL = "partial"
COVERED = "covered"

DELETE_ELEMENT = "delete_element"
SET_ALT_TEXT = "set_alt_text"
MARK_DECORATIVE = "mark_decorative"

TEMPLATE_TEXT = "remove_or_describe_text"
TEMPLATE_IMAGE = "remove_describe_or_alt_image"
TEMPLATE_VIDEO = "summarize_video"

_TEMPLATES = {
    TEMPLATE_TEXT: "Remove the following text elements or add a description: {refs}",
    TEMPLATE_IMAGE: "Remove, describe, or add image alt-text for the following image elements: {refs}",
    TEMPLATE_VIDEO: "Summarize this video before playing it, or narrate it as it plays: {refs}",
}


@dataclass(frozen=True)
class ElementCoverage:
    element_id: str
    level: str
    matched_word_count: int
    total_word_count: int
    bbox_covered: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "element_id": self.element_id,
            "level": self.level,
            "matched_word_count": self.matched_word_count,
            "total_word_count": self.total_word_count,
            "bbox_covered": self.bbox_covered,
        }


@dataclass(frozen=True)
class SlideCoverage:
    slide: int
    word_coverage: float
    elements: tuple[ElementCoverage, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "slide": self.slide,
            "word_coverage": self.word_coverage,
            "elements": [e.to_dict() for e in self.elements],
        }


@dataclass(frozen=True)
class Suggestion:
    slide: int
    element_ids: tuple[str, ...]
    template_id: str
    rendered_text: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "slide": self.slide,
            "element_ids": list(self.element_ids),
            "template_id": self.template_id,
            "rendered_text": self.rendered_text,
        }


@dataclass(frozen=True)
class Edit:
    kind: str
    slide: int
    element_id: str
    alt_text: str | None = None

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"kind": self.kind, "slide": self.slide, "element_id": self.element_id}
        if self.alt_text is not None:
            d["alt_text"] = self.alt_text
        return d


@dataclass(frozen=True)
class Report:
    """Everything the post-session view needs; a pure value."""

    deck: Deck
    slides: tuple[SlideCoverage, ...]
    suggestions: tuple[Suggestion, ...]
    transcripts: tuple[str, ...]
    matched_units: tuple[frozenset[str], ...]
    covered_elements: tuple[frozenset[str], ...]
    edits: tuple[Edit, ...]
    duration_ms: int
    generated_at: str

    @property
    def slides_by_need(self) -> list[int]:
        """Slide indices, lowest coverage first (the review ordering)."""
        return sorted(range(len(self.slides)), key=lambda i: (self.slides[i].word_coverage, i))


def _element_ref(element: Element) -> str:
    if element.kind == TEXT:
        words = element.text.split()
        snippet = " ".join(words[:6]) + (" ..." if len(words) > 6 else "")
        return f'{element.id} ("{snippet}")'
    if element.kind == IMAGE:
        if element.alt_text:
            return f'{element.id} (alt text: "{element.alt_text}")'
        if element.labels:
            return f"{element.id} (labels: {', '.join(element.labels)})"
        return element.id
    return element.id


def _render(template_id: str, elements: list[Element]) -> str:
    refs = "; ".join(_element_ref(e) for e in elements)
    return _TEMPLATES[template_id].format(refs=refs)


def _derive_suggestions(deck: Deck, coverages: tuple[SlideCoverage, ...]) -> tuple[Suggestion, ...]:
    suggestions: list[Suggestion] = []
    cov_by_slide = {c.slide: {e.element_id: e for e in c.elements} for c in coverages}
    for slide in deck.slides:
        entries = cov_by_slide.get(slide.index, {})
        text_els = []
        image_els = []
        for el in slide.elements:
            entry = entries.get(el.id)
            if entry is None:
                continue  # decorative or removed
            if el.kind == TEXT and entry.matched_word_count < entry.total_word_count:
                text_els.append(el)
            elif el.kind == IMAGE and entry.level == UNCOVERED and not (el.alt_text or "").strip():
                image_els.append(el)
        if text_els:
            suggestions.append(Suggestion(
                slide=slide.index,
                element_ids=tuple(e.id for e in text_els),
                template_id=TEMPLATE_TEXT,
                rendered_text=_render(TEMPLATE_TEXT, text_els),
            ))
        if image_els:
            suggestions.append(Suggestion(
                slide=slide.index,
                element_ids=tuple(e.id for e in image_els),
                template_id=TEMPLATE_IMAGE,
                rendered_text=_render(TEMPLATE_IMAGE, image_els),
            ))
        for el in slide.elements:
            if el.kind == VIDEO and not el.decorative:
                suggestions.append(Suggestion(
                    slide=slide.index,
                    element_ids=(el.id,),
                    template_id=TEMPLATE_VIDEO,
                    rendered_text=_render(TEMPLATE_VIDEO, [el]),
                ))
    return tuple(suggestions)


def _element_coverage(
    element: Element,
    units: tuple[MatchUnit, ...],
    matched: frozenset[str],
    covered_ids: frozenset[str],
) -> ElementCoverage:
    own = [u for u in units if u.element_id == element.id and u.countable]
    total = len(own)
    hit = sum(1 for u in own if u.uid in matched)
    bbox_covered = element.id in covered_ids

    if element.kind == VIDEO:
        level = UNCOVERED  # the engine cannot verify video narration
    elif element.kind == IMAGE:
        if bbox_covered and hit == total:
            level = COVERED
        elif not bbox_covered and hit == 0:
            level = UNCOVERED
        else:
            level = PARTIAL
    else:
        if hit == total:
            level = COVERED
        elif hit == 0 and total > 0:
            level = UNCOVERED
        else:
            level = PARTIAL
    return ElementCoverage(
        element_id=element.id,
        level=level,
        matched_word_count=hit,
        total_word_count=total,
        bbox_covered=bbox_covered,
    )


def _slide_coverage(
    slide: Slide,
    units: tuple[MatchUnit, ...],
    matched: frozenset[str],
    covered_ids: frozenset[str],
) -> SlideCoverage:
    entries = tuple(
        _element_coverage(el, units, matched, covered_ids)
        for el in slide.elements
        if not el.decorative
    )
    total = sum(e.total_word_count for e in entries)
    hit = sum(e.matched_word_count for e in entries)
    return SlideCoverage(
        slide=slide.index,
        word_coverage=hit / total if total else 1.0,
        elements=entries,
    )


def build_report(deck: Deck, session: SessionState, generated_at: str | None = None) -> Report:
    """Snapshot a finished session into a report. Requires session.ended."""
    if not session.ended:
        raise ValueError("cannot build a report before the session has ended")
    if generated_at is None:
        generated_at = datetime.now(timezone.utc).isoformat(timespec="seconds")

    index = session.index
    coverages = []
    matched_sets = []
    covered_sets = []
    transcripts = []
    for slide in deck.slides:
        slide_state = session.slides[slide.index]
        units = index.units[slide.index]
        covered = covered_element_ids(units, slide_state.matched_units)
        coverages.append(_slide_coverage(slide, units, slide_state.matched_units, covered))
        matched_sets.append(slide_state.matched_units)
        covered_sets.append(covered)
        transcripts.append(slide_transcript(slide_state))

    coverages_t = tuple(coverages)
    return Report(
        deck=deck,
        slides=coverages_t,
        suggestions=_derive_suggestions(deck, coverages_t),
        transcripts=tuple(transcripts),
        matched_units=tuple(matched_sets),
        covered_elements=tuple(covered_sets),
        edits=(),
        duration_ms=session.last_t_ms,
        generated_at=generated_at,
    )


def _recompute(report: Report, deck: Deck, edits: tuple[Edit, ...]) -> Report:
    """Rebuild displayed numbers over the (edited) deck view.

    Per-element counts come from the original entries; removing an element
    just drops its entry from the sums. Match data is never recomputed.
    """
    old_entries = {
        (c.slide, e.element_id): e for c in report.slides for e in c.elements
    }
    coverages = []
    for slide in deck.slides:
        entries = tuple(
            old_entries[(slide.index, el.id)]
            for el in slide.elements
            if not el.decorative and (slide.index, el.id) in old_entries
        )
        total = sum(e.total_word_count for e in entries)
        hit = sum(e.matched_word_count for e in entries)
        coverages.append(SlideCoverage(
            slide=slide.index,
            word_coverage=hit / total if total else 1.0,
            elements=entries,
        ))
    coverages_t = tuple(coverages)
    return replace(
        report,
        deck=deck,
        slides=coverages_t,
        suggestions=_derive_suggestions(deck, coverages_t),
        edits=edits,
    )


def apply_edit(report: Report, edit: Edit) -> Report:
    """Pure what-if edit: returns a new report, input unchanged."""
    if not 0 <= edit.slide < len(report.deck.slides):
        raise ReportEditError(f"slide {edit.slide} out of range")
    slide = report.deck.slides[edit.slide]
    target = slide.element(edit.element_id)
    if target is None:
        for prior in report.edits:
            if (prior.kind == DELETE_ELEMENT and prior.slide == edit.slide
                    and prior.element_id == edit.element_id):
                raise ReportEditError(
                    f"element '{edit.element_id}' on slide {edit.slide} was already deleted"
                )
        raise ReportEditError(f"unknown element '{edit.element_id}' on slide {edit.slide}")

    if edit.kind == DELETE_ELEMENT:
        new_elements = tuple(e for e in slide.elements if e.id != edit.element_id)
    elif edit.kind == SET_ALT_TEXT:
        if target.kind != IMAGE:
            raise ReportEditError(f"alt text applies to images, not {target.kind} elements")
        alt = edit.alt_text if (edit.alt_text or "").strip() else None
        new_elements = tuple(
            replace(e, alt_text=alt) if e.id == edit.element_id else e for e in slide.elements
        )
    elif edit.kind == MARK_DECORATIVE:
        new_elements = tuple(
            replace(e, decorative=True) if e.id == edit.element_id else e
            for e in slide.elements
        )
    else:
        raise ReportEditError(f"unknown edit kind: {edit.kind!r}")

    new_slide = replace(slide, elements=new_elements)
    new_deck = replace(
        report.deck,
        slides=report.deck.slides[:edit.slide] + (new_slide,) + report.deck.slides[edit.slide + 1:],
    )
    return _recompute(report, new_deck, report.edits + (edit,))


def report_to_dict(report: Report) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "deck": report.deck.to_dict(),
        "slides": [c.to_dict() for c in report.slides],
        "suggestions": [s.to_dict() for s in report.suggestions],
        "transcripts": list(report.transcripts),
        "matched_units": [sorted(m) for m in report.matched_units],
        "covered_elements": [sorted(c) for c in report.covered_elements],
        "slides_by_need": report.slides_by_need,
        "edits": [e.to_dict() for e in report.edits],
        "meta": {
            "duration_ms": report.duration_ms,
            "generated_at": report.generated_at,
        },
    }


def report_from_dict(data: dict[str, Any]) -> Report:
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported report schema_version: {data.get('schema_version')!r}")
    return Report(
        deck=deck_from_dict(data["deck"]),
        slides=tuple(
            SlideCoverage(
                slide=c["slide"],
                word_coverage=c["word_coverage"],
                elements=tuple(
                    ElementCoverage(
                        element_id=e["element_id"],
                        level=e["level"],
                        matched_word_count=e["matched_word_count"],
                        total_word_count=e["total_word_count"],
                        bbox_covered=e["bbox_covered"],
                    )
                    for e in c["elements"]
                ),
            )
            for c in data["slides"]
        ),
        suggestions=tuple(
            Suggestion(
                slide=s["slide"],
                element_ids=tuple(s["element_ids"]),
                template_id=s["template_id"],
                rendered_text=s["rendered_text"],
            )
            for s in data["suggestions"]
        ),
        transcripts=tuple(data["transcripts"]),
        matched_units=tuple(frozenset(m) for m in data["matched_units"]),
        covered_elements=tuple(frozenset(c) for c in data["covered_elements"]),
        edits=tuple(
            Edit(kind=e["kind"], slide=e["slide"], element_id=e["element_id"],
                 alt_text=e.get("alt_text"))
            for e in data["edits"]
        ),
        duration_ms=data["meta"]["duration_ms"],
        generated_at=data["meta"]["generated_at"],
    )


def render_report(report: Report, format: str = "structured") -> bytes:
    """Serialize a report. ``structured`` (JSON) round-trips losslessly;
    ``text`` is the human summary, slides in deck order."""
    if format in ("structured", "json"):
        return (json.dumps(report_to_dict(report), indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if format == "text":
        lines = [f"{report.deck.title} — session report", ""]
        by_slide: dict[int, list[Suggestion]] = {}
        for s in report.suggestions:
            by_slide.setdefault(s.slide, []).append(s)
        for cov in report.slides:
            lines.append(f"Slide {cov.slide} — coverage {round(cov.word_coverage * 100)}%")
            for s in by_slide.get(cov.slide, []):
                lines.append(f"    {s.rendered_text}")
        lines.append("")
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown report format: {format!r}")


def parse_report(content: bytes | str) -> Report:
    if isinstance(content, bytes):
        content = content.decode("utf-8")
    return report_from_dict(json.loads(content))


def scrub_timestamps(content: bytes) -> bytes:
    """Structured report bytes with the wall-clock timestamp blanked,
    for byte-exact comparisons across runs."""
    data = json.loads(content.decode("utf-8"))
    data["meta"]["generated_at"] = ""
    return (json.dumps(data, indent=2, ensure_ascii=False) + "\n").encode("utf-8")

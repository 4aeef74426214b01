"""Deck data model: bounding boxes, elements, slides, parsing and validation.

The deck file is plain JSON (see ``schemas/deck.schema.json``). Geometry is
normalized to slide fractions so the engine stays independent of pixel sizes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Any

import jsonschema

from .errors import DeckValidationError

BBOX_EDGE_TOLERANCE = 1e-4

TEXT = "text"
IMAGE = "image"
VIDEO = "video"


@dataclass(frozen=True)
class BBox:
    """Element or word geometry as fractions of slide width/height."""

    x: float
    y: float
    w: float
    h: float

    def validate(self, path: str) -> None:
        for name in ("x", "y", "w", "h"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise DeckValidationError(f"{name}={v} outside [0, 1]", f"{path}.{name}")
        if self.w <= 0 or self.h <= 0:
            raise DeckValidationError("w and h must be > 0", path)
        if self.x + self.w > 1.0 + BBOX_EDGE_TOLERANCE:
            raise DeckValidationError(f"x+w={self.x + self.w} exceeds slide width", path)
        if self.y + self.h > 1.0 + BBOX_EDGE_TOLERANCE:
            raise DeckValidationError(f"y+h={self.y + self.h} exceeds slide height", path)

    def to_dict(self) -> dict[str, float]:
        return {"x": self.x, "y": self.y, "w": self.w, "h": self.h}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "BBox":
        return cls(x=float(d["x"]), y=float(d["y"]), w=float(d["w"]), h=float(d["h"]))


@dataclass(frozen=True)
class OcrWord:
    text: str
    bbox: BBox


@dataclass(frozen=True)
class Element:
    """One slide element. ``text`` kind carries text, ``image`` kind carries
    OCR words plus labels, ``video`` carries geometry only."""

    id: str
    kind: str
    bbox: BBox
    role: str | None = None
    text: str = ""
    ocr_words: tuple[OcrWord, ...] = ()
    labels: tuple[str, ...] = ()
    alt_text: str | None = None
    decorative: bool = False
    token_boxes: tuple[BBox, ...] | None = None

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"id": self.id, "kind": self.kind, "bbox": self.bbox.to_dict()}
        if self.role is not None:
            d["role"] = self.role
        if self.kind == TEXT:
            d["text"] = self.text
            if self.token_boxes is not None:
                d["token_boxes"] = [b.to_dict() for b in self.token_boxes]
        if self.kind == IMAGE:
            if self.ocr_words:
                d["ocr_words"] = [{"text": w.text, "bbox": w.bbox.to_dict()} for w in self.ocr_words]
            if self.labels:
                d["labels"] = list(self.labels)
        if self.alt_text is not None:
            d["alt_text"] = self.alt_text
        if self.decorative:
            d["decorative"] = True
        return d


@dataclass(frozen=True)
class Slide:
    index: int
    elements: tuple[Element, ...] = ()

    def element(self, element_id: str) -> Element | None:
        for el in self.elements:
            if el.id == element_id:
                return el
        return None

    def to_dict(self) -> dict[str, Any]:
        return {"index": self.index, "elements": [e.to_dict() for e in self.elements]}


@dataclass(frozen=True)
class Deck:
    title: str
    slides: tuple[Slide, ...]

    def to_dict(self) -> dict[str, Any]:
        return {"title": self.title, "slides": [s.to_dict() for s in self.slides]}

    def find_element(self, slide: int, element_id: str) -> Element | None:
        if 0 <= slide < len(self.slides):
            return self.slides[slide].element(element_id)
        return None


def _schema() -> dict:
    text = resources.files("slidecov.schemas").joinpath("deck.schema.json").read_text("utf-8")
    return json.loads(text)


_VALIDATOR: jsonschema.Draft202012Validator | None = None


def _validator() -> jsonschema.Draft202012Validator:
    global _VALIDATOR
    if _VALIDATOR is None:
        _VALIDATOR = jsonschema.Draft202012Validator(_schema())
    return _VALIDATOR


def _json_path(error: jsonschema.ValidationError) -> str:
    parts = ["$"]
    for p in error.absolute_path:
        parts.append(f"[{p}]" if isinstance(p, int) else f".{p}")
    return "".join(parts)


def _element_from_dict(d: dict[str, Any], path: str) -> Element:
    bbox = BBox.from_dict(d["bbox"])
    bbox.validate(f"{path}.bbox")
    ocr = []
    for i, w in enumerate(d.get("ocr_words", ())):
        wb = BBox.from_dict(w["bbox"])
        wb.validate(f"{path}.ocr_words[{i}].bbox")
        ocr.append(OcrWord(text=w["text"], bbox=wb))
    token_boxes = None
    if "token_boxes" in d:
        token_boxes = []
        for i, b in enumerate(d["token_boxes"]):
            tb = BBox.from_dict(b)
            tb.validate(f"{path}.token_boxes[{i}]")
            token_boxes.append(tb)
        n_tokens = len(d.get("text", "").split())
        if len(token_boxes) != n_tokens:
            raise DeckValidationError(
                f"token_boxes has {len(token_boxes)} entries but text has {n_tokens} tokens",
                f"{path}.token_boxes",
            )
        token_boxes = tuple(token_boxes)
    return Element(
        id=d["id"],
        kind=d["kind"],
        bbox=bbox,
        role=d.get("role"),
        text=d.get("text", ""),
        ocr_words=tuple(ocr),
        labels=tuple(d.get("labels", ())),
        alt_text=d.get("alt_text"),
        decorative=bool(d.get("decorative", False)),
        token_boxes=token_boxes,
    )


def deck_from_dict(data: dict[str, Any]) -> Deck:
    """Build and fully validate a Deck from parsed JSON."""
    error = jsonschema.exceptions.best_match(_validator().iter_errors(data))
    if error is not None:
        raise DeckValidationError(error.message, _json_path(error))

    slides = []
    seen_ids: dict[str, str] = {}
    for si, sd in enumerate(data["slides"]):
        path = f"$.slides[{si}]"
        if sd["index"] != si:
            raise DeckValidationError(
                f"slide index {sd['index']} at position {si}; indices must be contiguous from 0",
                f"{path}.index",
            )
        elements = []
        for ei, ed in enumerate(sd["elements"]):
            epath = f"{path}.elements[{ei}]"
            el = _element_from_dict(ed, epath)
            if el.id in seen_ids:
                raise DeckValidationError(
                    f"duplicate element id '{el.id}' (first seen at {seen_ids[el.id]})",
                    f"{epath}.id",
                )
            seen_ids[el.id] = epath
            elements.append(el)
        slides.append(Slide(index=si, elements=tuple(elements)))
    return Deck(title=data["title"], slides=tuple(slides))


def parse_deck(content: bytes | str) -> Deck:
    """Parse a deck file. Raises DeckValidationError naming the bad field."""
    if isinstance(content, bytes):
        content = content.decode("utf-8")
    if not content.strip():
        raise DeckValidationError("empty deck file")
    try:
        data = json.loads(content)
    except json.JSONDecodeError as e:
        raise DeckValidationError(f"not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise DeckValidationError("deck file must be a JSON object")
    return deck_from_dict(data)


def serialize_deck(deck: Deck) -> bytes:
    return (json.dumps(deck.to_dict(), indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def load_deck(path: str) -> Deck:
    with open(path, "rb") as fh:
        return parse_deck(fh.read())

"""Match units and read-order ranking.

Everything matchable on a slide (text tokens, OCR tokens, image labels)
becomes one MatchUnit with a rank that approximates how a sighted reader
scans the slide: row-major, top-left first. Label units sort at their
image's top-left corner so a label mention is "due" right when the reader
reaches the image.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lexicon import Lexicon, expand_labels, normalize_token, split_words, stem
from .model import BBox, Element, Slide, IMAGE, TEXT

TEXT_TOKEN = "text_token"
OCR_TOKEN = "ocr_token"
LABEL_TOKEN = "label_token"


@dataclass(frozen=True)
class MatchUnit:
    """One matchable item on a slide.

    ``uid`` is stable for a given deck and lexicon; it is what match state
    and highlight bookkeeping key on. Label units aid matching but never
    count toward coverage.
    """

    uid: str
    slide_index: int
    element_id: str
    unit_kind: str
    raw: str
    stem: str
    token_index: int | None
    bbox: BBox
    rank: int

    @property
    def countable(self) -> bool:
        return self.unit_kind != LABEL_TOKEN


def _synthetic_token_boxes(element: Element) -> list[BBox]:
    """Uniform left-to-right / top-to-bottom boxes inside the element box.

    Used when the deck supplies only element-level geometry. Exact pixel
    fidelity is irrelevant; only the induced ordering matters.
    """
    lines = [ln.split() for ln in element.text.split("\n")]
    lines = [ln for ln in lines if ln]
    boxes: list[BBox] = []
    if not lines:
        return boxes
    bb = element.bbox
    row_h = bb.h / len(lines)
    for row, tokens in enumerate(lines):
        tok_w = bb.w / len(tokens)
        for col in range(len(tokens)):
            boxes.append(BBox(x=bb.x + col * tok_w, y=bb.y + row * row_h, w=tok_w, h=row_h))
    return boxes


def element_label_words(element: Element, lexicon: Lexicon) -> list[str]:
    """Effective label vocabulary for an image.

    Author-supplied alt text replaces the automated labels outright; either
    source then goes through chart-word expansion.
    """
    if element.alt_text is not None and element.alt_text.strip():
        source: list[str] = split_words(element.alt_text)
    else:
        source = list(element.labels)
    words: list[str] = []
    for label in expand_labels(source, lexicon):
        words.extend(split_words(label))
    return words


def _element_units(element: Element, lexicon: Lexicon) -> list[tuple]:
    """(sort_key, partial unit fields) for every unit of one element."""
    entries: list[tuple] = []
    if element.decorative:
        return entries

    if element.kind == TEXT:
        tokens = split_words(element.text)
        boxes = list(element.token_boxes) if element.token_boxes else _synthetic_token_boxes(element)
        for i, raw in enumerate(tokens):
            word = normalize_token(raw, lexicon)
            if word is None:
                continue
            box = boxes[i]
            key = (box.y, box.x, element.id, 1, i)
            entries.append((key, f"{element.id}:t:{i}", element.id, TEXT_TOKEN, raw, stem(word), i, box))

    elif element.kind == IMAGE:
        for j, word_text in enumerate(element_label_words(element, lexicon)):
            word = normalize_token(word_text, lexicon)
            if word is None:
                continue
            key = (element.bbox.y, element.bbox.x, element.id, 0, j)
            entries.append(
                (key, f"{element.id}:l:{j}", element.id, LABEL_TOKEN, word_text, stem(word), None, element.bbox)
            )
        for i, ocr in enumerate(element.ocr_words):
            word = normalize_token(ocr.text, lexicon)
            if word is None:
                continue
            key = (ocr.bbox.y, ocr.bbox.x, element.id, 1, i)
            entries.append((key, f"{element.id}:o:{i}", element.id, OCR_TOKEN, ocr.text, stem(word), i, ocr.bbox))

    # video elements carry no matchable words
    return entries


def compute_read_order(slide: Slide, lexicon: Lexicon) -> list[MatchUnit]:
    """All match units of a slide, ranked 0..n-1 in read order.

    Sort is (y, x) of the unit box, ties broken by element id then position
    within the element; two elements at the same spot order by id.
    """
    entries: list[tuple] = []
    for element in slide.elements:
        entries.extend(_element_units(element, lexicon))
    entries.sort(key=lambda e: e[0])
    units = []
    for rank, (_, uid, element_id, kind, raw, stem_, token_index, bbox) in enumerate(entries):
        units.append(
            MatchUnit(
                uid=uid,
                slide_index=slide.index,
                element_id=element_id,
                unit_kind=kind,
                raw=raw,
                stem=stem_,
                token_index=token_index,
                bbox=bbox,
                rank=rank,
            )
        )
    return units

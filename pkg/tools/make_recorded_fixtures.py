"""Regenerate the recorded session fixtures under fixtures/recorded/.

Each fixture is a (deck_NN.json, transcript_NN.jsonl) pair: a small slide
deck plus a recorded transcript stream with oscillating interim hypotheses,
slide changes, and a closing end event. Generation is seeded, so rerunning
this script reproduces the committed files byte for byte:

    python3 tools/make_recorded_fixtures.py
"""

from __future__ import annotations

import json
import random
from pathlib import Path

from slidecov.engine import TranscriptEvent
from slidecov.events_io import transcript_event_to_json
from slidecov.model import deck_from_dict

OUT_DIR = Path(__file__).resolve().parent.parent / "fixtures" / "recorded"

SEED = 9021
N_FIXTURES = 20

# Collision-heavy on purpose: shared stems, repeated words, stop words.
CONTENT_WORDS = [
    "review", "reviews", "points", "paths", "colors", "colorful", "circle",
    "brush", "brushes", "stitches", "sales", "growth", "chart", "charts",
    "graph", "plot", "alpha", "beta", "gamma", "delta", "results", "data",
    "application", "applying", "2021", "2022", "summary", "final", "project",
]
STOP_WORDS = ["the", "and", "of", "a", "to", "we", "will", "this", "is"]
LABEL_WORDS = ["rainbow", "drawing", "wheel", "bar chart", "logo", "diagram"]


def _phrase(rng: random.Random, lo: int, hi: int) -> str:
    words = []
    for _ in range(rng.randint(lo, hi)):
        pool = STOP_WORDS if rng.random() < 0.3 else CONTENT_WORDS
        words.append(rng.choice(pool))
    return " ".join(words)


def make_deck(rng: random.Random, idx: int) -> dict:
    slides = []
    eid = 0
    for s in range(rng.randint(1, 3)):
        elements = []
        for _ in range(rng.randint(1, 5)):
            x = rng.randrange(0, 61, 5) / 100
            y = rng.randrange(0, 81, 5) / 100
            kind = rng.choice(["text", "text", "text", "image", "video"])
            if kind == "text":
                el = {
                    "id": f"e{eid}", "kind": "text",
                    "bbox": {"x": x, "y": y, "w": 0.3, "h": 0.08},
                    "text": _phrase(rng, 1, 6),
                }
            elif kind == "image":
                el = {
                    "id": f"e{eid}", "kind": "image",
                    "bbox": {"x": x, "y": y, "w": 0.3, "h": 0.15},
                }
                if rng.random() < 0.8:
                    el["labels"] = rng.sample(LABEL_WORDS, rng.randint(1, 2))
                if rng.random() < 0.5:
                    el["ocr_words"] = [
                        {
                            "text": rng.choice(CONTENT_WORDS),
                            "bbox": {"x": min(x + 0.06 * j, 0.9),
                                     "y": min(y + 0.02, 0.9),
                                     "w": 0.04, "h": 0.03},
                        }
                        for j in range(rng.randint(1, 3))
                    ]
                if rng.random() < 0.15:
                    el["decorative"] = True
            else:
                el = {
                    "id": f"e{eid}", "kind": "video",
                    "bbox": {"x": x, "y": y, "w": 0.3, "h": 0.15},
                }
            elements.append(el)
            eid += 1
        slides.append({"index": s, "elements": elements})
    return {"title": f"Recorded session {idx:02d}", "slides": slides}


def make_transcript(rng: random.Random, n_slides: int) -> list[TranscriptEvent]:
    events: list[TranscriptEvent] = []
    t = rng.randint(100, 500)
    for _ in range(rng.randint(3, 9)):
        roll = rng.random()
        if roll < 0.2 and n_slides > 1:
            events.append(TranscriptEvent(
                type="slide_change", slide=rng.randrange(n_slides), t_ms=t))
            t += rng.randint(200, 900)
            continue
        sentence = _phrase(rng, 2, 8).split()
        # Interim hypotheses grow (and sometimes shrink) before the final.
        cut = 1
        for _ in range(rng.randint(0, 3)):
            cut = max(1, min(len(sentence), cut + rng.choice([1, 1, 2, -1])))
            events.append(TranscriptEvent(
                type="interim", text=" ".join(sentence[:cut]), t_ms=t))
            t += rng.randint(100, 400)
        if rng.random() < 0.85:
            events.append(TranscriptEvent(
                type="final", text=" ".join(sentence), t_ms=t))
            t += rng.randint(200, 900)
    events.append(TranscriptEvent(type="end", t_ms=t))
    return events


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    rng = random.Random(SEED)
    for i in range(N_FIXTURES):
        deck_dict = make_deck(rng, i)
        deck = deck_from_dict(deck_dict)  # validate before freezing
        events = make_transcript(rng, len(deck.slides))
        deck_path = OUT_DIR / f"deck_{i:02d}.json"
        deck_path.write_text(
            json.dumps(deck.to_dict(), indent=2, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )
        lines = "\n".join(transcript_event_to_json(ev) for ev in events)
        (OUT_DIR / f"transcript_{i:02d}.jsonl").write_text(lines + "\n", encoding="utf-8")
    print(f"wrote {N_FIXTURES} fixture pairs to {OUT_DIR}")


if __name__ == "__main__":
    main()

"""Record the viewer-side frame stream for the demo session and freeze it
for the frontend tests.

Runs the live service in-process, streams the demo transcript through
/ingest, captures every frame a viewer would receive (welcome, the output
events, the report), then performs one delete edit and captures the
updated report frame. Output:

    frontend/tests/fixtures/session_frames.json
"""

from __future__ import annotations

import json
from pathlib import Path

from starlette.testclient import TestClient

from slidecov.config import Config
from slidecov.model import load_deck
from slidecov.server import create_app

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
OUT = ROOT / "frontend" / "tests" / "fixtures" / "session_frames.json"

EDIT = {"kind": "delete_element", "slide": 1, "element_id": "s1_note"}


def main() -> None:
    deck = load_deck(str(FIXTURES / "brushes_deck.json"))
    transcript = (FIXTURES / "brushes_transcript.jsonl").read_text(encoding="utf-8")
    report_path = OUT.parent / "_scratch.report.json"

    app = create_app(deck, Config(), report_path)
    frames: list[dict] = []
    with TestClient(app) as client:
        with client.websocket_connect("/ingest") as ingest:
            with client.websocket_connect("/events") as viewer:
                for line in transcript.splitlines():
                    if line.strip():
                        ingest.send_text(line)
                while True:
                    frame = json.loads(viewer.receive_text())
                    frames.append(frame)
                    if frame["type"] == "report":
                        break
                viewer.send_text(json.dumps(EDIT))
                edited = json.loads(viewer.receive_text())
                assert edited["type"] == "report"

    report_path.unlink(missing_ok=True)
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(
        json.dumps(
            {"frames": frames, "edit": EDIT, "edited_report_frame": edited},
            indent=2,
            ensure_ascii=False,
        )
        + "\n",
        encoding="utf-8",
    )
    print(f"wrote {len(frames)} frames (+1 edited report) to {OUT}")


if __name__ == "__main__":
    main()

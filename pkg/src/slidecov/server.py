"""Websocket fan-out service for live alignment sessions.

One ingest connection drives the engine; any number of viewers watch on
/events. All engine mutation happens under a single asyncio lock, so a
connecting viewer snapshots the event log and subscribes atomically and
every viewer sees output events in emission order. A viewer that cannot
drain its queue is cut loose rather than allowed to stall ingestion.
"""

from __future__ import annotations

import anyio
import asyncio
import json
import logging
from contextlib import asynccontextmanager
from pathlib import Path
from typing import Any

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.staticfiles import StaticFiles

from .config import Config, build_lexicon
from .engine import END, OutputEvent, TranscriptEvent, handle_event, new_session
from .errors import (
    EventStreamError,
    ReportEditError,
    SessionEndedError,
    SlideRangeError,
)
from .events_io import output_event_to_json, transcript_event_from_record
from .lexicon import Lexicon
from .model import Deck
from .report import (
    DELETE_ELEMENT,
    MARK_DECORATIVE,
    SET_ALT_TEXT,
    Edit,
    Report,
    apply_edit,
    build_report,
    render_report,
    report_to_dict,
)

log = logging.getLogger("slidecov.server")

VIEWER_QUEUE_LIMIT = 512

_DROPPED = "\x00dropped"  # queue sentinel: viewer fell too far behind


def _error_frame(reason: str) -> str:
    return json.dumps({"type": "error", "reason": reason}, ensure_ascii=False)


def _report_frame(report: Report) -> str:
    return json.dumps(
        {"type": "report", "report": report_to_dict(report)}, ensure_ascii=False
    )


def parse_edit_frame(payload: Any) -> Edit:
    """Decode a viewer edit request {kind, slide, element_id, alt_text?}."""
    if not isinstance(payload, dict):
        raise ReportEditError("edit frame must be a JSON object")
    kind = payload.get("kind")
    if kind not in (DELETE_ELEMENT, SET_ALT_TEXT, MARK_DECORATIVE):
        raise ReportEditError(f"unknown edit kind: {kind!r}")
    slide = payload.get("slide")
    if not isinstance(slide, int) or isinstance(slide, bool) or slide < 0:
        raise ReportEditError("edit frame needs a non-negative integer 'slide'")
    element_id = payload.get("element_id")
    if not isinstance(element_id, str) or not element_id:
        raise ReportEditError("edit frame needs a non-empty string 'element_id'")
    alt_text = payload.get("alt_text")
    if alt_text is not None and not isinstance(alt_text, str):
        raise ReportEditError("'alt_text' must be a string when present")
    return Edit(kind=kind, slide=slide, element_id=element_id, alt_text=alt_text)


class SessionHub:
    """Single-writer session state plus viewer fan-out queues."""

    def __init__(self, deck: Deck, lexicon: Lexicon, config: Config, report_path: Path):
        self.deck = deck
        self.lexicon = lexicon
        self.config = config
        self.report_path = report_path
        self._lock = asyncio.Lock()
        state, initial = new_session(deck, lexicon)
        self._state = state
        self._events: list[OutputEvent] = list(initial)
        self._report: Report | None = None
        self._viewers: dict[int, asyncio.Queue[str]] = {}
        self._next_viewer_id = 0
        self._ingest_busy = False

    @property
    def ended(self) -> bool:
        return self._state.ended

    async def claim_ingest(self) -> bool:
        async with self._lock:
            if self._ingest_busy:
                return False
            self._ingest_busy = True
            return True

    async def release_ingest(self) -> None:
        async with self._lock:
            self._ingest_busy = False

    async def attach_viewer(self) -> tuple[int, asyncio.Queue[str], list[OutputEvent], Report | None]:
        """Register a viewer; returns its queue plus a snapshot taken atomically."""
        async with self._lock:
            self._next_viewer_id += 1
            vid = self._next_viewer_id
            queue: asyncio.Queue[str] = asyncio.Queue(maxsize=VIEWER_QUEUE_LIMIT)
            self._viewers[vid] = queue
            return vid, queue, list(self._events), self._report

    async def detach_viewer(self, vid: int) -> None:
        async with self._lock:
            self._viewers.pop(vid, None)

    def _broadcast(self, frames: list[str]) -> None:
        # Caller holds the lock. A full queue means the viewer is stalled;
        # drop it (the sentinel tells its writer task to hang up).
        for vid, queue in list(self._viewers.items()):
            for frame in frames:
                try:
                    queue.put_nowait(frame)
                except asyncio.QueueFull:
                    del self._viewers[vid]
                    while not queue.empty():
                        queue.get_nowait()
                    queue.put_nowait(_DROPPED)
                    log.warning("viewer %d dropped: queue overflow", vid)
                    break

    async def apply(self, event: TranscriptEvent) -> list[OutputEvent]:
        """Advance the session; raises on range/order/after-end violations."""
        async with self._lock:
            if event.t_ms < self._state.last_t_ms:
                raise EventStreamError(
                    f"t_ms went backwards: {event.t_ms} after {self._state.last_t_ms}"
                )
            state, outputs = handle_event(self._state, event)
            self._state = state
            self._events.extend(outputs)
            frames = [output_event_to_json(ev) for ev in outputs]
            if state.ended:
                self._report = build_report(self.deck, state)
                self._write_report()
                frames.append(_report_frame(self._report))
            self._broadcast(frames)
            return outputs

    async def edit(self, edit: Edit) -> Report:
        """Apply a report edit and broadcast the revised report."""
        async with self._lock:
            if self._report is None:
                raise ReportEditError("no report yet: the session is still running")
            self._report = apply_edit(self._report, edit)
            self._write_report()
            self._broadcast([_report_frame(self._report)])
            return self._report

    def _write_report(self) -> None:
        assert self._report is not None
        self.report_path.write_bytes(render_report(self._report, "json"))
        log.info("report written to %s", self.report_path)

    def snapshot_events(self) -> list[OutputEvent]:
        return list(self._events)


def _welcome_frame(hub: SessionHub) -> str:
    return json.dumps(
        {
            "type": "welcome",
            "deck": hub.deck.to_dict(),
            "config": {
                "highlight_color": hub.config.highlight_color,
                "min_prefix_len": hub.config.min_prefix_len,
            },
        },
        ensure_ascii=False,
    )


def create_app(
    deck: Deck,
    config: Config,
    report_path: Path,
    ui_dir: Path | None = None,
    lexicon: Lexicon | None = None,
    replay: tuple[list[TranscriptEvent], float] | None = None,
) -> FastAPI:
    lexicon = lexicon if lexicon is not None else build_lexicon(config)
    hub = SessionHub(deck, lexicon, config, report_path)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        feeder = None
        if replay is not None:
            events, speed = replay
            feeder = asyncio.create_task(feed_events(hub, events, speed))
        yield
        if feeder is not None:
            feeder.cancel()
            await asyncio.gather(feeder, return_exceptions=True)

    app = FastAPI(lifespan=lifespan)
    app.state.hub = hub

    @app.websocket("/ingest")
    async def ingest(ws: WebSocket) -> None:
        await ws.accept()
        if not await hub.claim_ingest():
            await ws.send_text(
                _error_frame("an ingest connection is already active; one per session")
            )
            await ws.close(code=1008)
            return
        try:
            while True:
                raw = await ws.receive_text()
                try:
                    record = json.loads(raw)
                    event = transcript_event_from_record(record)
                except (json.JSONDecodeError, EventStreamError) as exc:
                    await ws.send_text(_error_frame(f"malformed event: {exc}"))
                    continue
                try:
                    await hub.apply(event)
                except SlideRangeError as exc:
                    await ws.send_text(_error_frame(str(exc)))
                except SessionEndedError:
                    await ws.send_text(_error_frame("session already ended"))
                except EventStreamError as exc:
                    await ws.send_text(_error_frame(str(exc)))
        except WebSocketDisconnect:
            pass
        finally:
            await hub.release_ingest()

    @app.websocket("/events")
    async def events(ws: WebSocket) -> None:
        await ws.accept()
        vid, queue, snapshot, report = await hub.attach_viewer()
        try:
            await ws.send_text(_welcome_frame(hub))
            for ev in snapshot:
                await ws.send_text(output_event_to_json(ev))
            if report is not None:
                await ws.send_text(_report_frame(report))

            def offer(frame: str) -> None:
                try:
                    queue.put_nowait(frame)
                except asyncio.QueueFull:
                    pass  # viewer is about to be dropped anyway

            async with anyio.create_task_group() as tg:

                async def writer() -> None:
                    while True:
                        frame = await queue.get()
                        if frame == _DROPPED:
                            await ws.close(code=1013)
                            tg.cancel_scope.cancel()
                            return
                        await ws.send_text(frame)

                tg.start_soon(writer)
                # read edit requests inline; disconnect unwinds the group
                try:
                    while True:
                        raw = await ws.receive_text()
                        try:
                            payload = json.loads(raw)
                        except json.JSONDecodeError as exc:
                            offer(_error_frame(f"bad edit frame: {exc}"))
                            continue
                        try:
                            edit = parse_edit_frame(payload)
                            await hub.edit(edit)
                        except ReportEditError as exc:
                            offer(_error_frame(str(exc)))
                except WebSocketDisconnect:
                    pass
                finally:
                    tg.cancel_scope.cancel()
        except WebSocketDisconnect:
            pass
        finally:
            await hub.detach_viewer(vid)

    if ui_dir is not None and ui_dir.is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


async def feed_events(
    hub: SessionHub,
    events: list[TranscriptEvent],
    speed: float,
) -> None:
    """Release recorded events into the hub at t_ms / speed pacing."""
    loop = asyncio.get_running_loop()
    start = loop.time()
    for event in events:
        due = start + event.t_ms / 1000.0 / speed
        delay = due - loop.time()
        if delay > 0:
            await asyncio.sleep(delay)
        try:
            await hub.apply(event)
        except (SlideRangeError, EventStreamError) as exc:
            log.error("replay event dropped: %s", exc)
    if not hub.ended:
        await hub.apply(TranscriptEvent(type=END, t_ms=events[-1].t_ms if events else 0))

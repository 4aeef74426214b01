"""Command-line entry points: validate, analyze, serve, replay."""

from __future__ import annotations

import logging
import os
import sys
from pathlib import Path

import click
import uvicorn

from .config import DEFAULT_HIGHLIGHT_COLOR, DEFAULT_PORT, Config, build_lexicon
from .engine import run_session
from .errors import DeckValidationError, EventStreamError
from .events_io import load_transcript
from .model import Deck, load_deck
from .report import build_report, render_report
from .server import create_app


def _read_deck(path: str) -> Deck:
    try:
        return load_deck(path)
    except OSError as exc:
        click.echo(f"error: cannot read deck {path}: {exc.strerror or exc}", err=True)
        sys.exit(1)
    except DeckValidationError as exc:
        click.echo(f"error: {path}: {exc}", err=True)
        sys.exit(1)


def _read_transcript(path: str):
    try:
        return load_transcript(path)
    except OSError as exc:
        click.echo(f"error: cannot read transcript {path}: {exc.strerror or exc}", err=True)
        sys.exit(1)
    except EventStreamError as exc:
        click.echo(f"error: {path}: {exc}", err=True)
        sys.exit(1)


def _make_config(**kwargs) -> Config:
    try:
        return Config(**kwargs)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


def _resolve_port(port: int | None) -> int:
    env = os.environ.get("SLIDECOV_PORT")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            click.echo(f"error: SLIDECOV_PORT must be an integer, got {env!r}", err=True)
            sys.exit(2)
    return port if port is not None else DEFAULT_PORT


def default_report_path(deck_path: str, format: str = "json") -> Path:
    p = Path(deck_path)
    ext = ".report.json" if format == "json" else ".report.txt"
    return p.with_name(p.stem + ext)


def _find_ui_dir(explicit: str | None) -> Path | None:
    if explicit is not None:
        return Path(explicit)
    env = os.environ.get("SLIDECOV_UI")
    if env:
        return Path(env)
    local = Path("frontend") / "dist"
    return local if local.is_dir() else None


_lexicon_options = [
    click.option(
        "--stop-list",
        "stop_list",
        type=click.Path(exists=True, dir_okay=False),
        default=None,
        help="Replace the built-in stop-word list (one word per line).",
    ),
    click.option(
        "--min-prefix-len",
        type=click.IntRange(min=2),
        default=3,
        show_default=True,
        help="Shortest shared stem prefix that still counts as a match.",
    ),
    click.option(
        "--chart-words",
        "chart_words",
        type=click.Path(exists=True, dir_okay=False),
        default=None,
        help="JSON file with trigger_words/expansion_words for unlabeled charts.",
    ),
]

_service_options = [
    click.option("--port", type=click.IntRange(1, 65535), default=None,
                 help=f"Listen port (default {DEFAULT_PORT}; SLIDECOV_PORT overrides)."),
    click.option("--host", default="127.0.0.1", show_default=True, help="Bind address."),
    click.option("--color", default=DEFAULT_HIGHLIGHT_COLOR, show_default=True,
                 help="Highlight color forwarded to viewers (6-digit hex)."),
    click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None,
                 help="Where to write the session report (default <deck>.report.json)."),
    click.option("--ui-dir", type=click.Path(file_okay=False), default=None,
                 help="Directory of static viewer assets to serve at / (default frontend/dist)."),
    click.option("--log-level", default="info", show_default=True,
                 type=click.Choice(["critical", "error", "warning", "info", "debug"])),
]


def _with(options):
    def wrap(fn):
        for option in reversed(options):
            fn = option(fn)
        return fn
    return wrap


@click.group()
@click.version_option(package_name="slidecov")
def main() -> None:
    """Align live speech to slide content and report what went unspoken."""


@main.command()
@click.option("--deck", "deck_path", required=True, type=click.Path(dir_okay=False),
              help="Slide deck JSON file.")
def validate(deck_path: str) -> None:
    """Check a deck file against the schema; exit 0 iff it parses."""
    deck = _read_deck(deck_path)
    n_elements = sum(len(s.elements) for s in deck.slides)
    click.echo(f"ok: {len(deck.slides)} slide(s), {n_elements} element(s)", err=True)


@main.command()
@click.option("--deck", "deck_path", required=True, type=click.Path(dir_okay=False),
              help="Slide deck JSON file.")
@click.option("--transcript", "transcript_path", required=True,
              type=click.Path(dir_okay=False), help="Recorded transcript event stream (JSONL).")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None,
              help="Output file (default <deck>.report.json / .report.txt).")
@click.option("--format", "format_", type=click.Choice(["json", "text"]), default="json",
              show_default=True, help="Report rendering.")
@_with(_lexicon_options)
def analyze(deck_path: str, transcript_path: str, out_path: str | None, format_: str,
            stop_list: str | None, min_prefix_len: int, chart_words: str | None) -> None:
    """Replay a recorded transcript offline and write the coverage report."""
    deck = _read_deck(deck_path)
    events = _read_transcript(transcript_path)
    config = _make_config(stop_list_path=stop_list, min_prefix_len=min_prefix_len,
                          chart_words_path=chart_words)
    try:
        lexicon = build_lexicon(config)
    except (OSError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    state, _outputs, end_appended = run_session(deck, lexicon, events)
    if end_appended:
        click.echo(
            f"warning: {transcript_path} has no end event; session closed at the last timestamp",
            err=True,
        )
    # Offline runs must be reproducible byte-for-byte, so no wall-clock stamp.
    report = build_report(deck, state, generated_at="")
    out = Path(out_path) if out_path else default_report_path(deck_path, format_)
    out.write_bytes(render_report(report, format_))
    click.echo(f"wrote {out}", err=True)


def _serve_common(deck_path, port, host, color, out_path, ui_dir, log_level,
                  stop_list, min_prefix_len, chart_words, replay=None):
    deck = _read_deck(deck_path)
    config = _make_config(
        port=_resolve_port(port),
        highlight_color=color,
        stop_list_path=stop_list,
        min_prefix_len=min_prefix_len,
        chart_words_path=chart_words,
        log_level=log_level,
    )
    try:
        lexicon = build_lexicon(config)
    except (OSError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    logging.basicConfig(level=getattr(logging, log_level.upper()))
    report_path = Path(out_path) if out_path else default_report_path(deck_path)
    app = create_app(deck, config, report_path, ui_dir=_find_ui_dir(ui_dir),
                     lexicon=lexicon, replay=replay)
    click.echo(f"serving {deck.title!r} on ws://{host}:{config.port}/ingest and /events", err=True)
    uvicorn.run(app, host=host, port=config.port, log_level=log_level)


@main.command()
@click.option("--deck", "deck_path", required=True, type=click.Path(dir_okay=False),
              help="Slide deck JSON file.")
@_with(_service_options)
@_with(_lexicon_options)
def serve(deck_path, port, host, color, out_path, ui_dir, log_level,
          stop_list, min_prefix_len, chart_words) -> None:
    """Run the live service: one /ingest stream in, any number of /events viewers."""
    _serve_common(deck_path, port, host, color, out_path, ui_dir, log_level,
                  stop_list, min_prefix_len, chart_words)


@main.command()
@click.option("--deck", "deck_path", required=True, type=click.Path(dir_okay=False),
              help="Slide deck JSON file.")
@click.option("--transcript", "transcript_path", required=True,
              type=click.Path(dir_okay=False), help="Recorded transcript event stream (JSONL).")
@click.option("--speed", type=float, default=1.0, show_default=True,
              help="Playback rate multiplier; events fire at t_ms / speed.")
@_with(_service_options)
@_with(_lexicon_options)
def replay(deck_path, transcript_path, speed, port, host, color, out_path, ui_dir,
           log_level, stop_list, min_prefix_len, chart_words) -> None:
    """Serve a recorded transcript as if it were arriving live."""
    if speed <= 0:
        raise click.BadParameter("must be greater than 0", param_hint="'--speed'")
    events = _read_transcript(transcript_path)
    _serve_common(deck_path, port, host, color, out_path, ui_dir, log_level,
                  stop_list, min_prefix_len, chart_words, replay=(events, speed))


if __name__ == "__main__":
    main()

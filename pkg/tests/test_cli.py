"""Command-line behavior: exit codes, diagnostics, deterministic output."""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from conftest import FIXTURES
from slidecov.cli import default_report_path, main
from slidecov.report import parse_report

DECK = str(FIXTURES / "brushes_deck.json")
TRANSCRIPT = str(FIXTURES / "brushes_transcript.jsonl")


@pytest.fixture()
def runner():
    return CliRunner()


def write_deck(tmp_path: Path, data) -> str:
    p = tmp_path / "deck.json"
    p.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return str(p)


class TestValidate:
    def test_valid_deck_exits_zero(self, runner):
        result = runner.invoke(main, ["validate", "--deck", DECK])
        assert result.exit_code == 0
        assert "2 slide(s)" in result.stderr

    def test_duplicate_id_exits_one_with_path(self, runner, tmp_path):
        deck = {
            "title": "x",
            "slides": [{"index": 0, "elements": [
                {"id": "e1", "kind": "text", "bbox": {"x": 0.1, "y": 0.1, "w": 0.2, "h": 0.1}, "text": "a"},
                {"id": "e1", "kind": "text", "bbox": {"x": 0.1, "y": 0.3, "w": 0.2, "h": 0.1}, "text": "b"},
            ]}],
        }
        result = runner.invoke(main, ["validate", "--deck", write_deck(tmp_path, deck)])
        assert result.exit_code == 1
        assert "duplicate element id 'e1'" in result.stderr
        assert "$.slides[0].elements[1]" in result.stderr

    def test_empty_file_exits_one(self, runner, tmp_path):
        result = runner.invoke(main, ["validate", "--deck", write_deck(tmp_path, "")])
        assert result.exit_code == 1
        assert "empty deck file" in result.stderr

    def test_missing_file_exits_one(self, runner, tmp_path):
        result = runner.invoke(main, ["validate", "--deck", str(tmp_path / "nope.json")])
        assert result.exit_code == 1
        assert "cannot read deck" in result.stderr


class TestAnalyze:
    def test_writes_report_to_default_path(self, runner, tmp_path, brushes_deck):
        deck_copy = tmp_path / "demo.json"
        deck_copy.write_bytes(Path(DECK).read_bytes())
        result = runner.invoke(main, ["analyze", "--deck", str(deck_copy), "--transcript", TRANSCRIPT])
        assert result.exit_code == 0, result.stderr
        out = tmp_path / "demo.report.json"
        assert out.exists()
        report = parse_report(out.read_bytes())
        assert report.deck == brushes_deck

    def test_default_path_naming(self):
        assert default_report_path("a/b/deck.json").as_posix() == "a/b/deck.report.json"
        assert default_report_path("deck.v2.json", "text").as_posix() == "deck.v2.report.txt"

    def test_runs_are_byte_identical(self, runner, tmp_path):
        out1, out2 = str(tmp_path / "r1.json"), str(tmp_path / "r2.json")
        for out in (out1, out2):
            result = runner.invoke(
                main, ["analyze", "--deck", DECK, "--transcript", TRANSCRIPT, "--out", out]
            )
            assert result.exit_code == 0, result.stderr
        assert Path(out1).read_bytes() == Path(out2).read_bytes()

    def test_missing_end_event_warns_and_completes(self, runner, tmp_path):
        t = tmp_path / "open.jsonl"
        t.write_text('{"type": "final", "text": "review", "t_ms": 10}\n')
        out = str(tmp_path / "r.json")
        result = runner.invoke(main, ["analyze", "--deck", DECK, "--transcript", str(t), "--out", out])
        assert result.exit_code == 0
        assert "no end event" in result.stderr
        assert parse_report(Path(out).read_bytes()).duration_ms == 10

    def test_empty_transcript_yields_all_uncovered(self, runner, tmp_path):
        t = tmp_path / "empty.jsonl"
        t.write_text("")
        out = str(tmp_path / "r.json")
        result = runner.invoke(main, ["analyze", "--deck", DECK, "--transcript", str(t), "--out", out])
        assert result.exit_code == 0
        report = parse_report(Path(out).read_bytes())
        assert report.slides[0].word_coverage == 0.0
        assert all(m == frozenset() for m in report.matched_units)

    def test_malformed_line_cited(self, runner, tmp_path):
        t = tmp_path / "bad.jsonl"
        t.write_text('{"type": "final", "text": "a", "t_ms": 1}\n{"type": "???"}\n')
        result = runner.invoke(main, ["analyze", "--deck", DECK, "--transcript", str(t)])
        assert result.exit_code == 1
        assert "line 2" in result.stderr

    def test_text_format(self, runner, tmp_path):
        out = str(tmp_path / "r.txt")
        result = runner.invoke(
            main,
            ["analyze", "--deck", DECK, "--transcript", TRANSCRIPT, "--out", out, "--format", "text"],
        )
        assert result.exit_code == 0
        text = Path(out).read_text()
        assert "session report" in text and "Slide 0" in text

    def test_custom_stop_list_changes_matching(self, runner, tmp_path):
        # with "review" as a stop word the circle_body row loses a token
        stops = tmp_path / "stops.txt"
        stops.write_text("review\nthe\nand\n")
        out = str(tmp_path / "r.json")
        result = runner.invoke(
            main,
            ["analyze", "--deck", DECK, "--transcript", TRANSCRIPT, "--out", out,
             "--stop-list", str(stops)],
        )
        assert result.exit_code == 0, result.stderr
        report = parse_report(Path(out).read_bytes())
        assert not any(uid.startswith("circle_body:t:0") for uid in report.matched_units[0])


class TestServeArguments:
    def test_port_out_of_range_rejected(self, runner):
        result = runner.invoke(main, ["serve", "--deck", DECK, "--port", "70000"])
        assert result.exit_code == 2

    def test_bad_color_rejected(self, runner):
        result = runner.invoke(main, ["serve", "--deck", DECK, "--color", "green"])
        assert result.exit_code == 2
        assert "hex color" in result.stderr

    def test_replay_speed_zero_is_usage_error(self, runner):
        result = runner.invoke(
            main, ["replay", "--deck", DECK, "--transcript", TRANSCRIPT, "--speed", "0"]
        )
        assert result.exit_code == 2
        assert "--speed" in result.stderr


class TestPortResolution:
    def test_env_overrides_flag(self, monkeypatch):
        from slidecov.cli import _resolve_port

        monkeypatch.setenv("SLIDECOV_PORT", "9100")
        assert _resolve_port(8000) == 9100
        monkeypatch.delenv("SLIDECOV_PORT")
        assert _resolve_port(8000) == 8000
        assert _resolve_port(None) == 8765

    def test_invalid_env_exits(self, monkeypatch):
        from slidecov.cli import _resolve_port

        monkeypatch.setenv("SLIDECOV_PORT", "http")
        with pytest.raises(SystemExit):
            _resolve_port(None)

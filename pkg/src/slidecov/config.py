"""Service configuration shared by the CLI and the websocket server."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from .lexicon import Lexicon, default_lexicon, load_stop_words

DEFAULT_PORT = 8765
DEFAULT_HIGHLIGHT_COLOR = "#2e7d32"

_COLOR_RE = re.compile(r"^#?([0-9a-fA-F]{6})$")


def normalize_color(value: str) -> str:
    """Return the canonical ``#rrggbb`` form, or raise ValueError."""
    m = _COLOR_RE.match(value.strip())
    if not m:
        raise ValueError(f"highlight color must be a 6-digit hex color, got {value!r}")
    return "#" + m.group(1).lower()


@dataclass(frozen=True)
class Config:
    port: int = DEFAULT_PORT
    highlight_color: str = DEFAULT_HIGHLIGHT_COLOR
    stop_list_path: str | None = None
    min_prefix_len: int = 3
    chart_words_path: str | None = None
    log_level: str = "info"

    def __post_init__(self) -> None:
        if not 1 <= self.port <= 65535:
            raise ValueError(f"port must be in 1..65535, got {self.port}")
        object.__setattr__(self, "highlight_color", normalize_color(self.highlight_color))
        if self.min_prefix_len < 2:
            raise ValueError(f"min_prefix_len must be at least 2, got {self.min_prefix_len}")
        levels = ("critical", "error", "warning", "info", "debug")
        if self.log_level not in levels:
            raise ValueError(f"log_level must be one of {levels}, got {self.log_level!r}")


def _load_chart_words(path: str) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Read a trigger/expansion word list from a JSON file.

    Expected shape: {"trigger_words": [...], "expansion_words": [...]}.
    """
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValueError(f"chart word list {path}: not valid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise ValueError(f"chart word list {path}: expected a JSON object")
    out = []
    for key in ("trigger_words", "expansion_words"):
        words = data.get(key)
        if not isinstance(words, list) or not all(isinstance(w, str) and w.strip() for w in words):
            raise ValueError(f"chart word list {path}: {key!r} must be a list of non-empty strings")
        out.append(tuple(w.strip().lower() for w in words))
    return out[0], out[1]


def build_lexicon(config: Config) -> Lexicon:
    """Construct the matching lexicon the configuration describes."""
    if config.stop_list_path is None and config.chart_words_path is None and config.min_prefix_len == 3:
        return default_lexicon()
    stop_words = load_stop_words(config.stop_list_path)
    base = default_lexicon()
    trigger, expansion = base.chart_trigger_words, base.chart_expansion_words
    if config.chart_words_path is not None:
        raw_trigger, raw_expansion = _load_chart_words(config.chart_words_path)
        trigger, expansion = frozenset(raw_trigger), raw_expansion
    return Lexicon(
        stop_words=stop_words,
        chart_trigger_words=trigger,
        chart_expansion_words=expansion,
        min_prefix_len=config.min_prefix_len,
    )

"""Lexical normalization: stop words, stemming, prefix matching, label expansion.

All functions here are pure; ``Lexicon`` is frozen and hashable so the hot
ones can be memoized.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from ._porter import porter_stem

DEFAULT_MIN_PREFIX_LEN = 3
DEFAULT_CHART_TRIGGER_WORDS = frozenset({"plot", "chart", "graph"})
# Over-inclusive on purpose: a chart mention should light up the chart even
# when the presenter talks about axes or trends rather than the label word.
DEFAULT_CHART_EXPANSION_WORDS = (
    "plot", "chart", "graph", "axis", "axes", "bar", "line", "curve",
    "trend", "legend", "figure", "data",
)

# Spelled-out numbers recognized when Lexicon.match_number_words is on.
_NUMBER_WORDS = {
    "zero": "0", "one": "1", "two": "2", "three": "3", "four": "4",
    "five": "5", "six": "6", "seven": "7", "eight": "8", "nine": "9",
    "ten": "10", "eleven": "11", "twelve": "12", "thirteen": "13",
    "fourteen": "14", "fifteen": "15", "sixteen": "16", "seventeen": "17",
    "eighteen": "18", "nineteen": "19", "twenty": "20", "thirty": "30",
    "forty": "40", "fifty": "50", "sixty": "60", "seventy": "70",
    "eighty": "80", "ninety": "90", "hundred": "100", "thousand": "1000",
}

_EDGE_PUNCT = re.compile(r"^[\W_]+|[\W_]+$", re.UNICODE)
_APOSTROPHES = str.maketrans({"’": "'", "‘": "'", "ʼ": "'"})


@dataclass(frozen=True)
class Lexicon:
    """Matching configuration: stop list, chart-word expansion, prefix rule."""

    stop_words: frozenset[str]
    chart_trigger_words: frozenset[str] = DEFAULT_CHART_TRIGGER_WORDS
    chart_expansion_words: tuple[str, ...] = DEFAULT_CHART_EXPANSION_WORDS
    min_prefix_len: int = DEFAULT_MIN_PREFIX_LEN
    match_number_words: bool = False

    def __post_init__(self) -> None:
        if not self.stop_words:
            raise ValueError("stop_words must be non-empty")
        if self.min_prefix_len < 2:
            raise ValueError(f"min_prefix_len must be >= 2, got {self.min_prefix_len}")


def load_stop_words(path: str | None = None) -> frozenset[str]:
    """Read a stop list: one word per line, '#' comments and blanks ignored."""
    if path is None:
        text = resources.files("slidecov.data").joinpath("stop_words.txt").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    words = set()
    for line in text.splitlines():
        word = line.split("#", 1)[0].strip().lower()
        if word:
            words.add(word)
    return frozenset(words)


@lru_cache(maxsize=8)
def default_lexicon(min_prefix_len: int = DEFAULT_MIN_PREFIX_LEN) -> Lexicon:
    return Lexicon(stop_words=load_stop_words(), min_prefix_len=min_prefix_len)


@lru_cache(maxsize=65536)
def normalize_token(raw: str, lexicon: Lexicon) -> str | None:
    """Canonical word form, or None for stop words and empty leftovers.

    Lowercases, applies NFKC, straightens curly apostrophes, and strips
    punctuation from both ends. Interior punctuation (hyphens, apostrophes)
    is kept.
    """
    word = unicodedata.normalize("NFKC", raw).translate(_APOSTROPHES).lower()
    word = _EDGE_PUNCT.sub("", word)
    if not word:
        return None
    if lexicon.match_number_words:
        word = _NUMBER_WORDS.get(word, word)
    if word in lexicon.stop_words:
        return None
    return word


@lru_cache(maxsize=65536)
def stem(word: str) -> str:
    """Suffix-stripped form used for matching. Input should be normalized."""
    return porter_stem(word)


def stems_match(a: str, b: str, lexicon: Lexicon) -> bool:
    """True when the stems are equal or one extends the other.

    The prefix rule (shared prefix of at least ``min_prefix_len``) is what
    lets a short spoken form like "app" hit "application" on the slide.
    """
    if a == b:
        return True
    if len(a) > len(b):
        a, b = b, a
    return len(a) >= lexicon.min_prefix_len and b.startswith(a)


def split_words(text: str) -> list[str]:
    """Whitespace tokenization. Token indices across the package refer to
    positions in this split."""
    return text.split()


def normalize_words(text: str, lexicon: Lexicon) -> list[str]:
    """Split, normalize, and drop stop words, preserving order."""
    out = []
    for token in split_words(text):
        word = normalize_token(token, lexicon)
        if word is not None:
            out.append(word)
    return out


def expand_labels(labels: list[str] | tuple[str, ...], lexicon: Lexicon) -> list[str]:
    """Add the chart vocabulary when any label word looks chart-like.

    Output keeps the input order, then appends expansion words that are not
    already present (compared on the normalized form). Never removes a label.
    """
    seen: set[str] = set()
    out: list[str] = []
    triggered = False
    for label in labels:
        key = label.strip().lower()
        if key in seen:
            continue
        seen.add(key)
        out.append(label)
        for token in split_words(label):
            word = normalize_token(token, lexicon)
            if word is None:
                continue
            word_stem = stem(word)
            if any(stems_match(word_stem, stem(t), lexicon) for t in lexicon.chart_trigger_words):
                triggered = True
    if triggered:
        for word in lexicon.chart_expansion_words:
            if word.lower() not in seen:
                seen.add(word.lower())
                out.append(word)
    return out

"""Exception types shared across the package."""

from __future__ import annotations


class DeckValidationError(ValueError):
    """Deck file rejected. ``path`` points at the offending field."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.reason = message


class EventStreamError(ValueError):
    """Malformed transcript event. ``line_no`` is 1-based when reading a file."""

    def __init__(self, message: str, line_no: int | None = None):
        prefix = f"line {line_no}: " if line_no is not None else ""
        super().__init__(prefix + message)
        self.line_no = line_no
        self.reason = message


class SessionEndedError(RuntimeError):
    """An event arrived after the end-of-session event."""


class SlideRangeError(ValueError):
    """slide_change targeted a slide index outside the deck."""

    def __init__(self, slide: int, slide_count: int):
        super().__init__(f"slide {slide} out of range (deck has {slide_count} slides)")
        self.slide = slide
        self.slide_count = slide_count


class ReportEditError(ValueError):
    """An edit could not be applied to a report."""

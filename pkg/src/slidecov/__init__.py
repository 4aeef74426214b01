"""Real-time speech-to-slide alignment and post-session coverage reports."""

from .config import Config, build_lexicon
from .engine import (
    DeckIndex,
    OutputEvent,
    SessionState,
    TranscriptEvent,
    align_sequence,
    handle_event,
    new_session,
    run_session,
)
from .errors import (
    DeckValidationError,
    EventStreamError,
    ReportEditError,
    SessionEndedError,
    SlideRangeError,
)
from .events_io import (
    load_transcript,
    output_event_to_json,
    read_transcript_stream,
    transcript_event_to_json,
    write_output_stream,
)
from .lexicon import (
    Lexicon,
    default_lexicon,
    expand_labels,
    load_stop_words,
    normalize_token,
    normalize_words,
    split_words,
    stem,
    stems_match,
)
from .model import BBox, Deck, Element, OcrWord, Slide, load_deck, parse_deck, serialize_deck
from .readorder import MatchUnit, compute_read_order
from .report import (
    Edit,
    Report,
    apply_edit,
    build_report,
    parse_report,
    render_report,
    scrub_timestamps,
)

__version__ = "0.1.0"

__all__ = [
    "BBox",
    "Config",
    "Deck",
    "DeckIndex",
    "DeckValidationError",
    "Edit",
    "Element",
    "EventStreamError",
    "Lexicon",
    "MatchUnit",
    "OcrWord",
    "OutputEvent",
    "Report",
    "ReportEditError",
    "SessionEndedError",
    "SessionState",
    "Slide",
    "SlideRangeError",
    "TranscriptEvent",
    "align_sequence",
    "apply_edit",
    "build_lexicon",
    "build_report",
    "compute_read_order",
    "default_lexicon",
    "expand_labels",
    "handle_event",
    "load_deck",
    "load_stop_words",
    "load_transcript",
    "new_session",
    "normalize_token",
    "normalize_words",
    "output_event_to_json",
    "parse_deck",
    "parse_report",
    "read_transcript_stream",
    "render_report",
    "run_session",
    "scrub_timestamps",
    "serialize_deck",
    "split_words",
    "stem",
    "stems_match",
    "transcript_event_to_json",
    "write_output_stream",
]

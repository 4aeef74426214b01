// Wire contract for the /events websocket. These shapes mirror what the
// service emits; the UI never imports server code.

export interface BBox {
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface OcrWord {
  text: string;
  bbox: BBox;
}

export type ElementKind = 'text' | 'image' | 'video';

export interface DeckElement {
  id: string;
  kind: ElementKind;
  bbox: BBox;
  text?: string;
  token_boxes?: BBox[];
  labels?: string[];
  ocr_words?: OcrWord[];
  alt_text?: string;
  decorative?: boolean;
}

export interface DeckSlide {
  index: number;
  elements: DeckElement[];
}

export interface Deck {
  title: string;
  slides: DeckSlide[];
}

export interface ViewerConfig {
  highlight_color: string;
  min_prefix_len: number;
}

// --- server -> viewer frames ----------------------------------------------

export interface WelcomeFrame {
  type: 'welcome';
  deck: Deck;
  config: ViewerConfig;
}

export interface HighlightFrame {
  type: 'highlight';
  slide: number;
  element_id: string;
  token_index: number;
  t_ms: number;
}

export interface ImageHighlightFrame {
  type: 'image_highlight';
  slide: number;
  element_id: string;
  t_ms: number;
}

export interface VideoReminderFrame {
  type: 'video_reminder';
  slide: number;
  element_id: string;
  t_ms: number;
}

export interface SlideSummaryFrame {
  type: 'slide_summary';
  slide: number;
  word_coverage: number;
  t_ms: number;
}

export interface SessionEndFrame {
  type: 'session_end';
  t_ms: number;
}

export interface ErrorFrame {
  type: 'error';
  reason: string;
}

export interface ElementCoverage {
  element_id: string;
  level: 'uncovered' | 'partial' | 'covered';
  matched_word_count: number;
  total_word_count: number;
  bbox_covered: boolean;
}

export interface SlideCoverage {
  slide: number;
  word_coverage: number;
  elements: ElementCoverage[];
}

export interface Suggestion {
  slide: number;
  element_ids: string[];
  template_id: string;
  rendered_text: string;
}

export interface SessionReport {
  schema_version: number;
  deck: Deck;
  slides: SlideCoverage[];
  suggestions: Suggestion[];
  transcripts: string[];
  matched_units: string[][];
  covered_elements: string[][];
  slides_by_need: number[];
  edits: EditRequest[];
  meta: { duration_ms: number; generated_at: string };
}

export interface ReportFrame {
  type: 'report';
  report: SessionReport;
}

export type ServerFrame =
  | WelcomeFrame
  | HighlightFrame
  | ImageHighlightFrame
  | VideoReminderFrame
  | SlideSummaryFrame
  | SessionEndFrame
  | ErrorFrame
  | ReportFrame;

// --- viewer -> server frames ----------------------------------------------

export type EditKind = 'delete_element' | 'set_alt_text' | 'mark_decorative';

export interface EditRequest {
  kind: EditKind;
  slide: number;
  element_id: string;
  alt_text?: string;
}

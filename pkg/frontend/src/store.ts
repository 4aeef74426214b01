// Append-only session state assembled from /events frames.
//
// Highlight state only ever grows: the wire has no retraction frame and
// the views never un-mark a token, so a revised interim can flicker text
// in the captions but never take a highlight back.

import type {
  Deck,
  SessionReport,
  ServerFrame,
  ViewerConfig,
} from './types.js';

export type TokenKey = string; // `${slide}/${elementId}/${tokenIndex}`
export type ElementKey = string; // `${slide}/${elementId}`

export function tokenKey(slide: number, elementId: string, tokenIndex: number): TokenKey {
  return `${slide}/${elementId}/${tokenIndex}`;
}

export function elementKey(slide: number, elementId: string): ElementKey {
  return `${slide}/${elementId}`;
}

export interface SessionView {
  deck: Deck | null;
  config: ViewerConfig;
  /** Tokens (slide text or OCR words) spoken so far. Grows monotonically. */
  highlighted: ReadonlySet<TokenKey>;
  /** Images whose region has been reached in speech. Grows monotonically. */
  imagesCovered: ReadonlySet<ElementKey>;
  /** Videos the presenter has been reminded to narrate. */
  videoReminders: ReadonlySet<ElementKey>;
  /** Latest word coverage per slide, from slide_summary frames. */
  coverage: ReadonlyMap<number, number>;
  /** Slide of the most recent speech-driven frame; -1 before any. */
  lastEventSlide: number;
  ended: boolean;
  report: SessionReport | null;
  errors: readonly string[];
}

const DEFAULT_CONFIG: ViewerConfig = { highlight_color: '#2e7d32', min_prefix_len: 3 };

export class SessionStore {
  private deck: Deck | null = null;
  private config: ViewerConfig = DEFAULT_CONFIG;
  private highlighted = new Set<TokenKey>();
  private imagesCovered = new Set<ElementKey>();
  private videoReminders = new Set<ElementKey>();
  private coverage = new Map<number, number>();
  private lastEventSlide = -1;
  private ended = false;
  private report: SessionReport | null = null;
  private errors: string[] = [];
  private listeners = new Set<(view: SessionView) => void>();

  subscribe(fn: (view: SessionView) => void): () => void {
    this.listeners.add(fn);
    return () => this.listeners.delete(fn);
  }

  get view(): SessionView {
    return {
      deck: this.deck,
      config: this.config,
      highlighted: this.highlighted,
      imagesCovered: this.imagesCovered,
      videoReminders: this.videoReminders,
      coverage: this.coverage,
      lastEventSlide: this.lastEventSlide,
      ended: this.ended,
      report: this.report,
      errors: this.errors,
    };
  }

  apply(frame: ServerFrame): void {
    switch (frame.type) {
      case 'welcome':
        this.deck = frame.deck;
        this.config = frame.config;
        break;
      case 'highlight':
        this.highlighted.add(tokenKey(frame.slide, frame.element_id, frame.token_index));
        this.lastEventSlide = frame.slide;
        break;
      case 'image_highlight':
        this.imagesCovered.add(elementKey(frame.slide, frame.element_id));
        this.lastEventSlide = frame.slide;
        break;
      case 'video_reminder':
        this.videoReminders.add(elementKey(frame.slide, frame.element_id));
        this.lastEventSlide = frame.slide;
        break;
      case 'slide_summary':
        this.coverage.set(frame.slide, frame.word_coverage);
        break;
      case 'session_end':
        this.ended = true;
        break;
      case 'report':
        this.report = frame.report;
        break;
      case 'error':
        this.errors.push(frame.reason);
        break;
    }
    for (const fn of this.listeners) fn(this.view);
  }

  applyRaw(data: string): void {
    let frame: ServerFrame;
    try {
      frame = JSON.parse(data) as ServerFrame;
    } catch {
      return; // not ours; ignore rather than wedge the stream
    }
    if (frame && typeof frame === 'object' && typeof frame.type === 'string') {
      this.apply(frame);
    }
  }
}

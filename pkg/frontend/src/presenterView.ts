// Live presenter view: the active slide with spoken words tinted, covered
// images outlined, pending video reminders badged, and a coverage gauge.
//
// Rendering is a pure function of (SessionView, slide index); every frame
// re-renders the whole slide. Highlight state lives in the store and only
// grows, so a token that gained the "hit" class keeps it on every
// subsequent render.

import { elementKey, tokenKey, type SessionView } from './store.js';
import type { BBox, DeckElement } from './types.js';

function pct(v: number): string {
  return `${(v * 100).toFixed(2)}%`;
}

function place(node: HTMLElement, box: BBox): void {
  node.style.position = 'absolute';
  node.style.left = pct(box.x);
  node.style.top = pct(box.y);
  node.style.width = pct(box.w);
  node.style.height = pct(box.h);
}

/** Split exactly like the alignment side: any whitespace, order preserved. */
export function tokenize(text: string): string[] {
  return text.split(/\s+/).filter((t) => t.length > 0);
}

function renderText(
  el: DeckElement,
  slide: number,
  view: SessionView,
  doc: Document,
): HTMLElement {
  const node = doc.createElement('div');
  node.className = 'el text';
  tokenize(el.text ?? '').forEach((word, i) => {
    const span = doc.createElement('span');
    span.className = 'tok';
    span.textContent = word;
    span.dataset.tokenKey = tokenKey(slide, el.id, i);
    if (view.highlighted.has(tokenKey(slide, el.id, i))) {
      span.classList.add('hit');
      span.style.backgroundColor = view.config.highlight_color;
    }
    node.appendChild(span);
    node.appendChild(doc.createTextNode(' '));
  });
  return node;
}

function renderImage(
  el: DeckElement,
  slide: number,
  view: SessionView,
  doc: Document,
): HTMLElement {
  const node = doc.createElement('div');
  node.className = 'el image';
  const covered = view.imagesCovered.has(elementKey(slide, el.id));
  if (covered) {
    node.classList.add('covered');
    node.style.outline = `3px solid ${view.config.highlight_color}`;
  }
  const caption = doc.createElement('span');
  caption.className = 'caption';
  caption.textContent = el.alt_text || (el.labels ?? []).join(', ') || el.id;
  node.appendChild(caption);
  // OCR words sit at slide coordinates; re-express them inside the image box.
  (el.ocr_words ?? []).forEach((w, i) => {
    const span = doc.createElement('span');
    span.className = 'tok ocr';
    span.textContent = w.text;
    span.dataset.tokenKey = tokenKey(slide, el.id, i);
    span.style.position = 'absolute';
    span.style.left = pct((w.bbox.x - el.bbox.x) / el.bbox.w);
    span.style.top = pct((w.bbox.y - el.bbox.y) / el.bbox.h);
    if (view.highlighted.has(tokenKey(slide, el.id, i))) {
      span.classList.add('hit');
      span.style.backgroundColor = view.config.highlight_color;
    }
    node.appendChild(span);
  });
  return node;
}

function renderVideo(
  el: DeckElement,
  slide: number,
  view: SessionView,
  doc: Document,
): HTMLElement {
  const node = doc.createElement('div');
  node.className = 'el video';
  node.textContent = '▶';
  if (view.videoReminders.has(elementKey(slide, el.id))) {
    const badge = doc.createElement('span');
    badge.className = 'badge reminder';
    badge.textContent = 'narrate this video';
    node.appendChild(badge);
  }
  return node;
}

export function renderPresenter(
  root: HTMLElement,
  view: SessionView,
  slideIndex: number,
): void {
  const doc = root.ownerDocument;
  root.textContent = '';
  if (!view.deck || !view.deck.slides[slideIndex]) {
    const empty = doc.createElement('p');
    empty.className = 'empty';
    empty.textContent = 'waiting for the session…';
    root.appendChild(empty);
    return;
  }

  const header = doc.createElement('header');
  header.className = 'gauge-bar';
  const label = doc.createElement('span');
  label.className = 'slide-label';
  label.textContent = `${view.deck.title} — slide ${slideIndex}`;
  header.appendChild(label);

  const gauge = doc.createElement('div');
  gauge.className = 'gauge';
  const fill = doc.createElement('div');
  fill.className = 'gauge-fill';
  const coverage = view.coverage.get(slideIndex);
  fill.style.width = coverage === undefined ? '0%' : pct(coverage);
  fill.style.backgroundColor = view.config.highlight_color;
  gauge.appendChild(fill);
  header.appendChild(gauge);

  const value = doc.createElement('span');
  value.className = 'gauge-value';
  value.dataset.slide = String(slideIndex);
  value.textContent =
    coverage === undefined ? '—' : `${Math.round(coverage * 100)}%`;
  header.appendChild(value);
  root.appendChild(header);

  const canvas = doc.createElement('div');
  canvas.className = 'slide';
  for (const el of view.deck.slides[slideIndex].elements) {
    let node: HTMLElement;
    if (el.kind === 'text') node = renderText(el, slideIndex, view, doc);
    else if (el.kind === 'image') node = renderImage(el, slideIndex, view, doc);
    else node = renderVideo(el, slideIndex, view, doc);
    if (el.decorative) node.classList.add('decorative');
    node.dataset.elementId = el.id;
    place(node, el.bbox);
    canvas.appendChild(node);
  }
  root.appendChild(canvas);

  if (view.ended) {
    const done = doc.createElement('p');
    done.className = 'session-over';
    done.textContent = 'session ended — report available';
    root.appendChild(done);
  }
}

// Post-session report view: slides ordered worst-first, per-element
// coverage levels, and actionable suggestions. Hovering a suggestion
// outlines the elements it talks about; the buttons send edit frames and
// the server answers with a fresh report frame, which re-renders the view.

import type {
  DeckElement,
  EditRequest,
  SessionReport,
  SlideCoverage,
  Suggestion,
} from './types.js';

export interface ReportActions {
  send: (edit: EditRequest) => void;
  /** Ask the user for alt-text; null cancels. Injected so tests can script it. */
  promptAltText: (elementId: string) => string | null;
}

function findElement(report: SessionReport, slide: number, id: string): DeckElement | undefined {
  return report.deck.slides[slide]?.elements.find((e) => e.id === id);
}

function levelChip(doc: Document, level: string): HTMLElement {
  const chip = doc.createElement('span');
  chip.className = `chip ${level}`;
  chip.textContent = level;
  return chip;
}

function renderElementRow(doc: Document, cov: SlideCoverage, elementId: string): HTMLElement {
  const entry = cov.elements.find((e) => e.element_id === elementId);
  const li = doc.createElement('li');
  li.className = 'element-row';
  li.dataset.elementId = elementId;
  const name = doc.createElement('code');
  name.textContent = elementId;
  li.appendChild(name);
  if (entry) {
    li.appendChild(levelChip(doc, entry.level));
    if (entry.total_word_count > 0) {
      const counts = doc.createElement('span');
      counts.className = 'counts';
      counts.textContent = `${entry.matched_word_count}/${entry.total_word_count} words`;
      li.appendChild(counts);
    }
  }
  return li;
}

function editButtons(
  doc: Document,
  suggestion: Suggestion,
  elementId: string,
  report: SessionReport,
  actions: ReportActions,
): HTMLElement {
  const wrap = doc.createElement('span');
  wrap.className = 'edit-actions';
  const el = findElement(report, suggestion.slide, elementId);

  const mk = (label: string, onClick: () => void): void => {
    const btn = doc.createElement('button');
    btn.type = 'button';
    btn.textContent = `${label} ${elementId}`;
    btn.dataset.action = label.toLowerCase().replace(/ /g, '_');
    btn.dataset.elementId = elementId;
    btn.addEventListener('click', onClick);
    wrap.appendChild(btn);
  };

  mk('delete', () =>
    actions.send({ kind: 'delete_element', slide: suggestion.slide, element_id: elementId }),
  );
  mk('mark decorative', () =>
    actions.send({ kind: 'mark_decorative', slide: suggestion.slide, element_id: elementId }),
  );
  if (el?.kind === 'image') {
    mk('add alt-text', () => {
      const text = actions.promptAltText(elementId);
      if (text !== null) {
        actions.send({
          kind: 'set_alt_text',
          slide: suggestion.slide,
          element_id: elementId,
          alt_text: text,
        });
      }
    });
  }
  return wrap;
}

function renderSuggestion(
  doc: Document,
  suggestion: Suggestion,
  section: HTMLElement,
  report: SessionReport,
  actions: ReportActions,
): HTMLElement {
  const li = doc.createElement('li');
  li.className = 'suggestion';
  li.dataset.elementIds = suggestion.element_ids.join(',');
  const text = doc.createElement('p');
  text.textContent = suggestion.rendered_text;
  li.appendChild(text);
  for (const id of suggestion.element_ids) {
    li.appendChild(editButtons(doc, suggestion, id, report, actions));
  }
  const flag = (on: boolean) => () => {
    for (const id of suggestion.element_ids) {
      section
        .querySelectorAll(`[data-element-id="${id}"]`)
        .forEach((n) => n.classList.toggle('flagged', on));
    }
  };
  li.addEventListener('mouseenter', flag(true));
  li.addEventListener('mouseleave', flag(false));
  return li;
}

export function renderReport(
  root: HTMLElement,
  report: SessionReport,
  actions: ReportActions,
): void {
  const doc = root.ownerDocument;
  root.textContent = '';

  const title = doc.createElement('h2');
  title.textContent = `${report.deck.title} — session report`;
  root.appendChild(title);

  const meta = doc.createElement('p');
  meta.className = 'meta';
  const minutes = (report.meta.duration_ms / 60000).toFixed(1);
  meta.textContent = `${report.deck.slides.length} slide(s), ${minutes} min, ${report.edits.length} edit(s) applied`;
  root.appendChild(meta);

  for (const slideIndex of report.slides_by_need) {
    const cov = report.slides[slideIndex];
    if (!cov) continue;
    const section = doc.createElement('section');
    section.className = 'slide-report';
    section.dataset.slide = String(slideIndex);

    const heading = doc.createElement('h3');
    heading.textContent = `Slide ${slideIndex} — ${Math.round(cov.word_coverage * 100)}% spoken`;
    section.appendChild(heading);

    const rows = doc.createElement('ul');
    rows.className = 'elements';
    for (const e of cov.elements) {
      rows.appendChild(renderElementRow(doc, cov, e.element_id));
    }
    section.appendChild(rows);

    const slideSuggestions = report.suggestions.filter((s) => s.slide === slideIndex);
    if (slideSuggestions.length > 0) {
      const list = doc.createElement('ul');
      list.className = 'suggestions';
      for (const s of slideSuggestions) {
        list.appendChild(renderSuggestion(doc, s, section, report, actions));
      }
      section.appendChild(list);
    }
    root.appendChild(section);
  }
}

// Browser bootstrap: one websocket, one store, two views with a tab bar.
// The presenter tab auto-follows the slide the speech events land on until
// the user navigates manually.

import { renderPresenter } from './presenterView.js';
import { renderReport } from './reportView.js';
import { SessionStore } from './store.js';
import { EventsClient, eventsUrl } from './wsClient.js';

type Tab = 'presenter' | 'report';

export function boot(root: HTMLElement, client: EventsClient): void {
  const doc = root.ownerDocument;
  const store = new SessionStore();
  let tab: Tab = 'presenter';
  let manualSlide: number | null = null;
  let status = 'connecting';

  const bar = doc.createElement('nav');
  bar.className = 'tabs';
  const stage = doc.createElement('main');
  stage.className = 'stage';
  root.appendChild(bar);
  root.appendChild(stage);

  const button = (label: string, onClick: () => void): HTMLButtonElement => {
    const b = doc.createElement('button');
    b.type = 'button';
    b.textContent = label;
    b.addEventListener('click', onClick);
    bar.appendChild(b);
    return b;
  };

  const presenterBtn = button('presenter', () => {
    tab = 'presenter';
    render();
  });
  const reportBtn = button('report', () => {
    tab = 'report';
    render();
  });
  button('◀', () => {
    manualSlide = Math.max(0, currentSlide() - 1);
    render();
  });
  button('▶', () => {
    const last = (store.view.deck?.slides.length ?? 1) - 1;
    manualSlide = Math.min(last, currentSlide() + 1);
    render();
  });
  button('follow', () => {
    manualSlide = null;
    render();
  });
  const statusEl = doc.createElement('span');
  statusEl.className = 'status';
  bar.appendChild(statusEl);

  function currentSlide(): number {
    if (manualSlide !== null) return manualSlide;
    return Math.max(0, store.view.lastEventSlide);
  }

  function render(): void {
    const view = store.view;
    statusEl.textContent = status;
    presenterBtn.classList.toggle('active', tab === 'presenter');
    reportBtn.classList.toggle('active', tab === 'report');
    if (tab === 'report' && view.report) {
      renderReport(stage, view.report, {
        send: (edit) => client.sendEdit(edit),
        promptAltText: (elementId) =>
          window.prompt(`Alt-text for ${elementId}:`, '') ?? null,
      });
    } else {
      renderPresenter(stage, view, currentSlide());
    }
  }

  store.subscribe((view) => {
    // Jump to the report when it first lands.
    if (view.report && view.ended && tab === 'presenter') tab = 'report';
    render();
  });
  client.connect(
    (data) => store.applyRaw(data),
    (s) => {
      status = s;
      render();
    },
  );
  render();
}

declare const window: Window & typeof globalThis;

if (typeof document !== 'undefined' && document.getElementById('app')) {
  const client = new EventsClient(
    () => new WebSocket(eventsUrl(window.location)) as unknown as import('./wsClient.js').ViewerSocket,
  );
  boot(document.getElementById('app')!, client);
}

/** DOM rendering: exactly one snippet on screen, five grade buttons, the
 * rubric, progress, and a stop option.  Nothing here ever receives a model
 * identity; the service never sends one. */

import { SessionController, ViewState } from './controller.js';
import { highlight } from './highlight.js';
import { RUBRIC } from './rubric.js';

export function mount(
  root: HTMLElement,
  controller: SessionController,
  doc: Document,
): void {
  controller.onChange((state) => render(root, controller, state, doc));
  render(root, controller, controller.getState(), doc);
}

function render(
  root: HTMLElement,
  controller: SessionController,
  state: ViewState,
  doc: Document,
): void {
  root.textContent = '';
  switch (state.kind) {
    case 'loading':
      root.appendChild(text(doc, 'p', 'Loading…', 'status'));
      return;
    case 'offline': {
      const banner = text(doc, 'div', state.message, 'banner-error');
      const retry = button(doc, 'Retry', 'retry-button', () => void controller.retry());
      banner.appendChild(retry);
      root.appendChild(banner);
      return;
    }
    case 'done': {
      const panel = element(doc, 'div', 'completion');
      panel.appendChild(text(doc, 'h2', 'All done. Thank you!'));
      panel.appendChild(
        text(doc, 'p', `Progress: ${state.graded} / ${state.total}`, 'progress'),
      );
      root.appendChild(panel);
      return;
    }
    case 'stopped': {
      const panel = element(doc, 'div', 'completion');
      panel.appendChild(text(doc, 'h2', 'Session paused'));
      panel.appendChild(
        text(
          doc,
          'p',
          `You graded ${state.graded} of ${state.total} snippets; come back any time.`,
          'progress',
        ),
      );
      root.appendChild(panel);
      return;
    }
    case 'grading':
    case 'submitting':
      break;
  }

  const busy = state.kind === 'submitting';
  const task = element(doc, 'div', 'task');

  const intentPanel = element(doc, 'section', 'intent-panel');
  intentPanel.appendChild(text(doc, 'h2', 'Problem'));
  intentPanel.appendChild(text(doc, 'p', state.item.intent, 'intent'));
  task.appendChild(intentPanel);

  const snippetPanel = element(doc, 'section', 'snippet-panel');
  snippetPanel.appendChild(text(doc, 'h2', 'Snippet'));
  const pre = element(doc, 'pre', 'snippet');
  const code = element(doc, 'code');
  code.innerHTML = highlight(state.item.snippet);
  pre.appendChild(code);
  snippetPanel.appendChild(pre);
  task.appendChild(snippetPanel);

  if (state.kind === 'grading' && state.notice) {
    task.appendChild(text(doc, 'div', state.notice, 'banner-error'));
  }

  const buttons = element(doc, 'div', 'grade-buttons');
  for (const entry of RUBRIC) {
    const btn = button(
      doc,
      String(entry.grade),
      `grade-button grade-${entry.grade}`,
      () => void controller.grade(entry.grade),
    );
    btn.setAttribute('data-grade', String(entry.grade));
    btn.title = entry.label;
    if (busy) {
      btn.disabled = true;
    }
    const wrapper = element(doc, 'div', 'grade-option');
    wrapper.appendChild(btn);
    wrapper.appendChild(text(doc, 'span', entry.label, 'grade-label'));
    buttons.appendChild(wrapper);
  }
  task.appendChild(buttons);

  const footer = element(doc, 'footer', 'footer');
  footer.appendChild(
    text(doc, 'span', `Graded ${state.graded} of ${state.total}`, 'progress'),
  );
  footer.appendChild(
    button(doc, 'Stop for now', 'stop-button', () => controller.stop()),
  );
  footer.appendChild(
    text(doc, 'span', busy ? 'Submitting…' : 'Keys 0-4 grade the snippet', 'hint'),
  );
  task.appendChild(footer);
  root.appendChild(task);
}

function element(doc: Document, tag: string, className?: string): HTMLElement {
  const node = doc.createElement(tag);
  if (className) {
    node.className = className;
  }
  return node;
}

function text(
  doc: Document,
  tag: string,
  content: string,
  className?: string,
): HTMLElement {
  const node = element(doc, tag, className);
  node.textContent = content;
  return node;
}

function button(
  doc: Document,
  label: string,
  className: string,
  onClick: () => void,
): HTMLButtonElement {
  const node = element(doc, 'button', className) as HTMLButtonElement;
  node.type = 'button';
  node.textContent = label;
  node.addEventListener('click', onClick);
  return node;
}

/** Keyboard shortcuts: digits 0-4 grade the current snippet. */
export function bindKeys(doc: Document, controller: SessionController): void {
  doc.addEventListener('keydown', (event) => {
    const key = (event as KeyboardEvent).key;
    if (key >= '0' && key <= '4') {
      void controller.grade(Number(key));
    }
  });
}

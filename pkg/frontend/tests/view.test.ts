import assert from 'node:assert/strict';
import { test } from 'node:test';
import { JSDOM } from 'jsdom';

import type { ApiClient, NextPayload, SubmitResult } from '../src/api.js';
import { SessionController } from '../src/controller.js';
import { highlight } from '../src/highlight.js';
import { bindKeys, mount } from '../src/view.js';

class OneItemApi {
  submissions: Array<{ itemId: string; grade: number }> = [];
  private served = false;

  async progress() {
    return { graded: 0, total: 1 };
  }

  async next(): Promise<NextPayload> {
    if (this.served) {
      return { done: true, graded: 1, total: 1 };
    }
    return {
      item_id: 'i0',
      intent: 'reverse a list',
      snippet: 'xs = xs[::-1]  # reverse',
    };
  }

  async submitGrade(_g: string, itemId: string, grade: number): Promise<SubmitResult> {
    this.submissions.push({ itemId, grade });
    this.served = true;
    return { kind: 'ok' };
  }
}

function setup() {
  const dom = new JSDOM('<main id="app"></main>');
  const doc = dom.window.document;
  const api = new OneItemApi();
  const controller = new SessionController(api as unknown as ApiClient, 'v');
  mount(doc.getElementById('app') as HTMLElement, controller, doc);
  return { dom, doc, api, controller };
}

test('task view shows intent, snippet, rubric buttons, progress, stop', async () => {
  const { doc, controller } = setup();
  await controller.start();
  const root = doc.getElementById('app')!;
  assert.match(root.querySelector('.intent')!.textContent!, /reverse a list/);
  assert.match(root.querySelector('.snippet')!.textContent!, /xs\[::-1\]/);
  const buttons = [...root.querySelectorAll('.grade-button')];
  assert.deepEqual(
    buttons.map((b) => b.getAttribute('data-grade')),
    ['0', '1', '2', '3', '4'],
  );
  // grade button 5 does not exist
  assert.equal(root.querySelector('[data-grade="5"]'), null);
  assert.match(root.querySelector('.progress')!.textContent!, /0 of 1/);
  assert.ok(root.querySelector('.stop-button'));
  // rubric labels are on screen
  assert.match(root.textContent!, /not at all helpful/);
  assert.match(root.textContent!, /solves the problem/);
});

test('clicking a grade button submits once and advances to completion', async () => {
  const { doc, api, controller } = setup();
  await controller.start();
  const root = doc.getElementById('app')!;
  const button = root.querySelector('[data-grade="3"]') as HTMLButtonElement;
  button.click();
  button.click(); // double click must not double-submit
  await new Promise((resolve) => setTimeout(resolve, 20));
  assert.deepEqual(api.submissions, [{ itemId: 'i0', grade: 3 }]);
  assert.match(root.textContent!, /All done/);
  assert.match(root.querySelector('.progress')!.textContent!, /1 \/ 1/);
});

test('keyboard shortcut issues a grade', async () => {
  const { dom, doc, api, controller } = setup();
  await controller.start();
  bindKeys(doc, controller);
  doc.dispatchEvent(new dom.window.KeyboardEvent('keydown', { key: '2' }));
  await new Promise((resolve) => setTimeout(resolve, 20));
  assert.deepEqual(api.submissions, [{ itemId: 'i0', grade: 2 }]);
});

test('highlighting wraps tokens and escapes markup', () => {
  const html = highlight('for x in xs:  # <b>\n    print("done")');
  assert.match(html, /tok-keyword/);
  assert.match(html, /tok-string/);
  assert.match(html, /tok-comment/);
  assert.ok(!html.includes('<b>'));
  assert.ok(html.includes('&lt;b&gt;'));
});

/** Browser entry point: ask for a grader id once, then run the session. */

import { ApiClient } from './api.js';
import { SessionController } from './controller.js';
import { bindKeys, mount } from './view.js';

const STORAGE_KEY = 'codescore-grader-id';

function graderId(): string {
  let id = window.localStorage.getItem(STORAGE_KEY);
  if (!id) {
    id = window.prompt('Enter your grader id:')?.trim() || '';
    if (!id) {
      id = `grader-${Math.random().toString(36).slice(2, 10)}`;
    }
    window.localStorage.setItem(STORAGE_KEY, id);
  }
  return id;
}

function start(): void {
  const root = document.getElementById('app');
  if (!root) {
    throw new Error('missing #app element');
  }
  const api = new ApiClient('', window.fetch.bind(window));
  const controller = new SessionController(api, graderId());
  mount(root, controller, document);
  bindKeys(document, controller);
  void controller.start();
}

document.addEventListener('DOMContentLoaded', start);

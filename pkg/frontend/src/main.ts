/**
 * Browser bootstrap: wire the controller to the DOM.  One session per
 * tab; re-render on every state change; refresh only on explicit
 * actions, never on a timer.
 */

import { ApiClient } from './api';
import { Controller } from './controller';
import { renderApp } from './render';

const root = document.getElementById('app');
if (!root) {
  throw new Error('missing #app container');
}
const app: HTMLElement = root;
const baseUrl = (window as { DELIBERATOR_URL?: string }).DELIBERATOR_URL ?? '';
const controller = new Controller(new ApiClient(baseUrl));

function draftValue(): string {
  const area = document.getElementById('draft') as HTMLTextAreaElement | null;
  return area ? area.value : '';
}

function literalValue(): string {
  const input = document.getElementById('inspect-literal') as HTMLInputElement | null;
  return input ? input.value : '';
}

function paint(): void {
  app.innerHTML = renderApp(controller.state);
}

app.addEventListener('click', (event) => {
  const target = event.target as HTMLElement;
  if (target.id === 'submit') {
    void controller.submitStatement(draftValue()).then(paint);
  } else if (target.id === 'undo') {
    void controller.undo().then(paint);
  } else if (target.id === 'inspect-go') {
    void controller.inspect(literalValue()).then(paint);
  } else if (target.id === 'retry') {
    void controller.submitStatement(controller.state.draft).then(paint);
  } else if (target.classList.contains('inspect-link')) {
    const literal = target.dataset.literal;
    if (literal) {
      void controller.inspect(literal).then(paint);
    }
  }
});

app.addEventListener('input', (event) => {
  const target = event.target as HTMLElement;
  if (target.id === 'draft') {
    controller.setDraft((target as HTMLTextAreaElement).value);
  }
});

void controller.refresh().then(paint);

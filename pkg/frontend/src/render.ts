import type { Decision, ReviewState } from './state.js';
import { isFlagged } from './state.js';

export type DecideHandler = (index: number, decision: 'accepted' | 'rejected') => void;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

function decisionButton(
  label: string,
  decision: 'accepted' | 'rejected',
  current: Decision,
  onClick: () => void,
): HTMLButtonElement {
  const button = el('button', 'decision', label);
  button.type = 'button';
  if (current === decision) {
    button.classList.add('chosen');
  }
  button.addEventListener('click', onClick);
  return button;
}

function buildCard(
  state: ReviewState,
  index: number,
  onDecide: DecideHandler,
): HTMLElement {
  const result = state.results[index]!;
  const card = el('article', 'card');
  card.dataset['index'] = String(index);
  card.dataset['prediction'] = result.prediction;

  const header = el('header');
  header.append(
    el('span', 'name', result.function_name),
    el('span', `badge ${result.prediction}`, result.prediction),
    el('span', 'confidence', result.confidence.toFixed(3)),
  );
  card.append(header);

  if (result.docstring !== undefined) {
    const block = el('section', 'original');
    block.append(el('h3', undefined, 'Current'), el('pre', undefined, result.docstring));
    card.append(block);
  }

  if (isFlagged(result)) {
    const block = el('section', 'recommended');
    block.append(
      el('h3', undefined, 'Recommended'),
      el('pre', undefined, result.recommended_docstring),
    );
    card.append(block);

    const current = state.decisions[index] ?? 'pending';
    const actions = el('div', 'actions');
    actions.append(
      decisionButton('Accept', 'accepted', current, () => onDecide(index, 'accepted')),
      decisionButton('Reject', 'rejected', current, () => onDecide(index, 'rejected')),
    );
    card.append(actions);
  }

  return card;
}

/** Rebuild the card list, one card per function in source order. */
export function renderCards(
  container: HTMLElement,
  state: ReviewState,
  onDecide: DecideHandler,
): void {
  container.replaceChildren();
  for (let i = 0; i < state.results.length; i += 1) {
    container.append(buildCard(state, i, onDecide));
  }
}

export function renderStatus(node: HTMLElement, message: string, isError = false): void {
  node.textContent = message;
  node.classList.toggle('error', isError);
}

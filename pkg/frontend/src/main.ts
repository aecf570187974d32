import { ApiError, checkSource, fetchLanguages } from './api.js';
import { applyDecisions } from './patch.js';
import { renderCards, renderStatus } from './render.js';
import {
  acceptedIndices,
  decide,
  emptyState,
  isFlagged,
  loadResponse,
  type ReviewState,
} from './state.js';

const EXTENSIONS: Record<string, string> = {
  python: 'py',
  java: 'java',
  javascript: 'js',
  ruby: 'rb',
  go: 'go',
  php: 'php',
  c: 'c',
  cpp: 'cpp',
  csharp: 'cs',
  rust: 'rs',
};

function apiBase(): string {
  const w = window as { DOCCHECK_API?: string };
  return w.DOCCHECK_API ?? '';
}

interface Page {
  source: HTMLTextAreaElement;
  language: HTMLSelectElement;
  threshold: HTMLInputElement;
  submit: HTMLButtonElement;
  cards: HTMLElement;
  status: HTMLElement;
  preview: HTMLElement;
  download: HTMLAnchorElement;
}

function lookup(doc: Document): Page {
  const byId = <T extends HTMLElement>(id: string): T => {
    const node = doc.getElementById(id);
    if (!node) {
      throw new Error(`missing #${id}`);
    }
    return node as T;
  };
  return {
    source: byId<HTMLTextAreaElement>('source'),
    language: byId<HTMLSelectElement>('language'),
    threshold: byId<HTMLInputElement>('threshold'),
    submit: byId<HTMLButtonElement>('submit'),
    cards: byId('cards'),
    status: byId('status'),
    preview: byId('preview'),
    download: byId<HTMLAnchorElement>('download'),
  };
}

export function init(doc: Document): { submitNow: () => Promise<void> } {
  const page = lookup(doc);
  let state: ReviewState = emptyState();
  let busy = false;

  const syncSubmit = (): void => {
    page.submit.disabled = busy || page.source.value.trim() === '';
  };

  const syncDownload = (): void => {
    const accepted = acceptedIndices(state);
    if (accepted.length === 0) {
      page.preview.textContent = '';
      page.download.removeAttribute('href');
      page.download.classList.add('disabled');
      return;
    }
    try {
      const patched = applyDecisions(state);
      state.patched = patched;
      page.preview.textContent = patched;
      const ext = EXTENSIONS[state.language] ?? 'txt';
      page.download.download = `patched.${ext}`;
      page.download.href =
        'data:text/plain;charset=utf-8,' + encodeURIComponent(patched);
      page.download.classList.remove('disabled');
    } catch (err) {
      renderStatus(page.status, String(err instanceof Error ? err.message : err), true);
    }
  };

  const onDecide = (index: number, decision: 'accepted' | 'rejected'): void => {
    decide(state, index, decision);
    renderCards(page.cards, state, onDecide);
    syncDownload();
  };

  const submitNow = async (): Promise<void> => {
    if (busy || page.source.value.trim() === '') {
      return;
    }
    busy = true;
    syncSubmit();
    renderStatus(page.status, 'Checking...');
    try {
      const thresholdText = page.threshold.value.trim();
      const response = await checkSource(
        apiBase(),
        page.source.value,
        page.language.value,
        thresholdText === '' ? undefined : Number(thresholdText),
      );
      state = loadResponse(page.source.value, page.language.value, response);
      renderCards(page.cards, state, onDecide);
      syncDownload();
      const flagged = state.results.filter(isFlagged).length;
      renderStatus(
        page.status,
        `${state.results.length} functions, ${flagged} flagged (${state.modelVersion})`,
      );
    } catch (err) {
      const message = err instanceof ApiError ? err.message : String(err);
      renderStatus(page.status, message, true);
    } finally {
      busy = false;
      syncSubmit();
    }
  };

  const populateLanguages = async (): Promise<void> => {
    try {
      const languages = await fetchLanguages(apiBase());
      page.language.replaceChildren();
      for (const info of languages) {
        const option = doc.createElement('option');
        option.value = info.id;
        option.textContent = `${info.id} (${info.supported})`;
        page.language.append(option);
      }
      page.language.value = 'python';
    } catch {
      renderStatus(page.status, 'Language list unavailable; using defaults', true);
    }
  };

  page.source.addEventListener('input', syncSubmit);
  page.submit.addEventListener('click', () => {
    void submitNow();
  });
  syncSubmit();
  syncDownload();
  void populateLanguages();
  return { submitNow };
}

if (typeof document !== 'undefined' && document.getElementById('source')) {
  init(document);
}

import type { CheckResponse, CheckResult, EditHint } from './api.js';

export type Decision = 'pending' | 'accepted' | 'rejected';

export interface ReviewState {
  source: string;
  language: string;
  results: CheckResult[];
  edits: EditHint[];
  /** One slot per result; null for functions that need no decision. */
  decisions: (Decision | null)[];
  patched: string | null;
  modelVersion: string;
}

export function isFlagged(result: CheckResult): boolean {
  return result.prediction === 'inconsistent' || result.prediction === 'missing_docstring';
}

export function emptyState(): ReviewState {
  return {
    source: '',
    language: '',
    results: [],
    edits: [],
    decisions: [],
    patched: null,
    modelVersion: '',
  };
}

export function loadResponse(
  source: string,
  language: string,
  response: CheckResponse,
): ReviewState {
  return {
    source,
    language,
    results: response.results,
    edits: response.edits,
    decisions: response.results.map((r) => (isFlagged(r) ? 'pending' : null)),
    patched: null,
    modelVersion: response.model_version,
  };
}

export function decide(
  state: ReviewState,
  index: number,
  decision: 'accepted' | 'rejected',
): void {
  const current = state.decisions[index];
  if (current === null || current === undefined) {
    throw new Error(`function ${index} has no pending recommendation`);
  }
  state.decisions[index] = decision;
  state.patched = null;
}

export function acceptedIndices(state: ReviewState): number[] {
  const out: number[] = [];
  state.decisions.forEach((d, i) => {
    if (d === 'accepted') {
      out.push(i);
    }
  });
  return out;
}

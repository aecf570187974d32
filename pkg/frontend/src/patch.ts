import type { EditHint } from './api.js';
import { acceptedIndices, type ReviewState } from './state.js';

export class SpanConflictError extends Error {
  constructor(message: string) {
    super(message);
    this.name = 'SpanConflictError';
  }
}

/** Collapse the recommendation to single-paragraph prose safe to embed. */
function cleanText(text: string): string {
  return text.replace(/\s+/g, ' ').trim();
}

function pythonBlock(text: string): string {
  let safe = cleanText(text).replace(/\\/g, '\\\\').replace(/"""/g, '\\"\\"\\"');
  if (safe.endsWith('"')) {
    safe += ' ';
  }
  return `"""${safe}"""`;
}

function blockComment(marker: string, text: string): string {
  const safe = cleanText(text).replace(/\*\//g, '*\\/');
  return `${marker} ${safe} */`;
}

/** Replacement for an existing doc region, starting at the old region's
 * first byte (which already sits after the indentation). */
export function renderReplacement(hint: EditHint, text: string): string {
  if (hint.style === 'python_docstring') {
    return pythonBlock(text);
  }
  if (hint.style === 'block_comment') {
    return blockComment(hint.marker, text);
  }
  return `${hint.marker} ${cleanText(text)}`;
}

/** Full block to insert at hint.insert_at for an undocumented function. */
export function renderInsertion(hint: EditHint, text: string): string {
  if (hint.style === 'python_docstring') {
    // insert_at points at the first body statement; the new literal takes
    // its place and pushes the statement onto a fresh, re-indented line.
    return `${pythonBlock(text)}\n${hint.indent}`;
  }
  // insert_at points at the start of the function's own line.
  const rendered =
    hint.style === 'block_comment'
      ? blockComment(hint.marker, text)
      : `${hint.marker} ${cleanText(text)}`;
  return `${hint.indent}${rendered}\n`;
}

interface ByteEdit {
  start: number;
  end: number;
  replacement: string;
  name: string;
}

function plannedEdit(state: ReviewState, index: number): ByteEdit {
  const result = state.results[index];
  const hint = state.edits[index];
  if (!result || !hint) {
    throw new Error(`no edit metadata for function ${index}`);
  }
  const text = result.recommended_docstring;
  if (hint.doc_span) {
    return {
      start: hint.doc_span[0],
      end: hint.doc_span[1],
      replacement: renderReplacement(hint, text),
      name: result.function_name,
    };
  }
  if (hint.insert_at !== null) {
    return {
      start: hint.insert_at,
      end: hint.insert_at,
      replacement: renderInsertion(hint, text),
      name: result.function_name,
    };
  }
  throw new Error(`no safe edit location for ${result.function_name}`);
}

/** Apply every accepted recommendation to the source.
 *
 * Spans are byte offsets, so splicing happens on UTF-8 bytes; all bytes
 * outside the edited regions pass through untouched. No accepted decisions
 * yields the source unchanged.
 */
export function applyDecisions(state: ReviewState): string {
  const edits = acceptedIndices(state).map((i) => plannedEdit(state, i));
  edits.sort((a, b) => a.start - b.start || a.end - b.end);
  for (let i = 1; i < edits.length; i += 1) {
    const prev = edits[i - 1]!;
    const cur = edits[i]!;
    if (cur.start < prev.end || cur.start === prev.start) {
      throw new SpanConflictError(
        `edits for ${prev.name} and ${cur.name} overlap`,
      );
    }
  }

  const encoder = new TextEncoder();
  const source = encoder.encode(state.source);
  const parts: Uint8Array[] = [];
  let cursor = 0;
  for (const edit of edits) {
    parts.push(source.subarray(cursor, edit.start));
    parts.push(encoder.encode(edit.replacement));
    cursor = edit.end;
  }
  parts.push(source.subarray(cursor));

  const total = parts.reduce((n, p) => n + p.length, 0);
  const merged = new Uint8Array(total);
  let offset = 0;
  for (const part of parts) {
    merged.set(part, offset);
    offset += part.length;
  }
  return new TextDecoder().decode(merged);
}

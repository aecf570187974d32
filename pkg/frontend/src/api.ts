export type Prediction = 'consistent' | 'inconsistent' | 'missing_docstring';

export interface CheckResult {
  function_name: string;
  code: string;
  docstring?: string;
  prediction: Prediction;
  confidence: number;
  recommended_docstring: string;
}

export type DocStyle = 'python_docstring' | 'line_comment' | 'block_comment';

export interface EditHint {
  doc_span: [number, number] | null;
  insert_at: number | null;
  indent: string;
  style: DocStyle;
  marker: string;
}

export interface CheckResponse {
  results: CheckResult[];
  edits: EditHint[];
  diagnostics: string[];
  model_version: string;
}

export interface LanguageInfo {
  id: string;
  supported: 'full' | 'staged';
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

async function errorMessage(resp: Response): Promise<string> {
  try {
    const body = (await resp.json()) as { error?: unknown };
    if (typeof body.error === 'string') {
      return body.error;
    }
  } catch {
    // non-JSON error body; fall through to the status line
  }
  return `request failed with status ${resp.status}`;
}

export async function checkSource(
  baseUrl: string,
  code: string,
  language: string,
  threshold?: number,
): Promise<CheckResponse> {
  const payload: Record<string, unknown> = { code, language };
  if (threshold !== undefined) {
    payload.threshold = threshold;
  }
  const resp = await fetch(`${baseUrl}/api/check`, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(payload),
  });
  if (!resp.ok) {
    throw new ApiError(resp.status, await errorMessage(resp));
  }
  return (await resp.json()) as CheckResponse;
}

export async function fetchLanguages(baseUrl: string): Promise<LanguageInfo[]> {
  const resp = await fetch(`${baseUrl}/api/languages`);
  if (!resp.ok) {
    throw new ApiError(resp.status, await errorMessage(resp));
  }
  return (await resp.json()) as LanguageInfo[];
}

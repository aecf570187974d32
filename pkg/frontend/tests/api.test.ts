import { afterEach, describe, expect, it, vi } from 'vitest';
import { ApiError, checkSource, fetchLanguages } from '../src/api.js';

function jsonResponse(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { 'Content-Type': 'application/json' },
  });
}

const EMPTY = { results: [], edits: [], diagnostics: [], model_version: 'v' };

afterEach(() => {
  vi.unstubAllGlobals();
});

describe('checkSource', () => {
  it('posts code and language as JSON', async () => {
    const mock = vi.fn().mockResolvedValue(jsonResponse(EMPTY));
    vi.stubGlobal('fetch', mock);
    await checkSource('http://h', 'def f(): pass', 'python');
    expect(mock).toHaveBeenCalledOnce();
    const [url, init] = mock.mock.calls[0]!;
    expect(url).toBe('http://h/api/check');
    expect(init.method).toBe('POST');
    expect(init.headers['Content-Type']).toBe('application/json');
    expect(JSON.parse(init.body)).toEqual({ code: 'def f(): pass', language: 'python' });
  });

  it('includes the threshold only when given', async () => {
    const mock = vi.fn().mockResolvedValue(jsonResponse(EMPTY));
    vi.stubGlobal('fetch', mock);
    await checkSource('', 'x', 'go', 0.25);
    expect(JSON.parse(mock.mock.calls[0]![1].body)).toEqual({
      code: 'x',
      language: 'go',
      threshold: 0.25,
    });
  });

  it('returns the parsed response body', async () => {
    const body = {
      results: [
        {
          function_name: 'f',
          code: 'def f(): pass',
          prediction: 'missing_docstring',
          confidence: 1.0,
          recommended_docstring: 'Does f.',
        },
      ],
      edits: [
        { doc_span: null, insert_at: 9, indent: '', style: 'python_docstring', marker: '"""' },
      ],
      diagnostics: [],
      model_version: 'doccheck-0.1.0-p9',
    };
    vi.stubGlobal('fetch', vi.fn().mockResolvedValue(jsonResponse(body)));
    expect(await checkSource('', 'def f(): pass', 'python')).toEqual(body);
  });

  it('raises ApiError with the server message', async () => {
    vi.stubGlobal(
      'fetch',
      vi.fn().mockResolvedValue(jsonResponse({ error: 'unsupported language: cobol' }, 422)),
    );
    const err = await checkSource('', 'x', 'cobol').catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(422);
    expect((err as ApiError).message).toBe('unsupported language: cobol');
  });

  it('falls back to the status line for non-JSON errors', async () => {
    vi.stubGlobal(
      'fetch',
      vi.fn().mockResolvedValue(new Response('boom', { status: 500 })),
    );
    const err = await checkSource('', 'x', 'python').catch((e: unknown) => e);
    expect((err as ApiError).message).toBe('request failed with status 500');
  });
});

describe('fetchLanguages', () => {
  it('fetches the language list', async () => {
    const langs = [
      { id: 'python', supported: 'full' },
      { id: 'rust', supported: 'staged' },
    ];
    const mock = vi.fn().mockResolvedValue(jsonResponse(langs));
    vi.stubGlobal('fetch', mock);
    expect(await fetchLanguages('http://h')).toEqual(langs);
    expect(mock.mock.calls[0]![0]).toBe('http://h/api/languages');
  });
});

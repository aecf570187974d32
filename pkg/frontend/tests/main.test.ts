import { afterEach, beforeEach, describe, expect, it, vi } from 'vitest';
import type { CheckResponse } from '../src/api.js';
import { init } from '../src/main.js';

const PAGE = `
  <textarea id="source"></textarea>
  <select id="language"></select>
  <input id="threshold" type="text">
  <button id="submit"></button>
  <a id="download"></a>
  <p id="status"></p>
  <div id="cards"></div>
  <pre id="preview"></pre>
`;

const SOURCE = 'def scale(x):\n    """Old."""\n    return x * 2\n\ndef shift(x):\n    return x + 1\n';

function docSpan(needle: string): [number, number] {
  const enc = new TextEncoder();
  const start = enc.encode(SOURCE.slice(0, SOURCE.indexOf(needle))).length;
  return [start, start + enc.encode(needle).length];
}

function checkBody(): CheckResponse {
  return {
    results: [
      {
        function_name: 'scale',
        code: 'def scale(x):',
        docstring: 'Old.',
        prediction: 'inconsistent',
        confidence: 0.9,
        recommended_docstring: 'Doubles x.',
      },
      {
        function_name: 'shift',
        code: 'def shift(x):',
        prediction: 'missing_docstring',
        confidence: 1.0,
        recommended_docstring: 'Adds one.',
      },
    ],
    edits: [
      {
        doc_span: docSpan('"""Old."""'),
        insert_at: docSpan('"""Old."""')[0],
        indent: '    ',
        style: 'python_docstring',
        marker: '"""',
      },
      {
        doc_span: null,
        insert_at: docSpan('return x + 1')[0],
        indent: '    ',
        style: 'python_docstring',
        marker: '"""',
      },
    ],
    diagnostics: [],
    model_version: 'doccheck-0.1.0-p321',
  };
}

function stubFetch(): ReturnType<typeof vi.fn> {
  const mock = vi.fn(async (url: string) => {
    if (String(url).endsWith('/api/languages')) {
      return new Response(
        JSON.stringify([
          { id: 'python', supported: 'full' },
          { id: 'go', supported: 'full' },
        ]),
      );
    }
    return new Response(JSON.stringify(checkBody()));
  });
  vi.stubGlobal('fetch', mock);
  return mock;
}

beforeEach(() => {
  document.body.innerHTML = PAGE;
});

afterEach(() => {
  vi.unstubAllGlobals();
});

describe('init', () => {
  it('disables submit until source text is present', () => {
    stubFetch();
    init(document);
    const submit = document.getElementById('submit') as HTMLButtonElement;
    const source = document.getElementById('source') as HTMLTextAreaElement;
    expect(submit.disabled).toBe(true);
    source.value = 'def f(): pass';
    source.dispatchEvent(new Event('input'));
    expect(submit.disabled).toBe(false);
  });

  it('populates the language picker from the service', async () => {
    stubFetch();
    init(document);
    const select = document.getElementById('language') as HTMLSelectElement;
    await vi.waitFor(() => {
      expect(select.options.length).toBe(2);
    });
    expect(Array.from(select.options).map((o) => o.value)).toEqual(['python', 'go']);
    expect(select.value).toBe('python');
  });

  it('renders one card per function in source order after submit', async () => {
    stubFetch();
    const app = init(document);
    const source = document.getElementById('source') as HTMLTextAreaElement;
    source.value = SOURCE;
    source.dispatchEvent(new Event('input'));
    await app.submitNow();
    const cards = Array.from(document.getElementById('cards')!.children) as HTMLElement[];
    expect(cards.map((c) => c.querySelector('.name')?.textContent)).toEqual(['scale', 'shift']);
    expect(document.getElementById('status')?.textContent).toBe(
      '2 functions, 2 flagged (doccheck-0.1.0-p321)',
    );
  });

  it('sends the threshold field when filled in', async () => {
    const mock = stubFetch();
    const app = init(document);
    (document.getElementById('source') as HTMLTextAreaElement).value = SOURCE;
    (document.getElementById('threshold') as HTMLInputElement).value = '0.75';
    await app.submitNow();
    const call = mock.mock.calls.find(([url]) => String(url).endsWith('/api/check'))!;
    expect(JSON.parse((call[1] as RequestInit).body as string).threshold).toBe(0.75);
  });

  it('enables the patched download once a recommendation is accepted', async () => {
    stubFetch();
    const app = init(document);
    (document.getElementById('source') as HTMLTextAreaElement).value = SOURCE;
    await app.submitNow();
    const download = document.getElementById('download') as HTMLAnchorElement;
    expect(download.classList.contains('disabled')).toBe(true);

    const shiftCard = document.getElementById('cards')!.children[1]!;
    (shiftCard.querySelector('button') as HTMLButtonElement).click();
    expect(download.classList.contains('disabled')).toBe(false);
    expect(download.getAttribute('href')).toMatch(/^data:text\/plain/);
    expect(download.download).toBe('patched.py');

    const patched = decodeURIComponent(
      download.getAttribute('href')!.replace('data:text/plain;charset=utf-8,', ''),
    );
    expect(patched).toBe(SOURCE.replace('    return x + 1', '    """Adds one."""\n    return x + 1'));
    expect(document.getElementById('preview')?.textContent).toBe(patched);
  });

  it('returns to the identity patch when every decision is rejected', async () => {
    stubFetch();
    const app = init(document);
    (document.getElementById('source') as HTMLTextAreaElement).value = SOURCE;
    await app.submitNow();
    const cards = document.getElementById('cards')!;
    (cards.children[0]!.querySelector('button') as HTMLButtonElement).click();
    expect(document.getElementById('preview')?.textContent).not.toBe('');

    for (const index of [0, 1]) {
      const card = cards.children[index]!;
      const reject = Array.from(card.querySelectorAll('button')).find(
        (b) => b.textContent === 'Reject',
      ) as HTMLButtonElement;
      reject.click();
    }
    expect(document.getElementById('preview')?.textContent).toBe('');
    const download = document.getElementById('download') as HTMLAnchorElement;
    expect(download.classList.contains('disabled')).toBe(true);
    expect(download.getAttribute('href')).toBeNull();
  });

  it('surfaces service errors in the status line', async () => {
    vi.stubGlobal(
      'fetch',
      vi.fn(async (url: string) => {
        if (String(url).endsWith('/api/languages')) {
          return new Response(JSON.stringify([{ id: 'python', supported: 'full' }]));
        }
        return new Response(JSON.stringify({ error: 'code exceeds the 1 MiB limit' }), {
          status: 413,
        });
      }),
    );
    const app = init(document);
    (document.getElementById('source') as HTMLTextAreaElement).value = SOURCE;
    await app.submitNow();
    const status = document.getElementById('status')!;
    expect(status.textContent).toBe('code exceeds the 1 MiB limit');
    expect(status.classList.contains('error')).toBe(true);
  });
});

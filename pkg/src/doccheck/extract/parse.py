"""Turn one source file into function records plus edit hints."""

from __future__ import annotations

import bisect
import re

from ..errors import IoError
from ..languages import LanguageId, language_for_path
from .backends import RawFunction, get_backend
from .normalize import normalize_docstring
from .records import EditHint, FunctionRecord, ParseResult

_WS_RUN = re.compile(r"\s+")

_DOC_STYLE: dict[LanguageId, tuple[str, str]] = {
    LanguageId.PYTHON: ("python_docstring", '"""'),
    LanguageId.RUBY: ("line_comment", "#"),
    LanguageId.RUST: ("line_comment", "///"),
    LanguageId.GO: ("line_comment", "//"),
    LanguageId.JAVA: ("block_comment", "/**"),
    LanguageId.JAVASCRIPT: ("block_comment", "/**"),
    LanguageId.PHP: ("block_comment", "/**"),
    LanguageId.CSHARP: ("line_comment", "///"),
    LanguageId.CPP: ("block_comment", "/**"),
    LanguageId.C: ("block_comment", "/**"),
}


def _line_starts(data: bytes) -> list[int]:
    starts = [0]
    pos = data.find(b"\n")
    while pos >= 0:
        starts.append(pos + 1)
        pos = data.find(b"\n", pos + 1)
    return starts


def _decode(data: bytes) -> str:
    return data.decode("utf-8", "replace")


def _edit_hint(fn: RawFunction, data: bytes, language: LanguageId) -> EditHint:
    style, marker = _DOC_STYLE[language]
    if language is LanguageId.PYTHON:
        return EditHint(
            doc_span=fn.doc_span,
            insert_at=fn.insert_at,
            indent=fn.indent,
            style=style,
            marker=marker,
        )
    line_start = data.rfind(b"\n", 0, fn.start) + 1
    ws_end = line_start
    while ws_end < len(data) and data[ws_end] in b" \t":
        ws_end += 1
    return EditHint(
        doc_span=fn.doc_span,
        insert_at=line_start,
        indent=_decode(data[line_start:ws_end]),
        style=style,
        marker=marker,
    )


def parse_source(
    text: str | bytes,
    language: LanguageId,
    path: str = "<memory>",
) -> ParseResult:
    """Extract function records from one source text.

    Never raises on malformed code: backends salvage what they can and
    report the rest through diagnostics.
    """
    data = text.encode("utf-8") if isinstance(text, str) else bytes(text)
    backend = get_backend(language)
    functions, diagnostics = backend.functions(data)
    starts = _line_starts(data)

    def line_of(offset: int) -> int:
        return bisect.bisect_right(starts, offset)

    result = ParseResult(diagnostics=[f"{path}: {d}" for d in diagnostics])
    for fn in functions:
        if not fn.name:
            result.diagnostics.append(f"{path}: dropped unnamed function at byte {fn.start}")
            continue
        raw = None
        if fn.doc_span is not None:
            raw = _decode(data[fn.doc_span[0]:fn.doc_span[1]])
        sig_start = fn.sig_start if fn.sig_start is not None else fn.start
        record = FunctionRecord(
            function_name=fn.name,
            qualified_name=".".join(fn.scope + (fn.name,)),
            signature=_WS_RUN.sub(" ", _decode(data[sig_start:fn.sig_end])).strip(),
            code=_decode(data[fn.start:fn.end]),
            docstring_raw=raw,
            docstring=normalize_docstring(raw, language) if raw is not None else None,
            byte_span=(fn.start, fn.end),
            line_span=(line_of(fn.start), line_of(max(fn.start, fn.end - 1))),
            file=path,
            language=language,
        )
        result.records.append(record)
        result.edit_hints.append(_edit_hint(fn, data, language))
    return result


def parse_file(
    path: str,
    language: LanguageId | None = None,
) -> ParseResult:
    """Extract records from a file on disk, inferring language by extension."""
    if language is None:
        language = language_for_path(path)
        if language is None:
            raise ValueError(f"cannot infer language from extension: {path}")
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    return parse_source(data, language, path=path)

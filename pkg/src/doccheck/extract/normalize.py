"""Docstring normalization: strip markers, keep the first paragraph."""

from __future__ import annotations

import re

from ..languages import LanguageId

_WS_RUN = re.compile(r"\s+")

# XML wrapper tags used by C# doc comments; prose content is kept.
_XMLDOC_TAG = re.compile(r"</?(?:summary|remarks|para|returns|value)\s*>")

# Raw/byte/f-string prefixes that may precede a python string literal.
_PY_PREFIX = re.compile(r"^[rRbBuUfF]{0,3}")


def _strip_python_quotes(raw: str) -> str:
    body = _PY_PREFIX.sub("", raw.strip())
    for quote in ('"""', "'''", '"', "'"):
        if body.startswith(quote):
            body = body[len(quote):]
            if body.endswith(quote):
                body = body[: -len(quote)]
            break
    return body


def _strip_block_comment(raw: str) -> str:
    body = raw.strip()
    if body.startswith("/**"):
        body = body[3:]
    elif body.startswith("/*"):
        body = body[2:]
    if body.endswith("*/"):
        body = body[:-2]
    return body


_LINE_MARKERS = {
    LanguageId.RUBY: ("#",),
    LanguageId.RUST: ("///", "//!", "//"),
    LanguageId.PHP: ("///", "//", "#"),
}
_DEFAULT_LINE_MARKERS = ("///", "//")


def _strip_line_marker(line: str, language: LanguageId) -> str:
    stripped = line.lstrip()
    if language is LanguageId.PYTHON:
        return stripped
    markers = _LINE_MARKERS.get(language, _DEFAULT_LINE_MARKERS)
    for marker in markers:
        if stripped.startswith(marker):
            return stripped[len(marker):]
    # inside /* */ blocks a leading '*' is decoration
    if stripped.startswith("*"):
        return stripped[1:]
    return stripped


def normalize_docstring(raw: str, language: LanguageId) -> str:
    """Normalize a captured documentation comment to its first paragraph.

    Strips comment delimiters and per-line markers, truncates at the first
    blank line, and collapses whitespace runs to single spaces. An empty
    result is allowed.
    """
    if not raw:
        return ""
    body = raw
    stripped = raw.strip()
    if language is LanguageId.PYTHON:
        body = _strip_python_quotes(raw)
    elif stripped.startswith("/*"):
        body = _strip_block_comment(raw)

    if language is LanguageId.CSHARP:
        body = _XMLDOC_TAG.sub("", body)
    lines = [_strip_line_marker(line, language).strip() for line in body.split("\n")]
    if language is LanguageId.RUBY:
        lines = [ln for ln in lines if ln not in ("=begin", "=end")]
    while lines and not lines[0]:
        lines.pop(0)
    paragraph: list[str] = []
    for line in lines:
        if not line:
            break
        paragraph.append(line)
    return _WS_RUN.sub(" ", " ".join(paragraph)).strip()

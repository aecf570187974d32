"""Parsing backends: turn raw bytes into function nodes with doc comments.

The extraction layer depends only on this interface, so a backend can be
swapped (e.g. for a grammar-library binding) without touching record
construction or the docstring conventions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol

from ...languages import LanguageId


@dataclass
class RawFunction:
    """A function located by a backend, in byte offsets."""

    name: str
    scope: tuple[str, ...]
    start: int
    end: int
    sig_end: int
    depth: int
    doc_span: tuple[int, int] | None = None
    # signature start when the span begins with annotations/attributes
    sig_start: int | None = None
    # docstring insertion point; None when no safe location exists
    insert_at: int | None = None
    indent: str = ""


class ParseBackend(Protocol):
    def functions(self, data: bytes) -> tuple[list[RawFunction], list[str]]:
        """Return (functions in source order, diagnostics)."""
        ...


def get_backend(language: LanguageId) -> ParseBackend:
    from . import braces, python, ruby

    if language is LanguageId.PYTHON:
        return python.PythonBackend()
    if language is LanguageId.RUBY:
        return ruby.RubyBackend()
    return braces.BraceBackend(language)

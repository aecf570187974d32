"""Record types produced by source extraction."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..languages import LanguageId


@dataclass(frozen=True)
class SourceFile:
    """One source file to extract from."""

    path: str
    language: LanguageId
    text: str


@dataclass(frozen=True)
class FunctionRecord:
    """One extracted function with its docstring, spans, and metadata.

    byte_span is a 0-based half-open offset pair into the UTF-8 encoding of
    the file text; line_span is 1-based inclusive. code equals the byte
    slice at byte_span exactly.
    """

    function_name: str
    qualified_name: str
    signature: str
    code: str
    docstring_raw: str | None
    docstring: str | None
    byte_span: tuple[int, int]
    line_span: tuple[int, int]
    file: str
    language: LanguageId

    def to_json_dict(self) -> dict:
        out: dict = {
            "function_name": self.function_name,
            "qualified_name": self.qualified_name,
            "signature": self.signature,
            "code": self.code,
        }
        if self.docstring_raw is not None:
            out["docstring_raw"] = self.docstring_raw
            out["docstring"] = self.docstring
        out["byte_span"] = list(self.byte_span)
        out["line_span"] = list(self.line_span)
        out["file"] = self.file
        out["language"] = self.language.value
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), ensure_ascii=False)

    @classmethod
    def from_json_dict(cls, obj: dict) -> "FunctionRecord":
        return cls(
            function_name=obj["function_name"],
            qualified_name=obj["qualified_name"],
            signature=obj["signature"],
            code=obj["code"],
            docstring_raw=obj.get("docstring_raw"),
            docstring=obj.get("docstring"),
            byte_span=tuple(obj["byte_span"]),
            line_span=tuple(obj["line_span"]),
            file=obj["file"],
            language=LanguageId(obj["language"]),
        )


@dataclass(frozen=True)
class EditHint:
    """Where and how a docstring may be rewritten or inserted.

    doc_span: byte span of the existing doc region (comment markers included;
      for python, the string-literal statement), or None when undocumented.
    insert_at: byte offset where a new doc block may be inserted, or None
      when no safe insertion point exists (e.g. one-line python defs).
    style: python_docstring | line_comment | block_comment.
    """

    doc_span: tuple[int, int] | None
    insert_at: int | None
    indent: str
    style: str
    marker: str

    def to_json_dict(self) -> dict:
        return {
            "doc_span": list(self.doc_span) if self.doc_span else None,
            "insert_at": self.insert_at,
            "indent": self.indent,
            "style": self.style,
            "marker": self.marker,
        }


@dataclass
class ParseResult:
    """Extraction output: records in source order plus non-fatal diagnostics."""

    records: list[FunctionRecord] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)
    edit_hints: list[EditHint] = field(default_factory=list)


def write_records_jsonl(records: list[FunctionRecord]) -> str:
    """Serialize records as JSON Lines (UTF-8 text, LF line endings)."""
    return "".join(rec.to_json() + "\n" for rec in records)


def read_records_jsonl(text: str) -> list[FunctionRecord]:
    return [
        FunctionRecord.from_json_dict(json.loads(line))
        for line in text.splitlines()
        if line.strip()
    ]

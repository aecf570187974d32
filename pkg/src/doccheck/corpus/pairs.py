"""Code-comment pair examples and their construction from edit histories."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from ..errors import DegenerateRecord
from ..extract.normalize import normalize_docstring
from ..languages import LanguageId

LABELS = ("consistent", "inconsistent", "unlabeled")
PROVENANCES = ("jit_derived", "extracted", "synthetic")


@dataclass(frozen=True)
class JitEditRecord:
    """One method-updating commit: comment and method before and after."""

    id: str
    comment_before: str
    method_before: str
    comment_after: str
    method_after: str
    language: LanguageId
    meta: dict = field(default_factory=dict, compare=False)

    def to_json_dict(self) -> dict:
        return {
            "id": self.id,
            "comment_before": self.comment_before,
            "method_before": self.method_before,
            "comment_after": self.comment_after,
            "method_after": self.method_after,
            "language": self.language.value,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "JitEditRecord":
        return cls(
            id=data["id"],
            comment_before=data["comment_before"],
            method_before=data["method_before"],
            comment_after=data["comment_after"],
            method_after=data["method_after"],
            language=LanguageId(data["language"]),
        )


@dataclass(frozen=True)
class PairExample:
    """A comment-method pair with an optional consistency label."""

    id: str
    comment: str
    method: str
    label: str
    language: LanguageId
    provenance: str

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValueError(f"unknown label {self.label!r}")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if not self.comment or not self.method:
            raise ValueError("comment and method must be non-empty")

    def to_json_dict(self) -> dict:
        return {
            "id": self.id,
            "comment": self.comment,
            "method": self.method,
            "label": self.label,
            "language": self.language.value,
            "provenance": self.provenance,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "PairExample":
        return cls(
            id=data["id"],
            comment=data["comment"],
            method=data["method"],
            label=data["label"],
            language=LanguageId(data["language"]),
            provenance=data["provenance"],
        )


def build_jit_pair(record: JitEditRecord) -> PairExample:
    """Label a pre-edit comment against the post-edit method.

    The pair keeps the pre-edit comment and the post-edit body, matching
    the situation the detector faces: only the current code and the old
    comment are in hand. The pair is consistent exactly when the edit left
    the normalized comment unchanged; a developer who touched the method
    but not its comment either kept the comment valid or let it rot, and
    the comment diff is the observable signal separating the two.
    """
    before = normalize_docstring(record.comment_before, record.language)
    after = normalize_docstring(record.comment_after, record.language)
    if not before:
        raise DegenerateRecord(f"record {record.id}: pre-edit comment is empty")
    if not record.method_after.strip():
        raise DegenerateRecord(f"record {record.id}: post-edit method is empty")
    label = "consistent" if before == after else "inconsistent"
    return PairExample(
        id=record.id,
        comment=record.comment_before,
        method=record.method_after,
        label=label,
        language=record.language,
        provenance="jit_derived",
    )


def write_pairs_jsonl(pairs: Iterable[PairExample]) -> str:
    return "".join(
        json.dumps(p.to_json_dict(), ensure_ascii=False) + "\n" for p in pairs
    )


def read_pairs_jsonl(text: str) -> list[PairExample]:
    return [
        PairExample.from_json_dict(json.loads(line))
        for line in text.splitlines()
        if line.strip()
    ]


def write_jit_jsonl(records: Iterable[JitEditRecord]) -> str:
    return "".join(
        json.dumps(r.to_json_dict(), ensure_ascii=False) + "\n" for r in records
    )


def read_jit_jsonl(text: str) -> list[JitEditRecord]:
    return [
        JitEditRecord.from_json_dict(json.loads(line))
        for line in text.splitlines()
        if line.strip()
    ]

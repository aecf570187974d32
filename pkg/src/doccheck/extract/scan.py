"""Directory walking for batch extraction."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from ..languages import LanguageId, language_for_path
from .parse import parse_source
from .records import ParseResult

# Directories that never contain first-party source worth extracting.
DENY_DIRS = frozenset(
    {
        "node_modules", "vendor", "target", "build", "dist",
        "__pycache__", "venv", "bin", "obj",
    }
)


@dataclass
class ScanResult:
    """Files found under a root, relative paths in lexicographic order."""

    files: list[tuple[str, LanguageId]] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)


def scan_tree(root: str, languages: set[LanguageId] | None = None) -> ScanResult:
    """Find extractable source files under root.

    Hidden and dependency directories are skipped. Unreadable directories
    are reported in errors, never raised.
    """
    result = ScanResult()
    if not os.path.isdir(root):
        result.errors.append(f"not a directory: {root}")
        return result

    def on_error(exc: OSError) -> None:
        result.errors.append(f"cannot list {getattr(exc, 'filename', root)}: {exc}")

    for dirpath, dirnames, filenames in os.walk(root, onerror=on_error):
        dirnames[:] = sorted(
            d for d in dirnames if not d.startswith(".") and d not in DENY_DIRS
        )
        for name in sorted(filenames):
            lang = language_for_path(name)
            if lang is None or (languages is not None and lang not in languages):
                continue
            rel = os.path.relpath(os.path.join(dirpath, name), root)
            result.files.append((rel.replace(os.sep, "/"), lang))
    result.files.sort(key=lambda item: item[0])
    return result


def extract_tree(root: str, languages: set[LanguageId] | None = None) -> ParseResult:
    """Extract records from every supported file under root.

    Record file fields hold root-relative paths with forward slashes, so
    output is stable across machines.
    """
    scan = scan_tree(root, languages)
    combined = ParseResult(diagnostics=list(scan.errors))
    for rel, lang in scan.files:
        full = os.path.join(root, rel.replace("/", os.sep))
        try:
            with open(full, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            combined.diagnostics.append(f"cannot read {rel}: {exc}")
            continue
        part = parse_source(data, lang, path=rel)
        combined.records.extend(part.records)
        combined.diagnostics.extend(part.diagnostics)
        combined.edit_hints.extend(part.edit_hints)
    return combined

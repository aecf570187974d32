"""Function and docstring extraction across ten languages."""

from .normalize import normalize_docstring
from .parse import parse_file, parse_source
from .records import (
    EditHint,
    FunctionRecord,
    ParseResult,
    SourceFile,
    read_records_jsonl,
    write_records_jsonl,
)
from .scan import ScanResult, extract_tree, scan_tree

__all__ = [
    "EditHint",
    "FunctionRecord",
    "ParseResult",
    "ScanResult",
    "SourceFile",
    "extract_tree",
    "normalize_docstring",
    "parse_file",
    "parse_source",
    "read_records_jsonl",
    "scan_tree",
    "write_records_jsonl",
]

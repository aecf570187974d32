"""Language registry: ids, file extensions, and doc-comment conventions."""

from __future__ import annotations

import enum


class LanguageId(str, enum.Enum):
    """The ten supported languages."""

    PYTHON = "python"
    JAVA = "java"
    JAVASCRIPT = "javascript"
    RUBY = "ruby"
    RUST = "rust"
    GO = "go"
    CSHARP = "csharp"
    CPP = "cpp"
    C = "c"
    PHP = "php"

    def __str__(self) -> str:  # pragma: no cover - repr convenience
        return self.value


# Extension -> language. Each extension maps to exactly one language.
EXTENSIONS: dict[str, LanguageId] = {
    ".py": LanguageId.PYTHON,
    ".java": LanguageId.JAVA,
    ".js": LanguageId.JAVASCRIPT,
    ".mjs": LanguageId.JAVASCRIPT,
    ".cjs": LanguageId.JAVASCRIPT,
    ".rb": LanguageId.RUBY,
    ".rs": LanguageId.RUST,
    ".go": LanguageId.GO,
    ".cs": LanguageId.CSHARP,
    ".cpp": LanguageId.CPP,
    ".cc": LanguageId.CPP,
    ".cxx": LanguageId.CPP,
    ".hpp": LanguageId.CPP,
    ".hh": LanguageId.CPP,
    ".c": LanguageId.C,
    ".h": LanguageId.C,
    ".php": LanguageId.PHP,
}

# Languages with golden-fixture extraction coverage; the rest are staged.
FULLY_SUPPORTED = frozenset({
    LanguageId.PYTHON,
    LanguageId.JAVA,
    LanguageId.JAVASCRIPT,
    LanguageId.RUBY,
    LanguageId.GO,
    LanguageId.PHP,
})


def support_level(language: LanguageId) -> str:
    return "full" if language in FULLY_SUPPORTED else "staged"


def extensions_for(language: LanguageId) -> tuple[str, ...]:
    return tuple(sorted(ext for ext, lang in EXTENSIONS.items() if lang is language))


def language_for_path(path: str) -> LanguageId | None:
    """Infer a language from a file extension, or None if unknown."""
    dot = path.rfind(".")
    if dot < 0:
        return None
    return EXTENSIONS.get(path[dot:].lower())


def parse_language(value: str) -> LanguageId:
    """Parse a language id string, raising ValueError on unknown values."""
    try:
        return LanguageId(value.lower())
    except ValueError:
        known = ", ".join(l.value for l in LanguageId)
        raise ValueError(f"unknown language {value!r} (expected one of: {known})") from None

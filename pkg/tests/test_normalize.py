import pytest

from doccheck.extract import normalize_docstring
from doccheck.languages import LanguageId


@pytest.mark.parametrize(
    "raw,lang,expected",
    [
        ("/** Adds two ints. */", LanguageId.JAVA, "Adds two ints."),
        ('"""Line1.\n\nLine2."""', LanguageId.PYTHON, "Line1."),
        ("", LanguageId.PYTHON, ""),
        ("'''One liner.'''", LanguageId.PYTHON, "One liner."),
        ('r"""Raw doc."""', LanguageId.PYTHON, "Raw doc."),
        ("// Go style.\n// Second line.", LanguageId.GO, "Go style. Second line."),
        ("/// Rust doc.\n/// More.", LanguageId.RUST, "Rust doc. More."),
        ("# Ruby doc.\n# And more.", LanguageId.RUBY, "Ruby doc. And more."),
        ("=begin\nBlock text.\n=end", LanguageId.RUBY, "Block text."),
        ("# Hash doc.", LanguageId.PHP, "Hash doc."),
        (
            "/**\n * Starred body.\n *\n * Second paragraph.\n */",
            LanguageId.JAVA,
            "Starred body.",
        ),
        (
            "/// <summary>Find a thing.</summary>",
            LanguageId.CSHARP,
            "Find a thing.",
        ),
        ("/* C block. */", LanguageId.C, "C block."),
        ("//   spaced   out  ", LanguageId.JAVASCRIPT, "spaced out"),
    ],
)
def test_normalization_cases(raw, lang, expected):
    assert normalize_docstring(raw, lang) == expected


def test_first_paragraph_only():
    raw = "// Keep this.\n// And this.\n//\n// Drop this."
    assert normalize_docstring(raw, LanguageId.GO) == "Keep this. And this."


def test_whitespace_collapse():
    raw = '"""A  b\tc\nd."""'
    assert normalize_docstring(raw, LanguageId.PYTHON) == "A b c d."


def test_result_has_no_marker_or_newline():
    raws = [
        ("/** x */", LanguageId.JAVA),
        ("// x\n// y", LanguageId.GO),
        ("# x", LanguageId.RUBY),
        ("/// x", LanguageId.RUST),
    ]
    for raw, lang in raws:
        out = normalize_docstring(raw, lang)
        assert "\n" not in out
        assert not out.startswith(("#", "/", "*"))
        assert out == out.strip()

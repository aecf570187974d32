import os

from doccheck.extract import extract_tree, scan_tree
from doccheck.languages import LanguageId


def make(tmp_path, rel, content=""):
    path = tmp_path / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content)


def test_empty_directory(tmp_path):
    result = scan_tree(str(tmp_path))
    assert result.files == []
    assert result.errors == []


def test_language_filter(tmp_path):
    make(tmp_path, "a.py")
    make(tmp_path, "b.java")
    result = scan_tree(str(tmp_path), languages={LanguageId.PYTHON})
    assert result.files == [("a.py", LanguageId.PYTHON)]


def test_lexicographic_relative_order(tmp_path):
    make(tmp_path, "z.py")
    make(tmp_path, "a/deep.py")
    make(tmp_path, "a/b/deeper.go")
    make(tmp_path, "m.rb")
    result = scan_tree(str(tmp_path))
    assert [f for f, _ in result.files] == ["a/b/deeper.go", "a/deep.py", "m.rb", "z.py"]


def test_hidden_and_vendored_skipped(tmp_path):
    make(tmp_path, ".git/hooks/x.py")
    make(tmp_path, "node_modules/p/index.js")
    make(tmp_path, "vendor/lib.go")
    make(tmp_path, "src/ok.py")
    result = scan_tree(str(tmp_path))
    assert [f for f, _ in result.files] == ["src/ok.py"]


def test_unknown_extensions_ignored(tmp_path):
    make(tmp_path, "README.md")
    make(tmp_path, "data.json")
    make(tmp_path, "x.py")
    assert len(scan_tree(str(tmp_path)).files) == 1


def test_missing_root_is_an_error_entry():
    result = scan_tree("/definitely/not/here")
    assert result.files == []
    assert len(result.errors) == 1


def test_extract_tree_merges_records(tmp_path):
    make(tmp_path, "one.py", "def a():\n    return 1\n")
    make(tmp_path, "sub/two.go", "func B() int {\n\treturn 2\n}\n")
    result = extract_tree(str(tmp_path))
    assert [(r.file, r.function_name) for r in result.records] == [
        ("one.py", "a"),
        ("sub/two.go", "B"),
    ]


def test_extract_tree_reports_bad_files_without_aborting(tmp_path):
    make(tmp_path, "ok.py", "def ok():\n    return 1\n")
    make(tmp_path, "bad.py", "def bad(:\n")
    result = extract_tree(str(tmp_path))
    assert [r.function_name for r in result.records] == ["ok"]
    assert any("bad.py" in d for d in result.diagnostics)

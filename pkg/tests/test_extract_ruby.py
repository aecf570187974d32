from doccheck.extract import parse_source
from doccheck.languages import LanguageId

L = LanguageId.RUBY


def names(src):
    return [r.qualified_name for r in parse_source(src, L).records]


def test_hash_run_attaches():
    src = "# Adds one.\n# Really.\ndef inc(x)\n  x + 1\nend\n"
    rec = parse_source(src, L).records[0]
    assert rec.docstring == "Adds one. Really."


def test_blank_line_breaks_run():
    src = "# Orphan.\n\ndef f\n  1\nend\n"
    assert parse_source(src, L).records[0].docstring is None


def test_module_class_nesting():
    src = (
        "module M\n"
        "  class C\n"
        "    def m\n"
        "      1\n"
        "    end\n"
        "  end\n"
        "end\n"
    )
    assert names(src) == ["M.C.m"]


def test_blocks_do_not_shift_end_matching():
    src = (
        "def outer(items)\n"
        "  items.each do |i|\n"
        "    puts i if i\n"
        "  end\n"
        "  result = if items.empty?\n"
        "    nil\n"
        "  else\n"
        "    items.first\n"
        "  end\n"
        "  result\n"
        "end\n"
    )
    assert names(src) == ["outer"]


def test_modifier_if_does_not_open_block():
    src = "def guard(x)\n  return 0 if x.nil?\n  x\nend\n"
    assert names(src) == ["guard"]


def test_endless_def():
    src = "# Doubles.\ndef double(x) = x * 2\n"
    rec = parse_source(src, L).records[0]
    assert rec.function_name == "double"
    assert rec.docstring == "Doubles."
    assert rec.signature == "def double(x)"
    assert rec.code == "def double(x) = x * 2"


def test_one_line_def_with_semicolons():
    rec = parse_source("def touch; @t = true; end\n", L).records[0]
    assert rec.function_name == "touch"
    assert rec.signature == "def touch"


def test_operator_and_setter_names():
    src = "class A\n  def ==(o)\n    true\n  end\n  def limit=(n)\n    @n = n\n  end\nend\n"
    assert names(src) == ["A.==", "A.limit="]


def test_singleton_method_keeps_class_scope():
    src = "class A\n  def self.build\n    new\n  end\nend\n"
    assert names(src) == ["A.build"]


def test_heredoc_contents_ignored():
    src = (
        "def q\n"
        "  sql = <<~SQL\n"
        "    def fake; end\n"
        "  SQL\n"
        "  run(sql)\n"
        "end\n"
    )
    assert names(src) == ["q"]


def test_unmatched_end_reported():
    result = parse_source("end\n", L)
    assert result.records == []
    assert any("unmatched" in d for d in result.diagnostics)

import keyword

from hypothesis import given, settings
from hypothesis import strategies as st

from doccheck.extract import (
    FunctionRecord,
    normalize_docstring,
    parse_source,
    read_records_jsonl,
    write_records_jsonl,
)
from doccheck.languages import LanguageId

idents = st.from_regex(r"[a-z_][a-z0-9_]{0,8}", fullmatch=True).filter(
    lambda s: not keyword.iskeyword(s)
)
doc_text = st.text(
    alphabet=st.characters(blacklist_categories=("Cs", "Cc")), min_size=0, max_size=40
)


@st.composite
def python_modules(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    parts = []
    expected = []
    for i in range(n):
        name = draw(idents) + f"_{i}"
        doc = draw(st.one_of(st.none(), doc_text))
        body = f"def {name}(x):\n"
        if doc is not None:
            literal = doc.replace("\\", "\\\\").replace('"', '\\"')
            body += f'    """{literal}"""\n'
        body += "    return x\n"
        parts.append(body)
        expected.append(name)
    return "\n".join(parts), expected


@given(python_modules())
@settings(max_examples=60, deadline=None)
def test_generated_python_modules_extract_cleanly(case):
    src, expected = case
    result = parse_source(src, LanguageId.PYTHON)
    assert [r.function_name for r in result.records] == expected
    data = src.encode("utf-8")
    starts = []
    for rec in result.records:
        lo, hi = rec.byte_span
        assert rec.code == data[lo:hi].decode("utf-8")
        starts.append(lo)
    assert starts == sorted(starts)


@given(
    st.lists(
        st.tuples(idents, st.one_of(st.none(), doc_text)),
        min_size=0,
        max_size=4,
    )
)
@settings(max_examples=60, deadline=None)
def test_jsonl_round_trip(items):
    records = []
    for i, (name, doc) in enumerate(items):
        code = f"def {name}(x):\n    return x"
        records.append(
            FunctionRecord(
                function_name=name,
                qualified_name=name,
                signature=f"def {name}(x):",
                code=code,
                docstring_raw=f'"""{doc}"""' if doc is not None else None,
                docstring=doc if doc is not None else None,
                byte_span=(i * 100, i * 100 + len(code.encode("utf-8"))),
                line_span=(i * 5 + 1, i * 5 + 2),
                file="f.py",
                language=LanguageId.PYTHON,
            )
        )
    assert read_records_jsonl(write_records_jsonl(records)) == records


@given(doc_text, st.sampled_from(list(LanguageId)))
@settings(max_examples=120, deadline=None)
def test_normalize_output_shape(text, lang):
    out = normalize_docstring(f"// {text}" if lang is not LanguageId.PYTHON else text, lang)
    assert "\n" not in out
    assert out == out.strip()
    assert "  " not in out

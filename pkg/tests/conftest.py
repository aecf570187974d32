import os

import pytest

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


@pytest.fixture(scope="session")
def fixture_dir():
    return FIXTURES


def extract_fixture_pairs():
    """(language, source path, golden path) for every extract fixture."""
    root = os.path.join(FIXTURES, "extract")
    out = []
    for lang_dir in sorted(os.listdir(root)):
        d = os.path.join(root, lang_dir)
        for name in sorted(os.listdir(d)):
            if name.endswith(".jsonl"):
                continue
            stem = os.path.splitext(name)[0]
            out.append(
                (lang_dir, os.path.join(d, name), os.path.join(d, stem + ".expected.jsonl"))
            )
    return out

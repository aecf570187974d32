"""Synthetic pair generators used by training and evaluation tests."""

import pytest

from doccheck.corpus import derange_comments, make_labeled_pairs, make_synthetic_pairs
from doccheck.errors import BatchTooSmall


class TestSyntheticPairs:
    def test_comments_and_methods_distinct(self):
        pairs = make_synthetic_pairs(32, seed=0)
        assert len({p.comment for p in pairs}) == 32
        assert len({p.method for p in pairs}) == 32
        assert len({p.id for p in pairs}) == 32

    def test_all_consistent_python(self):
        for p in make_synthetic_pairs(10, seed=1):
            assert p.label == "consistent"
            assert p.language.value == "python"
            assert p.provenance == "synthetic"
            assert p.method.startswith("def ")

    def test_deterministic(self):
        assert make_synthetic_pairs(16, seed=3) == make_synthetic_pairs(16, seed=3)
        assert make_synthetic_pairs(16, seed=3) != make_synthetic_pairs(16, seed=4)

    def test_wraps_past_bank_size(self):
        pairs = make_synthetic_pairs(80, seed=0)
        assert len({p.comment for p in pairs}) == 80

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            make_synthetic_pairs(0)


class TestLabeledPairs:
    def test_balanced_and_mismatched(self):
        pairs = make_labeled_pairs(20, seed=0)
        labels = [p.label for p in pairs]
        assert labels.count("consistent") == 10
        assert labels.count("inconsistent") == 10
        clean = {p.id: p for p in make_synthetic_pairs(20, seed=0)}
        for p in pairs:
            if p.label == "inconsistent":
                assert p.comment != clean[p.id].comment
                assert p.method == clean[p.id].method

    def test_deterministic(self):
        assert make_labeled_pairs(12, seed=5) == make_labeled_pairs(12, seed=5)


class TestDerangement:
    def test_no_comment_stays_home(self):
        pairs = make_synthetic_pairs(9, seed=2)
        for seed in range(10):
            shuffled = derange_comments(pairs, seed=seed)
            assert len(shuffled) == len(pairs)
            for before, after in zip(pairs, shuffled):
                assert after.comment != before.comment
                assert after.method == before.method
                assert after.label == "inconsistent"
                assert after.id == f"{before.id}-x"

    def test_comments_are_permuted(self):
        pairs = make_synthetic_pairs(9, seed=2)
        shuffled = derange_comments(pairs, seed=1)
        assert sorted(p.comment for p in shuffled) == sorted(p.comment for p in pairs)

    def test_needs_two(self):
        with pytest.raises(BatchTooSmall):
            derange_comments(make_synthetic_pairs(1, seed=0), seed=0)

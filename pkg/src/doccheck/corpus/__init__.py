"""Labeled code-comment pair datasets: construction, mining, splits."""

from .negatives import mine_hard_negatives
from .pairs import (
    JitEditRecord,
    PairExample,
    build_jit_pair,
    read_jit_jsonl,
    read_pairs_jsonl,
    write_jit_jsonl,
    write_pairs_jsonl,
)
from .splits import DatasetSplit, split_dataset
from .synthetic import (
    derange_comments,
    make_labeled_pairs,
    make_synthetic_pairs,
    shuffle_comments,
)

__all__ = [
    "DatasetSplit",
    "JitEditRecord",
    "PairExample",
    "build_jit_pair",
    "derange_comments",
    "make_labeled_pairs",
    "make_synthetic_pairs",
    "shuffle_comments",
    "mine_hard_negatives",
    "read_jit_jsonl",
    "read_pairs_jsonl",
    "split_dataset",
    "write_jit_jsonl",
    "write_pairs_jsonl",
]

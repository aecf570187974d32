"""Deterministic stratified train/valid/test splitting."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from ..errors import EmptyDataset
from .pairs import PairExample

_SPLIT_NAMES = ("train", "valid", "test")


@dataclass(frozen=True)
class DatasetSplit:
    """Id membership of each split, reproducible from the seed."""

    train: tuple[str, ...]
    valid: tuple[str, ...]
    test: tuple[str, ...]
    seed: int

    def to_json_dict(self) -> dict:
        return {
            "train": list(self.train),
            "valid": list(self.valid),
            "test": list(self.test),
            "seed": self.seed,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "DatasetSplit":
        return cls(
            train=tuple(data["train"]),
            valid=tuple(data["valid"]),
            test=tuple(data["test"]),
            seed=data["seed"],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "DatasetSplit":
        return cls.from_json_dict(json.loads(text))


def _largest_remainder(total: int, ratios: tuple[float, float, float]) -> list[int]:
    exact = [total * r for r in ratios]
    sizes = [int(e) for e in exact]
    leftover = total - sum(sizes)
    # Ties go to the earlier split so the outcome never depends on float noise.
    order = sorted(range(3), key=lambda k: (-(exact[k] - sizes[k]), k))
    for k in order[:leftover]:
        sizes[k] += 1
    return sizes


def split_dataset(
    pairs: list[PairExample],
    ratios: tuple[float, float, float],
    seed: int,
) -> DatasetSplit:
    """Split pairs into train/valid/test, stratified by label.

    Split sizes follow the ratios by largest remainder over the whole
    dataset, and each label's share of every split stays within one
    example of its overall share. The shuffle is keyed to the seed alone.
    """
    if not pairs:
        raise EmptyDataset("cannot split an empty dataset")
    if len(ratios) != 3:
        raise ValueError("ratios must have exactly three entries")
    if any(r < 0 for r in ratios):
        raise ValueError("ratios must be non-negative")
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError(f"ratios must sum to 1, got {sum(ratios)!r}")
    ids = [p.id for p in pairs]
    if len(set(ids)) != len(ids):
        raise ValueError("pair ids must be unique")

    capacity = _largest_remainder(len(pairs), ratios)
    buckets: dict[str, list[str]] = {name: [] for name in _SPLIT_NAMES}

    by_label: dict[str, list[str]] = {}
    for p in pairs:
        by_label.setdefault(p.label, []).append(p.id)

    for label_index, label in enumerate(sorted(by_label)):
        members = sorted(by_label[label])
        rng = np.random.default_rng(
            np.random.SeedSequence(entropy=seed, spawn_key=(label_index,))
        )
        rng.shuffle(members)
        exact = [len(members) * r for r in ratios]
        quota = [int(e) for e in exact]
        spare = len(members) - sum(quota)
        order = sorted(range(3), key=lambda k: (-(exact[k] - quota[k]), k))
        for k in order:
            if spare == 0:
                break
            name = _SPLIT_NAMES[k]
            if len(buckets[name]) + quota[k] < capacity[k]:
                quota[k] += 1
                spare -= 1
        # If every preferred split is full, place remaining members wherever
        # global capacity is left.
        for k in range(3):
            while spare and len(buckets[_SPLIT_NAMES[k]]) + quota[k] < capacity[k]:
                quota[k] += 1
                spare -= 1
        cursor = 0
        for k, name in enumerate(_SPLIT_NAMES):
            buckets[name].extend(members[cursor : cursor + quota[k]])
            cursor += quota[k]

    return DatasetSplit(
        train=tuple(buckets["train"]),
        valid=tuple(buckets["valid"]),
        test=tuple(buckets["test"]),
        seed=seed,
    )

"""Byte-level BPE shared by code and natural-language text."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .errors import CorpusEmpty, UnknownId

SPECIALS = {"PAD": 0, "UNK": 1, "BOS": 2, "EOS": 3, "CLS": 4, "SEP": 5, "MSK": 6}
BYTE_OFFSET = len(SPECIALS)
BASE_SIZE = BYTE_OFFSET + 256  # specials + byte alphabet
VOCAB_VERSION = 1

WRAPS = ("none", "bos_eos", "cls_sep")


@dataclass(frozen=True)
class Vocabulary:
    """An ordered merge list over the byte alphabet plus fixed specials.

    Ids are dense: specials take 0..6, single bytes 7..262, and merge k
    produces id 263+k. Merges never touch special ids, so decode(encode(x))
    reconstructs x exactly.
    """

    merges: tuple[tuple[int, int], ...]
    specials: dict = field(default_factory=lambda: dict(SPECIALS))
    version: int = VOCAB_VERSION

    def __post_init__(self):
        if self.specials != SPECIALS:
            raise ValueError("special token ids are fixed")
        for k, (a, b) in enumerate(self.merges):
            limit = BASE_SIZE + k
            if not (BYTE_OFFSET <= a < limit and BYTE_OFFSET <= b < limit):
                raise ValueError(f"merge {k} references id out of range: {(a, b)}")
        object.__setattr__(self, "_token_bytes", _token_table(self.merges))
        object.__setattr__(
            self,
            "_ranks",
            {pair: (k, BASE_SIZE + k) for k, pair in enumerate(self.merges)},
        )

    @property
    def size(self) -> int:
        return BASE_SIZE + len(self.merges)

    def token_bytes(self, token_id: int) -> bytes:
        """Byte content of a token; empty for specials."""
        if not 0 <= token_id < self.size:
            raise UnknownId(f"id {token_id} outside vocabulary of size {self.size}")
        return self._token_bytes[token_id]

    def to_json_dict(self) -> dict:
        return {
            "merges": [list(m) for m in self.merges],
            "specials": dict(self.specials),
            "version": self.version,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Vocabulary":
        return cls(
            merges=tuple((int(a), int(b)) for a, b in data["merges"]),
            specials=dict(data["specials"]),
            version=int(data["version"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict()) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Vocabulary":
        return cls.from_json_dict(json.loads(text))

    def save(self, path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path) -> "Vocabulary":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def _token_table(merges) -> list[bytes]:
    table = [b""] * BYTE_OFFSET + [bytes([b]) for b in range(256)]
    for a, b in merges:
        table.append(table[a] + table[b])
    return table


def _merge_occurrences(seq: list[int], pair: tuple[int, int], new_id: int) -> list[int]:
    out = []
    i = 0
    while i < len(seq):
        if i + 1 < len(seq) and seq[i] == pair[0] and seq[i + 1] == pair[1]:
            out.append(new_id)
            i += 2
        else:
            out.append(seq[i])
            i += 1
    return out


def train_bpe(corpus: Iterable[str], vocab_size: int, seed: int = 0) -> Vocabulary:
    """Learn merges greedily by pair frequency until the budget is spent.

    Ties break toward the lexicographically smallest merged byte pair, and
    merging stops early once no pair repeats, so the result is a pure
    function of the corpus and budget; seed is accepted for interface
    stability but never consulted.
    """
    del seed
    docs = [d for d in corpus if d]
    if not docs:
        raise CorpusEmpty("tokenizer training needs at least one non-empty document")
    if vocab_size < BASE_SIZE:
        raise ValueError(f"vocab_size must be at least {BASE_SIZE}, got {vocab_size}")

    seqs = [[BYTE_OFFSET + b for b in doc.encode("utf-8")] for doc in docs]
    table = _token_table(())
    merges: list[tuple[int, int]] = []
    while BASE_SIZE + len(merges) < vocab_size:
        counts: dict[tuple[int, int], int] = {}
        for seq in seqs:
            for pair in zip(seq, seq[1:]):
                counts[pair] = counts.get(pair, 0) + 1
        if not counts:
            break
        best_count = max(counts.values())
        if best_count < 2:
            break
        best = min(
            (p for p, c in counts.items() if c == best_count),
            key=lambda p: (table[p[0]], table[p[1]]),
        )
        new_id = BASE_SIZE + len(merges)
        merges.append(best)
        table.append(table[best[0]] + table[best[1]])
        seqs = [_merge_occurrences(seq, best, new_id) for seq in seqs]
    return Vocabulary(merges=tuple(merges))


def encode(text: str, vocab: Vocabulary, wrap: str = "none") -> list[int]:
    """Tokenize text; merges apply in trained order, specials per wrap."""
    if wrap not in WRAPS:
        raise ValueError(f"wrap must be one of {WRAPS}, got {wrap!r}")
    ids = _apply_merges([BYTE_OFFSET + b for b in text.encode("utf-8")], vocab)
    if wrap == "bos_eos":
        return [SPECIALS["BOS"], *ids, SPECIALS["EOS"]]
    if wrap == "cls_sep":
        return [SPECIALS["CLS"], *ids, SPECIALS["SEP"]]
    return ids


def _apply_merges(ids: list[int], vocab: Vocabulary) -> list[int]:
    ranks = vocab._ranks
    if not ranks:
        return ids
    while len(ids) >= 2:
        best = None
        for pair in zip(ids, ids[1:]):
            entry = ranks.get(pair)
            if entry is not None and (best is None or entry[0] < best[1][0]):
                best = (pair, entry)
        if best is None:
            return ids
        ids = _merge_occurrences(ids, best[0], best[1][1])
    return ids


def decode(ids: Iterable[int], vocab: Vocabulary) -> str:
    """Reassemble text, dropping specials; raises UnknownId on bad ids."""
    data = b"".join(vocab.token_bytes(i) for i in ids)
    return data.decode("utf-8", errors="replace")


def iter_pair_texts(pairs) -> Iterator[str]:
    """Yield both sides of each pair, the usual tokenizer training corpus."""
    for pair in pairs:
        yield pair.comment
        yield pair.method

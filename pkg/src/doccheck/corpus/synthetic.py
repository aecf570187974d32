"""Small deterministic pair corpora for tests and smoke training."""

from __future__ import annotations

import re

import numpy as np

from ..errors import BatchTooSmall
from ..languages import LanguageId
from .pairs import PairExample

# (function name, comment, body) triples; comments are pairwise distinct and,
# as real docstrings do, mention the function's name words, so a matched pair
# shares rare tokens that a shuffled comment lacks.
_BANK = [
    ("add", "Add a and b.", "return a + b"),
    ("subtract", "Subtract b from a.", "return a - b"),
    ("multiply", "Multiply a by b.", "return a * b"),
    ("divide", "Divide a by b.", "return a / b"),
    ("modulo", "Return a modulo b.", "return a % b"),
    ("floor_divide", "Floor divide a by b.", "return a // b"),
    ("power", "Return a to the power b.", "return a ** b"),
    ("smaller", "Return the smaller of a and b.", "return a if a < b else b"),
    ("larger", "Return the larger of a and b.", "return a if a > b else b"),
    ("average", "Return the average of a and b.", "return (a + b) / 2"),
    ("hypotenuse", "Return the hypotenuse for legs a and b.", "return (a * a + b * b) ** 0.5"),
    ("same_sign", "Return True when a and b have the same sign.", "return (a >= 0) == (b >= 0)"),
    ("negate", "Negate a and return it.", "return -a"),
    ("square", "Return the square of a.", "return a * a"),
    ("cube", "Return the cube of a.", "return a * a * a"),
    ("double", "Return double the value of a.", "return a * 2"),
    ("halve", "Halve the value of a.", "return a / 2"),
    ("increment", "Increment a by one.", "return a + 1"),
    ("decrement", "Decrement a by one.", "return a - 1"),
    ("magnitude", "Return the magnitude of a.", "return a if a >= 0 else -a"),
    ("is_even", "Return True when a is even.", "return a % 2 == 0"),
    ("is_odd", "Return True when a is odd.", "return a % 2 == 1"),
    ("is_zero", "Return True when a is zero.", "return a == 0"),
    ("is_positive", "Return True when a is positive.", "return a > 0"),
    ("is_negative", "Return True when a is negative.", "return a < 0"),
    ("reciprocal", "Return the reciprocal of a.", "return 1 / a"),
    ("clamp_low", "Clamp a at a low bound of zero.", "return a if a > 0 else 0"),
    ("sign", "Return the sign of a.", "return (a > 0) - (a < 0)"),
    ("parity", "Return the parity of a.", "return a % 2"),
    ("swap_sum", "Swap and sum b with a.", "return b + a"),
    ("diff_abs", "Return the abs diff between a and b.", "return abs(a - b)"),
    ("last_digit", "Return the last digit of a.", "return a % 10"),
    ("tenfold", "Scale a tenfold.", "return a * 10"),
    ("third", "Return a third of a.", "return a / 3"),
    ("shift_up", "Shift a up by ten.", "return a + 10"),
    ("shift_down", "Shift a down by ten.", "return a - 10"),
]


def _method(name: str, body: str) -> str:
    params = "a, b" if re.search(r"\bb\b", body) else "a"
    return f"def {name}({params}):\n    {body}"


def make_synthetic_pairs(n: int, seed: int = 0) -> list[PairExample]:
    """Build n distinct consistent python pairs from a fixed template bank."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(0,)))
    order = rng.permutation(len(_BANK))
    pairs = []
    for i in range(n):
        name, comment, body = _BANK[order[i % len(_BANK)]]
        round_no = i // len(_BANK)
        if round_no:
            name = f"{name}_{round_no}"
            comment = f"{comment} Variant {round_no}."
        pairs.append(
            PairExample(
                id=f"syn-{i:04d}",
                comment=comment,
                method=_method(name, body),
                label="consistent",
                language=LanguageId.PYTHON,
                provenance="synthetic",
            )
        )
    return pairs


def _bank_index(pair: PairExample) -> int:
    name = pair.method.split("(")[0][len("def ") :]
    stem = name.rsplit("_", 1)[0] if name.rsplit("_", 1)[-1].isdigit() else name
    for k, (bank_name, _, _) in enumerate(_BANK):
        if bank_name == stem:
            return k
    raise ValueError(f"method {name!r} not from the template bank")


def make_labeled_pairs(n: int, seed: int = 0) -> list[PairExample]:
    """Build a balanced labeled set; odd indices get a mismatched comment."""
    base = make_synthetic_pairs(n, seed=seed)
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(1,)))
    out = []
    for i, pair in enumerate(base):
        if i % 2 == 0:
            out.append(pair)
            continue
        offset = int(rng.integers(1, len(_BANK)))
        wrong = _BANK[(_bank_index(pair) + offset) % len(_BANK)][1]
        out.append(
            PairExample(
                id=pair.id,
                comment=wrong,
                method=pair.method,
                label="inconsistent",
                language=pair.language,
                provenance=pair.provenance,
            )
        )
    return out


def derange_comments(pairs: list[PairExample], seed: int = 0) -> list[PairExample]:
    """Rotate comments so every pair gets another pair's comment.

    The result is labeled inconsistent throughout; a rotation by a nonzero
    offset guarantees no pair keeps its own comment.
    """
    if len(pairs) < 2:
        raise BatchTooSmall("need at least 2 pairs to derange")
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(2,)))
    offset = int(rng.integers(1, len(pairs)))
    out = []
    for i, pair in enumerate(pairs):
        donor = pairs[(i + offset) % len(pairs)]
        out.append(
            PairExample(
                id=f"{pair.id}-x",
                comment=donor.comment,
                method=pair.method,
                label="inconsistent",
                language=pair.language,
                provenance="synthetic",
            )
        )
    return out


def shuffle_comments(pairs: list[PairExample], seed: int = 0) -> list[PairExample]:
    """Reassign comments by a random permutation with no fixed points.

    Unlike derange_comments the donor offsets vary per pair, so repeated
    templates across variant rounds can land near-duplicate comments. All
    outputs are labeled inconsistent.
    """
    if len(pairs) < 2:
        raise BatchTooSmall("need at least 2 pairs to shuffle")
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(3,)))
    n = len(pairs)
    perm = rng.permutation(n)
    while np.any(perm == np.arange(n)):
        perm = rng.permutation(n)
    out = []
    for i, pair in enumerate(pairs):
        donor = pairs[int(perm[i])]
        out.append(
            PairExample(
                id=f"{pair.id}-s",
                comment=donor.comment,
                method=pair.method,
                label="inconsistent",
                language=pair.language,
                provenance="synthetic",
            )
        )
    return out

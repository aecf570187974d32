"""Hard negative mining over in-batch embedding similarities."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from ..errors import BatchTooSmall

_SIDES = ("text", "code")


class HardNegative(NamedTuple):
    """A sampled mismatched partner for one anchor pair."""

    anchor: int
    negative: int
    side: str  # which modality was swapped in


def mine_hard_negatives(
    code_embs,
    text_embs,
    seed: int,
    temperature: float = 0.07,
) -> list[HardNegative]:
    """Sample one text and one code negative per anchor.

    For anchor i the text negative j is drawn with probability proportional
    to softmax_j(u_i . v_j / temperature) over j != i, where u are code and
    v are text embeddings; the code negative mirrors this with the roles
    swapped. Sampling is keyed to (seed, side, anchor), so the draw for an
    anchor does not depend on batch iteration order.
    """
    code = np.asarray(code_embs, dtype=np.float64)
    text = np.asarray(text_embs, dtype=np.float64)
    if code.ndim != 2 or text.ndim != 2 or code.shape != text.shape:
        raise ValueError("embeddings must be two equal-shape (N, D) arrays")
    n = code.shape[0]
    if n < 2:
        raise BatchTooSmall(f"need at least 2 pairs to mine negatives, got {n}")
    if temperature <= 0:
        raise ValueError("temperature must be positive")
    norms = np.concatenate(
        [np.linalg.norm(code, axis=1), np.linalg.norm(text, axis=1)]
    )
    if not np.allclose(norms, 1.0, atol=1e-3):
        raise ValueError("embeddings must be unit-norm")

    sims = code @ text.T / temperature  # sims[i, j] = u_i . v_j / tau
    indices = np.arange(n)
    out: list[HardNegative] = []
    for anchor in range(n):
        others = np.delete(indices, anchor)
        for side_index, side in enumerate(_SIDES):
            logits = (
                sims[anchor, others] if side == "text" else sims[others, anchor]
            )
            weights = np.exp(logits - logits.max())
            cdf = np.cumsum(weights)
            rng = np.random.default_rng(
                np.random.SeedSequence(entropy=seed, spawn_key=(side_index, anchor))
            )
            pick = int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
            negative = int(others[min(pick, n - 2)])
            out.append(HardNegative(anchor=anchor, negative=negative, side=side))
    return out

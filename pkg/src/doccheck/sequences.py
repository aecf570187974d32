"""Token sequence assembly under the model's length budget.

Three reserved specials cover every layout used here: [CLS] x [SEP] for
unimodal, [CLS] code [SEP] text [SEP] for cross, and [CLS] code [SEP] +
[BOS] text ([EOS] as target) for generation. When a pair exceeds the
budget, text keeps at least a third of it and code takes the rest.
"""

from __future__ import annotations

from typing import NamedTuple

from .tokenize import SPECIALS

RESERVED = 3


class BudgetedPair(NamedTuple):
    code: list[int]
    text: list[int]
    truncated: bool


def split_budget(code_ids: list[int], text_ids: list[int], max_len: int) -> BudgetedPair:
    budget = max_len - RESERVED
    if budget < 2:
        raise ValueError(f"max_len {max_len} leaves no room for content")
    if len(code_ids) + len(text_ids) <= budget:
        return BudgetedPair(list(code_ids), list(text_ids), False)
    text_take = min(len(text_ids), max(1, budget // 3))
    code_take = min(len(code_ids), budget - text_take)
    text_take = min(len(text_ids), budget - code_take)
    return BudgetedPair(code_ids[:code_take], text_ids[:text_take], True)


def unimodal_tokens(ids: list[int], max_len: int) -> list[int]:
    content = ids[: max_len - 2]
    return [SPECIALS["CLS"], *content, SPECIALS["SEP"]]


def cross_tokens(code_ids: list[int], text_ids: list[int], max_len: int) -> list[int]:
    code, text, _ = split_budget(code_ids, text_ids, max_len)
    return [SPECIALS["CLS"], *code, SPECIALS["SEP"], *text, SPECIALS["SEP"]]


class GenerationPair(NamedTuple):
    code: list[int]  # [CLS] code [SEP]
    text_input: list[int]  # [BOS] text
    targets: list[int]  # text [EOS]


def generation_tokens(code_ids: list[int], text_ids: list[int], max_len: int) -> GenerationPair:
    code, text, _ = split_budget(code_ids, text_ids, max_len)
    return GenerationPair(
        code=[SPECIALS["CLS"], *code, SPECIALS["SEP"]],
        text_input=[SPECIALS["BOS"], *text],
        targets=[*text, SPECIALS["EOS"]],
    )


def prompt_tokens(code_ids: list[int], max_len: int, new_tokens: int) -> list[int]:
    """[CLS] code [SEP] sized so that new_tokens plus BOS still fit."""
    room = max_len - 2 - (new_tokens + 1)
    if room < 1:
        raise ValueError("max_len cannot accommodate the generation budget")
    return [SPECIALS["CLS"], *code_ids[:room], SPECIALS["SEP"]]

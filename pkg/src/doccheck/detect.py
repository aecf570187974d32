"""End-user pipeline: classify code-docstring pairs, generate replacements."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import torch

from .extract import FunctionRecord, parse_file, parse_source
from .languages import LanguageId
from .model import DocModel
from .sequences import cross_tokens, prompt_tokens, split_budget
from .tokenize import SPECIALS, Vocabulary, decode, encode

PREDICTIONS = ("consistent", "inconsistent", "missing_docstring")

_BANNED_OUTPUT_IDS = tuple(i for name, i in SPECIALS.items() if name != "EOS")


@dataclass(frozen=True)
class DecodeConfig:
    beam_width: int = 1  # 1 = greedy
    max_new_tokens: int = 64

    def __post_init__(self):
        if self.beam_width < 1:
            raise ValueError("beam_width must be at least 1")
        if self.max_new_tokens < 1:
            raise ValueError("max_new_tokens must be positive")


@dataclass(frozen=True)
class CheckResult:
    """Verdict for one function; serialized fields are fixed by contract.

    truncated and generation_empty are in-process warning flags and stay
    out of the wire format.
    """

    function_name: str
    code: str
    docstring: str | None
    prediction: str
    confidence: float
    recommended_docstring: str
    truncated: bool = False
    generation_empty: bool = False

    def __post_init__(self):
        if self.prediction not in PREDICTIONS:
            raise ValueError(f"unknown prediction {self.prediction!r}")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError("confidence must lie in [0, 1]")

    def to_json_dict(self) -> dict:
        out = {"function_name": self.function_name, "code": self.code}
        if self.docstring is not None:
            out["docstring"] = self.docstring
        out["prediction"] = self.prediction
        out["confidence"] = self.confidence
        out["recommended_docstring"] = self.recommended_docstring
        return out


def results_to_json(results: list[CheckResult]) -> str:
    return json.dumps([r.to_json_dict() for r in results], ensure_ascii=False, indent=2) + "\n"


def generate_docstring(
    code: str,
    model: DocModel,
    vocab: Vocabulary,
    decode_cfg: DecodeConfig = DecodeConfig(),
) -> str:
    """Decode a docstring for the code; greedy unless beam_width > 1.

    Beams are ranked by summed token log-probability. Generation stops at
    EOS or after max_new_tokens; an immediate EOS yields an empty string.
    """
    if not code.strip():
        raise ValueError("code must be non-empty")
    max_len = model.config.max_len
    new_budget = min(decode_cfg.max_new_tokens, max_len - 4)
    prompt = prompt_tokens(encode(code, vocab), max_len, new_budget)
    prompt_t = torch.tensor(prompt, dtype=torch.long)
    eos = SPECIALS["EOS"]
    bos = SPECIALS["BOS"]

    # (generated ids, score, finished)
    beams: list[tuple[tuple[int, ...], float, bool]] = [((), 0.0, False)]
    with torch.no_grad():
        for _ in range(new_budget):
            grown: list[tuple[tuple[int, ...], float, bool]] = []
            for ids, score, finished in beams:
                if finished:
                    grown.append((ids, score, finished))
                    continue
                text = torch.tensor([bos, *ids], dtype=torch.long)
                logits = model.decode_step(prompt_t, text)
                logits[list(_BANNED_OUTPUT_IDS)] = float("-inf")
                logprobs = logits.log_softmax(dim=-1)
                top = torch.topk(logprobs, k=decode_cfg.beam_width)
                for value, token in zip(top.values.tolist(), top.indices.tolist()):
                    if token == eos:
                        grown.append((ids, score + value, True))
                    else:
                        grown.append(((*ids, token), score + value, False))
            grown.sort(key=lambda b: (-b[1], b[0]))
            beams = grown[: decode_cfg.beam_width]
            if all(b[2] for b in beams):
                break
    best = beams[0][0]
    return decode(best, vocab).strip()


def check_pair(
    code: str,
    docstring: str | None,
    model: DocModel,
    vocab: Vocabulary,
    threshold: float = 0.5,
    decode_cfg: DecodeConfig = DecodeConfig(),
    function_name: str = "",
) -> CheckResult:
    """Classify one pair; inconsistent pairs get a generated replacement.

    confidence is the sigmoid of the classifier logit, i.e. the predicted
    probability of inconsistency; a missing docstring is reported with
    confidence 1.0 since no consistent reading exists.
    """
    if not code.strip():
        raise ValueError("code must be non-empty")
    if not 0.0 < threshold < 1.0:
        raise ValueError("threshold must lie strictly between 0 and 1")

    if docstring is None or not docstring.strip():
        generated = generate_docstring(code, model, vocab, decode_cfg)
        return CheckResult(
            function_name=function_name,
            code=code,
            docstring=None,
            prediction="missing_docstring",
            confidence=1.0,
            recommended_docstring=generated,
            generation_empty=not generated,
        )

    max_len = model.config.max_len
    code_ids = encode(code, vocab)
    text_ids = encode(docstring, vocab)
    budget = split_budget(code_ids, text_ids, max_len)
    with torch.no_grad():
        pooled = model.encode(
            cross_tokens(code_ids, text_ids, max_len), mode="cross"
        ).pooled
        logit = float(model.bc_logit(pooled))
    confidence = 1.0 / (1.0 + math.exp(-logit))
    if confidence > threshold:
        generated = generate_docstring(code, model, vocab, decode_cfg)
        return CheckResult(
            function_name=function_name,
            code=code,
            docstring=docstring,
            prediction="inconsistent",
            confidence=confidence,
            recommended_docstring=generated,
            truncated=budget.truncated,
            generation_empty=not generated,
        )
    return CheckResult(
        function_name=function_name,
        code=code,
        docstring=docstring,
        prediction="consistent",
        confidence=confidence,
        recommended_docstring=docstring,
        truncated=budget.truncated,
    )


def check_records(
    records: list[FunctionRecord],
    model: DocModel,
    vocab: Vocabulary,
    threshold: float = 0.5,
    decode_cfg: DecodeConfig = DecodeConfig(),
) -> list[CheckResult]:
    return [
        check_pair(
            record.code,
            record.docstring,
            model,
            vocab,
            threshold=threshold,
            decode_cfg=decode_cfg,
            function_name=record.function_name,
        )
        for record in records
    ]


def check_source(
    source: str,
    language: LanguageId,
    model: DocModel,
    vocab: Vocabulary,
    threshold: float = 0.5,
    decode_cfg: DecodeConfig = DecodeConfig(),
) -> list[CheckResult]:
    """Extract functions from source text and check each one in order."""
    parsed = parse_source(source, language)
    return check_records(parsed.records, model, vocab, threshold, decode_cfg)


def check_file(
    path,
    model: DocModel,
    vocab: Vocabulary,
    threshold: float = 0.5,
    decode_cfg: DecodeConfig = DecodeConfig(),
) -> list[CheckResult]:
    parsed = parse_file(str(path))
    return check_records(parsed.records, model, vocab, threshold, decode_cfg)

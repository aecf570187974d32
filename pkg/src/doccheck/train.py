"""Joint contrastive/classification/generation training and finetuning."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch

from .corpus.negatives import mine_hard_negatives
from .corpus.pairs import PairExample
from .errors import AllPositionsMasked, BatchTooSmall, NonFiniteLoss
from .model import DocModel, pad_batch, save_checkpoint
from .sequences import cross_tokens, generation_tokens, unimodal_tokens
from .tokenize import Vocabulary, encode

WARMUP_FRACTION = 0.1
ADAM_BETAS = (0.9, 0.999)
ADAM_EPS = 1e-8


@dataclass(frozen=True)
class TrainConfig:
    batch_size: int = 8
    epochs: int = 1
    learning_rate: float = 3e-4
    weight_decay: float = 0.01
    lambda_ctc: float = 1.0
    lambda_bc: float = 1.0
    lambda_tg: float = 1.0
    seed: int = 0
    checkpoint_every: int = 0  # steps between checkpoints; 0 disables

    def __post_init__(self):
        if self.batch_size < 2:
            raise ValueError("batch_size must be at least 2")
        if self.epochs < 1:
            raise ValueError("epochs must be positive")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if min(self.lambda_ctc, self.lambda_bc, self.lambda_tg) < 0:
            raise ValueError("loss weights must be non-negative")
        if self.lambda_ctc == self.lambda_bc == self.lambda_tg == 0:
            raise ValueError("at least one loss weight must be positive")
        if self.weight_decay < 0 or self.checkpoint_every < 0:
            raise ValueError("weight_decay and checkpoint_every must be non-negative")

    def to_json_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}

    @classmethod
    def from_json_dict(cls, data: dict) -> "TrainConfig":
        return cls(**data)


@dataclass(frozen=True)
class LossReport:
    ctc: float
    bc: float
    tg: float
    total: float
    step: int

    def to_json_dict(self) -> dict:
        return {"ctc": self.ctc, "bc": self.bc, "tg": self.tg, "total": self.total, "step": self.step}

    @classmethod
    def from_json_dict(cls, data: dict) -> "LossReport":
        return cls(**data)


def write_loss_log(reports: list[LossReport]) -> str:
    return "".join(json.dumps(r.to_json_dict()) + "\n" for r in reports)


def read_loss_log(text: str) -> list[LossReport]:
    return [LossReport.from_json_dict(json.loads(line)) for line in text.splitlines() if line.strip()]


def write_train_config(cfg: TrainConfig) -> str:
    """Render as `key = value` lines, one field per line."""
    return "".join(f"{k} = {getattr(cfg, k)}\n" for k in cfg.__dataclass_fields__)


def read_train_config(text: str) -> TrainConfig:
    fields = TrainConfig.__dataclass_fields__
    values = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in fields:
            raise ValueError(f"unknown training option {key!r}")
        kind = fields[key].type
        values[key] = int(value.strip()) if kind == "int" else float(value.strip())
    return TrainConfig(**values)


# ---- losses ----------------------------------------------------------------


def ctc_loss(code_proj, text_proj, temperature: float) -> torch.Tensor:
    """Symmetric InfoNCE over in-batch pairs.

    s_ij = u_i . v_j / temperature; the loss averages the row-wise and
    column-wise cross-entropies of the matching diagonal.
    """
    u = torch.as_tensor(code_proj, dtype=torch.float64)
    v = torch.as_tensor(text_proj, dtype=torch.float64)
    if u.dim() != 2 or v.dim() != 2 or u.shape != v.shape:
        raise ValueError("projections must be two equal-shape (N, D) tensors")
    if u.shape[0] < 2:
        raise BatchTooSmall(f"contrastive loss needs at least 2 pairs, got {u.shape[0]}")
    if temperature <= 0:
        raise ValueError("temperature must be positive")
    sims = u @ v.transpose(0, 1) / temperature

    def diagonal_ce(matrix):
        return (torch.logsumexp(matrix, dim=1) - matrix.diagonal()).mean()

    return 0.5 * (diagonal_ce(sims) + diagonal_ce(sims.transpose(0, 1)))


def bc_loss(logits, labels) -> torch.Tensor:
    """Mean sigmoid binary cross-entropy; label 1 means inconsistent."""
    x = torch.as_tensor(logits, dtype=torch.float64)
    y = torch.as_tensor(labels, dtype=torch.float64)
    if x.shape != y.shape or x.dim() != 1:
        raise ValueError("logits and labels must be equal-length vectors")
    if x.numel() == 0:
        raise ValueError("binary classification loss needs at least one example")
    return torch.nn.functional.binary_cross_entropy_with_logits(x, y)


def tg_loss(logits, targets, pad_mask) -> torch.Tensor:
    """Mean next-token cross-entropy over unmasked positions.

    pad_mask is True at positions excluded from the average.
    """
    x = torch.as_tensor(logits, dtype=torch.float64)
    t = torch.as_tensor(targets, dtype=torch.long)
    masked = torch.as_tensor(pad_mask, dtype=torch.bool)
    if x.shape[:-1] != t.shape or t.shape != masked.shape:
        raise ValueError("logits, targets, and pad_mask shapes must align")
    keep = ~masked
    if not keep.any():
        raise AllPositionsMasked("no unmasked generation positions")
    ce = -x.log_softmax(dim=-1).gather(-1, t.unsqueeze(-1)).squeeze(-1)
    return ce[keep].mean()


# ---- batching ---------------------------------------------------------------


class _Prepared:
    """Pre-tokenized views of one pair under every layout."""

    __slots__ = ("text_uni", "code_uni", "code_ids", "text_ids", "label")

    def __init__(self, pair: PairExample, vocab: Vocabulary, max_len: int):
        raw_text = encode(pair.comment, vocab)
        raw_code = encode(pair.method, vocab)
        self.text_uni = unimodal_tokens(raw_text, max_len)
        self.code_uni = unimodal_tokens(raw_code, max_len)
        self.code_ids = raw_code
        self.text_ids = raw_text
        self.label = 1.0 if pair.label == "inconsistent" else 0.0


def _epoch_batches(n: int, batch_size: int, seed: int, epoch: int) -> list[list[int]]:
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(0, epoch)))
    order = [int(i) for i in rng.permutation(n)]
    batches = [order[i : i + batch_size] for i in range(0, n, batch_size)]
    if len(batches) > 1 and len(batches[-1]) < 2:
        tail = batches.pop()
        batches[-1].extend(tail)
    return batches


def _mining_seed(seed: int, step: int) -> int:
    return int(np.random.SeedSequence(entropy=seed, spawn_key=(1, step)).generate_state(1)[0])


def _set_lr(optimizer, base_lr: float, step: int, total_steps: int) -> None:
    warmup = max(1, math.ceil(WARMUP_FRACTION * total_steps))
    scale = min(1.0, (step + 1) / warmup)
    for group in optimizer.param_groups:
        group["lr"] = base_lr * scale


def _report_from(parts: dict, weights: tuple, step: int) -> LossReport:
    ctc, bc, tg = (float(parts[k]) for k in ("ctc", "bc", "tg"))
    total = weights[0] * ctc + weights[1] * bc + weights[2] * tg
    return LossReport(ctc=ctc, bc=bc, tg=tg, total=total, step=step)


def _cross_batch(prepared, members, negatives, max_len):
    sequences, labels = [], []
    for i in members:
        sequences.append(cross_tokens(prepared[i].code_ids, prepared[i].text_ids, max_len))
        labels.append(0.0)
    for neg in negatives:
        a, j = members[neg.anchor], members[neg.negative]
        code_from, text_from = (a, j) if neg.side == "text" else (j, a)
        sequences.append(
            cross_tokens(prepared[code_from].code_ids, prepared[text_from].text_ids, max_len)
        )
        labels.append(1.0)
    return sequences, labels


def train_joint(
    pairs: list[PairExample],
    model: DocModel,
    vocab: Vocabulary,
    cfg: TrainConfig,
    checkpoint_dir=None,
) -> tuple[DocModel, list[LossReport]]:
    """Optimize the weighted sum of the three objectives over positive pairs.

    Every step contrasts in-batch projections, classifies positives against
    freshly mined hard negatives, and teaches generation of each comment
    from its code. Deterministic given cfg.seed.
    """
    if len(pairs) < 2:
        raise BatchTooSmall("joint training needs at least 2 pairs")
    bad = [p.id for p in pairs if p.label != "consistent"]
    if bad:
        raise ValueError(f"joint training expects consistent pairs only, got {bad[:3]}")

    max_len = model.config.max_len
    tau = model.config.temperature
    prepared = [_Prepared(p, vocab, max_len) for p in pairs]
    weights = (cfg.lambda_ctc, cfg.lambda_bc, cfg.lambda_tg)

    steps_per_epoch = len(_epoch_batches(len(pairs), cfg.batch_size, cfg.seed, 0))
    total_steps = steps_per_epoch * cfg.epochs
    optimizer = torch.optim.AdamW(
        model.parameters(),
        lr=cfg.learning_rate,
        betas=ADAM_BETAS,
        eps=ADAM_EPS,
        weight_decay=cfg.weight_decay,
    )

    reports: list[LossReport] = []
    step = 0
    for epoch in range(cfg.epochs):
        for members in _epoch_batches(len(pairs), cfg.batch_size, cfg.seed, epoch):
            parts = {"ctc": 0.0, "bc": 0.0, "tg": 0.0}
            pieces = []

            code_out = model.encode(pad_batch([prepared[i].code_uni for i in members]))
            text_out = model.encode(pad_batch([prepared[i].text_uni for i in members]))
            if not bool(
                torch.isfinite(code_out.projected).all()
                and torch.isfinite(text_out.projected).all()
            ):
                # Diverged weights poison every loss component; abort before
                # negative mining chokes on the non-finite projections.
                nan = math.nan
                raise NonFiniteLoss(
                    f"non-finite encoder output at step {step}",
                    report=LossReport(ctc=nan, bc=nan, tg=nan, total=nan, step=step),
                )
            if cfg.lambda_ctc > 0:
                ctc = ctc_loss(code_out.projected, text_out.projected, tau)
                parts["ctc"] = ctc.item()
                pieces.append(cfg.lambda_ctc * ctc)

            if cfg.lambda_bc > 0:
                negatives = mine_hard_negatives(
                    code_out.projected.detach().numpy(),
                    text_out.projected.detach().numpy(),
                    seed=_mining_seed(cfg.seed, step),
                    temperature=tau,
                )
                sequences, labels = _cross_batch(prepared, members, negatives, max_len)
                pooled = model.encode(pad_batch(sequences), mode="cross").pooled
                bc = bc_loss(model.bc_logit(pooled), torch.tensor(labels, dtype=torch.float64))
                parts["bc"] = bc.item()
                pieces.append(cfg.lambda_bc * bc)

            if cfg.lambda_tg > 0:
                gen = [
                    generation_tokens(prepared[i].code_ids, prepared[i].text_ids, max_len)
                    for i in members
                ]
                code_block = pad_batch([g.code for g in gen])
                text_block = pad_batch([g.text_input for g in gen])
                # text_input and targets have equal per-row lengths, so the
                # padded widths match.
                targets = pad_batch([g.targets for g in gen])
                mask = torch.ones(len(gen), text_block.shape[1], dtype=torch.bool)
                for row, g in enumerate(gen):
                    mask[row, : len(g.targets)] = False
                logits = model.decode_states(code_block, text_block)
                tg = tg_loss(logits, targets, mask)
                parts["tg"] = tg.item()
                pieces.append(cfg.lambda_tg * tg)

            report = _report_from(parts, weights, step)
            if not math.isfinite(report.total):
                raise NonFiniteLoss(f"non-finite loss at step {step}", report=report)
            reports.append(report)

            total = pieces[0]
            for piece in pieces[1:]:
                total = total + piece
            optimizer.zero_grad()
            total.backward()
            _set_lr(optimizer, cfg.learning_rate, step, total_steps)
            optimizer.step()

            step += 1
            if checkpoint_dir and cfg.checkpoint_every and step % cfg.checkpoint_every == 0:
                save_checkpoint(model, Path(checkpoint_dir) / f"step_{step:06d}.pt")

    return model, reports


def finetune_iccd(
    pairs: list[PairExample],
    model: DocModel,
    vocab: Vocabulary,
    cfg: TrainConfig,
    checkpoint_dir=None,
) -> tuple[DocModel, list[LossReport]]:
    """Optimize the classifier alone on dataset labels; no mining.

    Loss weights in cfg are ignored here: the reported total equals the
    classification loss.
    """
    if not pairs:
        raise ValueError("no pairs to train on")
    unlabeled = [p.id for p in pairs if p.label == "unlabeled"]
    if unlabeled:
        raise ValueError(f"finetuning needs labeled pairs, got unlabeled {unlabeled[:3]}")

    max_len = model.config.max_len
    prepared = [_Prepared(p, vocab, max_len) for p in pairs]
    steps_per_epoch = len(_epoch_batches(len(pairs), cfg.batch_size, cfg.seed, 0))
    total_steps = steps_per_epoch * cfg.epochs
    optimizer = torch.optim.AdamW(
        model.parameters(),
        lr=cfg.learning_rate,
        betas=ADAM_BETAS,
        eps=ADAM_EPS,
        weight_decay=cfg.weight_decay,
    )

    reports: list[LossReport] = []
    step = 0
    for epoch in range(cfg.epochs):
        for members in _epoch_batches(len(pairs), cfg.batch_size, cfg.seed, epoch):
            sequences = [
                cross_tokens(prepared[i].code_ids, prepared[i].text_ids, max_len)
                for i in members
            ]
            labels = torch.tensor([prepared[i].label for i in members], dtype=torch.float64)
            pooled = model.encode(pad_batch(sequences), mode="cross").pooled
            bc = bc_loss(model.bc_logit(pooled), labels)

            value = bc.item()
            report = LossReport(ctc=0.0, bc=value, tg=0.0, total=value, step=step)
            if not math.isfinite(report.total):
                raise NonFiniteLoss(f"non-finite loss at step {step}", report=report)
            reports.append(report)

            optimizer.zero_grad()
            bc.backward()
            _set_lr(optimizer, cfg.learning_rate, step, total_steps)
            optimizer.step()

            step += 1
            if checkpoint_dir and cfg.checkpoint_every and step % cfg.checkpoint_every == 0:
                save_checkpoint(model, Path(checkpoint_dir) / f"step_{step:06d}.pt")

    return model, reports

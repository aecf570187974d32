"""Shared-weight transformer stack with unimodal, cross, and decode masks."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from pathlib import Path

import torch
from torch import nn

from .errors import SequenceTooLong
from .tokenize import SPECIALS

PAD_ID = SPECIALS["PAD"]

CHECKPOINT_VERSION = 1

_LN_EPS = 1e-5


@dataclass(frozen=True)
class ModelConfig:
    """Architecture and scale; one config drives every tensor shape."""

    num_layers: int
    hidden: int
    heads: int
    intermediate: int
    proj_dim: int
    vocab_size: int
    max_len: int
    temperature: float = 0.07
    seed: int = 0

    def __post_init__(self):
        if self.hidden % self.heads != 0:
            raise ValueError("hidden must be divisible by heads")
        if self.temperature <= 0:
            raise ValueError("temperature must be positive")
        if self.max_len < 8:
            raise ValueError("max_len must be at least 8")
        for name in ("num_layers", "hidden", "heads", "intermediate", "proj_dim", "vocab_size"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    @classmethod
    def desk(cls, vocab_size: int, **overrides) -> "ModelConfig":
        """Small config that trains in seconds on a CPU."""
        defaults = dict(
            num_layers=2,
            hidden=64,
            heads=4,
            intermediate=256,
            proj_dim=32,
            vocab_size=vocab_size,
            max_len=128,
        )
        defaults.update(overrides)
        return cls(**defaults)

    @classmethod
    def full(cls, vocab_size: int = 50265, **overrides) -> "ModelConfig":
        """Full-scale config for real training runs."""
        defaults = dict(
            num_layers=12,
            hidden=768,
            heads=12,
            intermediate=3072,
            proj_dim=256,
            vocab_size=vocab_size,
            max_len=512,
        )
        defaults.update(overrides)
        return cls(**defaults)

    def to_json_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json_dict(cls, data: dict) -> "ModelConfig":
        return cls(**data)


@dataclass
class EncodedOutput:
    """Stack output: full states, the CLS state, and its unit projection."""

    states: torch.Tensor  # (..., seq, hidden)
    pooled: torch.Tensor  # (..., hidden)
    projected: torch.Tensor  # (..., proj_dim), L2-normalized


def _layer_norm(x, gain, bias):
    mean = x.mean(dim=-1, keepdim=True)
    var = x.var(dim=-1, unbiased=False, keepdim=True)
    return (x - mean) / torch.sqrt(var + _LN_EPS) * gain + bias


class _Block(nn.Module):
    def __init__(self, cfg: ModelConfig):
        super().__init__()
        h, i = cfg.hidden, cfg.intermediate
        d = torch.float64
        self.heads = cfg.heads
        self.ln1_g = nn.Parameter(torch.empty(h, dtype=d))
        self.ln1_b = nn.Parameter(torch.empty(h, dtype=d))
        self.wq = nn.Parameter(torch.empty(h, h, dtype=d))
        self.bq = nn.Parameter(torch.empty(h, dtype=d))
        self.wk = nn.Parameter(torch.empty(h, h, dtype=d))
        self.bk = nn.Parameter(torch.empty(h, dtype=d))
        self.wv = nn.Parameter(torch.empty(h, h, dtype=d))
        self.bv = nn.Parameter(torch.empty(h, dtype=d))
        self.wo = nn.Parameter(torch.empty(h, h, dtype=d))
        self.bo = nn.Parameter(torch.empty(h, dtype=d))
        self.ln2_g = nn.Parameter(torch.empty(h, dtype=d))
        self.ln2_b = nn.Parameter(torch.empty(h, dtype=d))
        self.w1 = nn.Parameter(torch.empty(h, i, dtype=d))
        self.b1 = nn.Parameter(torch.empty(i, dtype=d))
        self.w2 = nn.Parameter(torch.empty(i, h, dtype=d))
        self.b2 = nn.Parameter(torch.empty(h, dtype=d))

    def forward(self, x, mask):
        # Pre-norm attention.
        b, length, h = x.shape
        dh = h // self.heads
        y = _layer_norm(x, self.ln1_g, self.ln1_b)
        q = (y @ self.wq + self.bq).view(b, length, self.heads, dh).transpose(1, 2)
        k = (y @ self.wk + self.bk).view(b, length, self.heads, dh).transpose(1, 2)
        v = (y @ self.wv + self.bv).view(b, length, self.heads, dh).transpose(1, 2)
        scores = q @ k.transpose(-1, -2) / math.sqrt(dh)
        scores = scores.masked_fill(~mask, float("-inf"))
        att = torch.softmax(scores, dim=-1)
        ctx = (att @ v).transpose(1, 2).reshape(b, length, h)
        x = x + ctx @ self.wo + self.bo
        # Pre-norm feed-forward.
        y = _layer_norm(x, self.ln2_g, self.ln2_b)
        return x + (torch.nn.functional.gelu(y @ self.w1 + self.b1) @ self.w2 + self.b2)


class DocModel(nn.Module):
    """One parameter set serving contrastive, classification, and generation.

    The lm head reuses the token embedding matrix (weight tying), and
    decode_step runs the same blocks as encode under a mixed mask, so the
    "text decoder" and "text encoder" are literally the same tensors.
    """

    def __init__(self, config: ModelConfig):
        super().__init__()
        self.config = config
        d = torch.float64
        self.tok_emb = nn.Parameter(torch.empty(config.vocab_size, config.hidden, dtype=d))
        self.pos_emb = nn.Parameter(torch.empty(config.max_len, config.hidden, dtype=d))
        self.blocks = nn.ModuleList(_Block(config) for _ in range(config.num_layers))
        self.final_ln_g = nn.Parameter(torch.empty(config.hidden, dtype=d))
        self.final_ln_b = nn.Parameter(torch.empty(config.hidden, dtype=d))
        self.proj_w = nn.Parameter(torch.empty(config.hidden, config.proj_dim, dtype=d))
        self.proj_b = nn.Parameter(torch.empty(config.proj_dim, dtype=d))
        self.bc_w = nn.Parameter(torch.empty(config.hidden, 1, dtype=d))
        self.bc_b = nn.Parameter(torch.empty(1, dtype=d))
        self.lm_bias = nn.Parameter(torch.empty(config.vocab_size, dtype=d))
        self._init_parameters(config.seed)

    def _init_parameters(self, seed: int) -> None:
        gen = torch.Generator().manual_seed(seed)
        with torch.no_grad():
            for name, p in self.named_parameters():
                short = name.rsplit(".", 1)[-1]
                if short.endswith("_g"):
                    p.fill_(1.0)
                elif p.dim() >= 2:
                    p.normal_(0.0, 0.02, generator=gen)
                else:
                    p.zero_()

    @property
    def lm_head_weight(self) -> torch.Tensor:
        return self.tok_emb

    def encoder_stack(self) -> list[torch.Tensor]:
        return [p for blk in self.blocks for p in blk.parameters()]

    decoder_stack = encoder_stack  # one stack, two roles

    # ---- core forward -------------------------------------------------

    def _check_length(self, length: int) -> None:
        if length > self.config.max_len:
            raise SequenceTooLong(
                f"sequence of {length} tokens exceeds max_len {self.config.max_len}"
            )

    def _embed(self, tokens: torch.Tensor) -> torch.Tensor:
        length = tokens.shape[-1]
        return self.tok_emb[tokens] + self.pos_emb[:length]

    def _run(self, tokens: torch.Tensor, mask: torch.Tensor) -> torch.Tensor:
        x = self._embed(tokens)
        for blk in self.blocks:
            x = blk(x, mask)
        return _layer_norm(x, self.final_ln_g, self.final_ln_b)

    def project(self, pooled: torch.Tensor) -> torch.Tensor:
        raw = pooled @ self.proj_w + self.proj_b
        return raw / raw.norm(dim=-1, keepdim=True).clamp_min(1e-12)

    def bc_logit(self, pooled: torch.Tensor) -> torch.Tensor:
        return (pooled @ self.bc_w).squeeze(-1) + self.bc_b.squeeze()

    def lm_logits(self, states: torch.Tensor) -> torch.Tensor:
        return states @ self.tok_emb.transpose(0, 1) + self.lm_bias

    # ---- public operations --------------------------------------------

    def encode(self, tokens, mode: str = "unimodal") -> EncodedOutput:
        """Bidirectional encoding; pooled is the state at position 0 (CLS).

        Unimodal input is [CLS] x [SEP]; cross input is
        [CLS] code [SEP] text [SEP]. PAD tokens are masked out as keys, so
        tail padding cannot influence any non-PAD state.
        """
        if mode not in ("unimodal", "cross"):
            raise ValueError(f"unknown mode {mode!r}")
        tokens, single = _as_batch(tokens)
        self._check_length(tokens.shape[1])
        keys_ok = tokens != PAD_ID  # (B, L)
        mask = keys_ok[:, None, None, :]
        states = self._run(tokens, mask)
        pooled = states[:, 0]
        out = EncodedOutput(states=states, pooled=pooled, projected=self.project(pooled))
        if single:
            return EncodedOutput(
                states=out.states[0], pooled=out.pooled[0], projected=out.projected[0]
            )
        return out

    def decode_states(self, code_tokens, text_tokens) -> torch.Tensor:
        """LM logits at every text position under the mixed mask.

        Rows in the code block attend the full code block; rows in the text
        block attend the full code block plus text positions at or before
        themselves. Logits index t predicts the token after text position t.
        """
        code, code_single = _as_batch(code_tokens)
        text, text_single = _as_batch(text_tokens)
        if code.shape[0] != text.shape[0]:
            raise ValueError("code and text batches must align")
        if text.shape[1] < 1:
            raise ValueError("text prefix must contain at least one token")
        lc, lt = code.shape[1], text.shape[1]
        self._check_length(lc + lt)
        tokens = torch.cat([code, text], dim=1)
        mask = _mixed_mask(tokens != PAD_ID, lc)
        states = self._run(tokens, mask)
        logits = self.lm_logits(states[:, lc:])
        if code_single and text_single:
            return logits[0]
        return logits

    def decode_step(self, code_tokens, text_prefix_tokens) -> torch.Tensor:
        """Next-token logits after the last text prefix position."""
        logits = self.decode_states(code_tokens, text_prefix_tokens)
        return logits[..., -1, :]


def _as_batch(tokens) -> tuple[torch.Tensor, bool]:
    if not isinstance(tokens, torch.Tensor):
        tokens = torch.tensor(tokens, dtype=torch.long)
    if tokens.dim() == 1:
        return tokens[None, :], True
    if tokens.dim() == 2:
        return tokens, False
    raise ValueError("tokens must be a 1-D sequence or a 2-D batch")


def _mixed_mask(keys_ok: torch.Tensor, code_len: int) -> torch.Tensor:
    """(B, 1, L, L) mask: code rows see code; text rows see code + past text."""
    b, length = keys_ok.shape
    is_code = torch.zeros(length, dtype=torch.bool)
    is_code[:code_len] = True
    pos = torch.arange(length)
    # allowed[i, j] without padding: code keys always; text keys only for
    # text rows with j <= i.
    code_key = is_code[None, :].expand(length, length)
    causal_text = (~is_code[None, :]) & (~is_code[:, None]) & (pos[None, :] <= pos[:, None])
    allowed = code_key | causal_text
    return allowed[None, None, :, :] & keys_ok[:, None, None, :]


def pad_batch(sequences: list[list[int]]) -> torch.Tensor:
    """Right-pad with PAD to a rectangle."""
    width = max((len(s) for s in sequences), default=0)
    out = torch.full((len(sequences), width), PAD_ID, dtype=torch.long)
    for row, seq in enumerate(sequences):
        out[row, : len(seq)] = torch.tensor(seq, dtype=torch.long)
    return out


def parameter_count(config: ModelConfig) -> int:
    """Closed-form size of every declared tensor (lm weight is tied)."""
    h, i, v = config.hidden, config.intermediate, config.vocab_size
    per_layer = 4 * (h * h + h) + 2 * h + (h * i + i) + (i * h + h) + 2 * h
    return (
        v * h
        + config.max_len * h
        + config.num_layers * per_layer
        + 2 * h
        + (h * config.proj_dim + config.proj_dim)
        + (h + 1)
        + v
    )


def save_checkpoint(model: DocModel, path) -> None:
    payload = {
        "version": CHECKPOINT_VERSION,
        "config": model.config.to_json_dict(),
        "state": model.state_dict(),
    }
    torch.save(payload, Path(path))


def load_checkpoint(path) -> DocModel:
    payload = torch.load(Path(path), weights_only=True)
    if payload.get("version") != CHECKPOINT_VERSION:
        raise ValueError(f"unsupported checkpoint version {payload.get('version')!r}")
    config = ModelConfig.from_json_dict(payload["config"])
    model = DocModel(config)
    model.load_state_dict(payload["state"])
    return model

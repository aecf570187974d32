"""Classification metrics, smoothed BLEU-4, and classical TF-IDF baselines."""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .corpus import PairExample
from .errors import EmptyInput, EmptyReference, LengthMismatch, SingleClassTrain

POSITIVE_LABEL = "inconsistent"
NEGATIVE_LABEL = "consistent"

# Identifier-splitting tokenizer: lowercased alphanumeric runs, so snake_case
# code names share tokens with the prose that mentions them.
_TOKEN_RE = re.compile(r"[A-Za-z0-9]+")


@dataclass
class MetricsReport:
    """Confusion counts plus derived rates for one evaluation run."""

    accuracy: float
    precision: float
    recall: float
    f1: float
    tp: int
    fp: int
    tn: int
    fn: int
    bleu4: float | None = None
    per_language: dict[str, float] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        out = {
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "tp": self.tp,
            "fp": self.fp,
            "tn": self.tn,
            "fn": self.fn,
        }
        if self.bleu4 is not None:
            out["bleu4"] = self.bleu4
        if self.per_language:
            out["per_language"] = dict(self.per_language)
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "MetricsReport":
        return cls(
            accuracy=data["accuracy"],
            precision=data["precision"],
            recall=data["recall"],
            f1=data["f1"],
            tp=data["tp"],
            fp=data["fp"],
            tn=data["tn"],
            fn=data["fn"],
            bleu4=data.get("bleu4"),
            per_language=dict(data.get("per_language", {})),
        )


def classification_metrics(
    preds: Sequence[str],
    labels: Sequence[str],
    positive_label: str = POSITIVE_LABEL,
) -> MetricsReport:
    """Score predictions against labels with F1 taken w.r.t. positive_label.

    Zero-division convention: precision, recall, and f1 are 0.0 whenever
    their denominator is zero.
    """
    preds = list(preds)
    labels = list(labels)
    if len(preds) != len(labels):
        raise LengthMismatch(f"{len(preds)} predictions vs {len(labels)} labels")
    if not preds:
        raise EmptyInput("no predictions to score")

    tp = fp = tn = fn = 0
    for pred, label in zip(preds, labels):
        if pred == positive_label:
            if label == positive_label:
                tp += 1
            else:
                fp += 1
        elif label == positive_label:
            fn += 1
        else:
            tn += 1

    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    accuracy = (tp + tn) / len(preds)
    return MetricsReport(
        accuracy=accuracy,
        precision=precision,
        recall=recall,
        f1=f1,
        tp=tp,
        fp=fp,
        tn=tn,
        fn=fn,
    )


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def smoothed_bleu4(candidate: Sequence[str], reference: Sequence[str]) -> float:
    """Sentence BLEU-4 with add-one smoothing on the n >= 2 precisions.

    The unigram precision stays unsmoothed, so a candidate sharing no tokens
    with the reference scores 0. Brevity penalty exp(1 - r/c) applies when
    the candidate is shorter than the reference. Scores lie in [0, 100].
    """
    if not reference:
        raise EmptyReference("reference must contain at least one token")
    if not candidate:
        return 0.0

    log_sum = 0.0
    for n in range(1, 5):
        cand_counts = _ngrams(candidate, n)
        ref_counts = _ngrams(reference, n)
        matched = sum(min(count, ref_counts[gram]) for gram, count in cand_counts.items())
        total = max(len(candidate) - n + 1, 0)
        if n == 1:
            if matched == 0:
                return 0.0
            precision = matched / total
        else:
            precision = (matched + 1) / (total + 1)
        log_sum += math.log(precision)

    geo_mean = math.exp(log_sum / 4)
    c, r = len(candidate), len(reference)
    brevity = 1.0 if c >= r else math.exp(1 - r / c)
    return 100.0 * brevity * geo_mean


def corpus_bleu(
    candidates: Sequence[Sequence[str]],
    references: Sequence[Sequence[str]],
    languages: Sequence[str],
) -> MetricsReport:
    """Average sentence scores within each language, then across languages.

    The overall bleu4 is the unweighted mean of the per-language means, so
    a language's contribution does not scale with its sentence count.
    """
    if not (len(candidates) == len(references) == len(languages)):
        raise LengthMismatch(
            f"{len(candidates)} candidates, {len(references)} references, "
            f"{len(languages)} languages"
        )
    if not candidates:
        raise EmptyInput("no sentence pairs to score")

    by_language: dict[str, list[float]] = {}
    for cand, ref, lang in zip(candidates, references, languages):
        by_language.setdefault(str(lang), []).append(smoothed_bleu4(cand, ref))
    per_language = {lang: sum(s) / len(s) for lang, s in by_language.items()}
    overall = sum(per_language.values()) / len(per_language)
    return MetricsReport(
        accuracy=0.0,
        precision=0.0,
        recall=0.0,
        f1=0.0,
        tp=0,
        fp=0,
        tn=0,
        fn=0,
        bleu4=overall,
        per_language=per_language,
    )


def _tokens(text: str) -> list[str]:
    return [t.lower() for t in _TOKEN_RE.findall(text)]


class _TfidfSpace:
    """Log-tf / smoothed-idf vectors over a vocabulary fitted on train docs."""

    def __init__(self, documents: Sequence[list[str]]):
        vocabulary: dict[str, int] = {}
        df = Counter()
        for doc in documents:
            for term in set(doc):
                df[term] += 1
                if term not in vocabulary:
                    vocabulary[term] = len(vocabulary)
        n_docs = len(documents)
        self.vocabulary = vocabulary
        self.idf = np.zeros(len(vocabulary))
        for term, index in vocabulary.items():
            self.idf[index] = math.log((1 + n_docs) / (1 + df[term])) + 1

    def vector(self, tokens: list[str]) -> np.ndarray:
        vec = np.zeros(len(self.vocabulary))
        for term, count in Counter(tokens).items():
            index = self.vocabulary.get(term)
            if index is not None:
                vec[index] = (1 + math.log(count)) * self.idf[index]
        return vec


def _cosine(a: np.ndarray, b: np.ndarray) -> float:
    denom = float(np.linalg.norm(a) * np.linalg.norm(b))
    return float(a @ b) / denom if denom else 0.0


def _pair_vectors(space: _TfidfSpace, pair: PairExample) -> tuple[np.ndarray, np.ndarray]:
    return space.vector(_tokens(pair.comment)), space.vector(_tokens(pair.method))


def _fit_space(train_pairs: Sequence[PairExample]) -> _TfidfSpace:
    documents = [_tokens(p.comment) for p in train_pairs]
    documents += [_tokens(p.method) for p in train_pairs]
    return _TfidfSpace(documents)


def tfidf_scores(
    train_pairs: Sequence[PairExample],
    eval_pairs: Sequence[PairExample],
) -> list[float]:
    """Cosine similarity of each pair's comment and code TF-IDF vectors.

    The vector space (vocabulary and idf) is fitted on the train pairs only.
    """
    if not train_pairs or not eval_pairs:
        raise EmptyInput("need non-empty train and eval pairs")
    space = _fit_space(train_pairs)
    return [_cosine(*_pair_vectors(space, p)) for p in eval_pairs]


def _check_both_labels(pairs: Sequence[PairExample]) -> None:
    labels = {p.label for p in pairs}
    if not {POSITIVE_LABEL, NEGATIVE_LABEL} <= labels:
        raise SingleClassTrain(f"train split needs both labels, got {sorted(labels)}")


def _best_threshold(scores: list[float], labels: list[str]) -> float:
    """Pick the similarity cutoff maximizing F1; ties go to the lower cutoff.

    A pair is flagged inconsistent when its score falls strictly below the
    cutoff, so candidates run from "flag none" to "flag all".
    """
    candidates = sorted(set(scores))
    candidates.append(candidates[-1] + 1.0)
    best_threshold = candidates[0]
    best_f1 = -1.0
    for threshold in candidates:
        preds = [POSITIVE_LABEL if s < threshold else NEGATIVE_LABEL for s in scores]
        f1 = classification_metrics(preds, labels).f1
        if f1 > best_f1:
            best_f1 = f1
            best_threshold = threshold
    return best_threshold


def _svm_fit(features: np.ndarray, targets: np.ndarray, epochs: int = 500,
             reg: float = 1e-2) -> tuple[np.ndarray, float]:
    """Full-batch subgradient descent on the regularized hinge loss.

    Pegasos schedule: step 1/(reg*t) followed by projection onto the ball of
    radius 1/sqrt(reg), which keeps the early huge steps from diverging.
    """
    n, dim = features.shape
    weights = np.zeros(dim)
    bias = 0.0
    radius = 1.0 / math.sqrt(reg)
    for t in range(1, epochs + 1):
        margins = targets * (features @ weights + bias)
        violating = margins < 1
        lr = 1.0 / (reg * t)
        grad_w = reg * weights - (targets[violating] @ features[violating]) / n
        grad_b = -float(np.sum(targets[violating])) / n
        weights = weights - lr * grad_w
        bias = bias - lr * grad_b
        norm = float(np.linalg.norm(weights))
        if norm > radius:
            weights *= radius / norm
    return weights, bias


def tfidf_similarity_baseline(
    train_pairs: Sequence[PairExample],
    test_pairs: Sequence[PairExample],
    mode: str = "threshold",
) -> tuple[float, MetricsReport]:
    """Score test pairs with a classical TF-IDF model fitted on train pairs.

    "threshold" mode flags a pair inconsistent when the cosine similarity
    between its comment and code vectors falls below a cutoff tuned to
    maximize train F1. "svm" mode trains a linear max-margin classifier on
    the concatenated comment and code vectors and returns 0.0 (the margin
    decision point) in place of a similarity cutoff.
    """
    if not train_pairs or not test_pairs:
        raise EmptyInput("need non-empty train and test splits")
    _check_both_labels(train_pairs)
    if mode not in ("threshold", "svm"):
        raise ValueError(f"unknown mode {mode!r}")

    space = _fit_space(train_pairs)
    test_labels = [p.label for p in test_pairs]

    if mode == "threshold":
        train_scores = [_cosine(*_pair_vectors(space, p)) for p in train_pairs]
        threshold = _best_threshold(train_scores, [p.label for p in train_pairs])
        preds = [
            POSITIVE_LABEL if _cosine(*_pair_vectors(space, p)) < threshold
            else NEGATIVE_LABEL
            for p in test_pairs
        ]
        return threshold, classification_metrics(preds, test_labels)

    def features_of(pairs: Sequence[PairExample]) -> np.ndarray:
        rows = []
        for p in pairs:
            comment_vec, code_vec = _pair_vectors(space, p)
            for vec in (comment_vec, code_vec):
                norm = np.linalg.norm(vec)
                if norm:
                    vec /= norm
            rows.append(np.concatenate([comment_vec, code_vec]))
        return np.stack(rows)

    train_x = features_of(train_pairs)
    train_y = np.array([1.0 if p.label == POSITIVE_LABEL else -1.0 for p in train_pairs])
    weights, bias = _svm_fit(train_x, train_y)
    margins = features_of(test_pairs) @ weights + bias
    preds = [POSITIVE_LABEL if m > 0 else NEGATIVE_LABEL for m in margins]
    return 0.0, classification_metrics(preds, test_labels)

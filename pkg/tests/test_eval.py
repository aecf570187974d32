"""Metric oracles, BLEU fixtures, and TF-IDF baseline behavior."""

import math
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from doccheck.corpus import (
    PairExample,
    make_synthetic_pairs,
    shuffle_comments,
)
from doccheck.errors import (
    EmptyInput,
    EmptyReference,
    LengthMismatch,
    SingleClassTrain,
)
from doccheck.eval import (
    MetricsReport,
    classification_metrics,
    corpus_bleu,
    smoothed_bleu4,
    tfidf_scores,
    tfidf_similarity_baseline,
)
from doccheck.eval import _best_threshold

POS = "inconsistent"
NEG = "consistent"


def outcomes(tp=0, fp=0, fn=0, tn=0):
    """Build (preds, labels) lists realizing the given confusion counts."""
    preds = [POS] * tp + [POS] * fp + [NEG] * fn + [NEG] * tn
    labels = [POS] * tp + [NEG] * fp + [POS] * fn + [NEG] * tn
    return preds, labels


class TestClassificationMetrics:
    def test_perfect_predictions(self):
        preds, labels = outcomes(tp=3, tn=2)
        report = classification_metrics(preds, labels)
        assert report.accuracy == 1.0
        assert report.f1 == 1.0
        assert (report.tp, report.fp, report.tn, report.fn) == (3, 0, 2, 0)

    def test_two_one_one_zero_confusion(self):
        preds, labels = outcomes(tp=2, fp=1, fn=1, tn=0)
        report = classification_metrics(preds, labels)
        assert report.precision == 2 / 3
        assert report.recall == 2 / 3
        assert report.f1 == 2 * (2 / 3) * (2 / 3) / ((2 / 3) + (2 / 3))
        assert report.accuracy == 0.5

    def test_three_two_four_one_confusion(self):
        preds, labels = outcomes(tp=3, fp=2, tn=4, fn=1)
        report = classification_metrics(preds, labels)
        assert report.precision == 3 / 5
        assert report.recall == 3 / 4
        assert report.f1 == 2 * (3 / 5) * (3 / 4) / ((3 / 5) + (3 / 4))
        assert report.accuracy == 0.7

    def test_all_negative_predictions_zero_f1(self):
        preds, labels = outcomes(fn=2, tn=3)
        report = classification_metrics(preds, labels)
        assert report.precision == 0.0
        assert report.recall == 0.0
        assert report.f1 == 0.0
        assert report.accuracy == 0.6

    def test_one_three_one_five_confusion(self):
        preds, labels = outcomes(tp=1, fp=3, fn=1, tn=5)
        report = classification_metrics(preds, labels)
        assert report.precision == 1 / 4
        assert report.recall == 1 / 2
        assert report.f1 == 2 * (1 / 4) * (1 / 2) / ((1 / 4) + (1 / 2))
        assert report.accuracy == 0.6

    def test_custom_positive_label(self):
        report = classification_metrics(
            [NEG, POS], [NEG, NEG], positive_label=NEG
        )
        assert (report.tp, report.fp, report.fn, report.tn) == (1, 0, 1, 0)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            classification_metrics([POS], [POS, NEG])

    def test_empty_input(self):
        with pytest.raises(EmptyInput):
            classification_metrics([], [])

    @given(st.lists(st.tuples(st.sampled_from([POS, NEG]), st.sampled_from([POS, NEG])),
                    min_size=1, max_size=40),
           st.randoms(use_true_random=False))
    @settings(max_examples=200, deadline=None)
    def test_permutation_invariance(self, joint, rng):
        preds = [p for p, _ in joint]
        labels = [l for _, l in joint]
        before = classification_metrics(preds, labels)
        rng.shuffle(joint)
        after = classification_metrics([p for p, _ in joint], [l for _, l in joint])
        assert before == after


class TestSmoothedBleu4:
    def test_partial_overlap_fixture(self):
        score = smoothed_bleu4("the cat sat".split(), "the cat sat down".split())
        # p1..p3 = 1, smoothed p4 = 1, brevity penalty exp(1 - 4/3)
        assert abs(score - 100 * math.exp(1 - 4 / 3)) < 1e-9
        assert abs(score - 71.65313105737893) < 1e-6

    def test_identical_sentences(self):
        assert smoothed_bleu4("a b c".split(), "a b c".split()) == 100.0

    def test_matching_prefix_half_length(self):
        # all precisions 1, brevity penalty exp(1 - 4/2)
        score = smoothed_bleu4("a b".split(), "a b c d".split())
        assert abs(score - 100 * math.exp(-1)) < 1e-9

    def test_engineered_exact_half_score(self):
        # p1 = 3/4, p2 = (1+1)/(3+1), p3 = (0+1)/(2+1), p4 = (0+1)/(1+1):
        # the product is 1/16, whose 4th root halves the perfect score.
        score = smoothed_bleu4("a b c d".split(), "a b x c".split())
        assert abs(score - 50.0) < 1e-9

    def test_empty_candidate(self):
        assert smoothed_bleu4([], ["a"]) == 0.0

    def test_no_token_overlap_scores_zero(self):
        assert smoothed_bleu4("x y".split(), "a b".split()) == 0.0

    def test_empty_reference_rejected(self):
        with pytest.raises(EmptyReference):
            smoothed_bleu4(["a"], [])

    def test_monotone_under_correct_extension(self):
        reference = "the cat sat down".split()
        scores = [
            smoothed_bleu4(reference[:k], reference) for k in range(1, len(reference) + 1)
        ]
        assert scores == sorted(scores)
        assert all(a < b for a, b in zip(scores, scores[1:]))

    @given(st.lists(st.sampled_from("abcde"), min_size=0, max_size=12),
           st.lists(st.sampled_from("abcde"), min_size=1, max_size=12))
    @settings(max_examples=300, deadline=None)
    def test_range(self, candidate, reference):
        score = smoothed_bleu4(candidate, reference)
        assert 0.0 <= score <= 100.0


class TestCorpusBleu:
    def test_single_language_equals_sentence_mean(self):
        candidates = ["a b c".split(), [], "a b".split()]
        references = ["a b c".split(), ["a"], "a b c d".split()]
        sentence = [smoothed_bleu4(c, r) for c, r in zip(candidates, references)]
        report = corpus_bleu(candidates, references, ["python"] * 3)
        assert report.bleu4 == sum(sentence) / 3
        assert report.per_language == {"python": sum(sentence) / 3}

    def test_two_languages_macro_average(self):
        # language means 40 and 60 from exact 100/0 sentence scores
        perfect = ("a b".split(), "a b".split())
        zero = ([], ["a"])
        sentences = [perfect, perfect, zero, zero, zero,  # python: mean 40
                     perfect, perfect, perfect, zero, zero]  # java: mean 60
        languages = ["python"] * 5 + ["java"] * 5
        report = corpus_bleu(*zip(*sentences), languages)
        assert report.per_language == {"python": 40.0, "java": 60.0}
        assert report.bleu4 == 50.0

    def test_ten_pair_recomputation(self):
        rows = [
            ("a b c d", "a b c d", "python"),
            ("a b", "a b c d", "python"),
            ("x", "x y", "python"),
            ("the cat sat", "the cat sat down", "java"),
            ("the cat", "the cat sat down", "java"),
            ("p q r", "p q r", "go"),
            ("p q", "p q r", "go"),
            ("", "w", "go"),
            ("m n o", "m n o p", "ruby"),
            ("m", "m n", "ruby"),
        ]
        candidates = [r[0].split() for r in rows]
        references = [r[1].split() for r in rows]
        languages = [r[2] for r in rows]
        report = corpus_bleu(candidates, references, languages)

        by_language = {}
        for cand, ref, lang in zip(candidates, references, languages):
            by_language.setdefault(lang, []).append(smoothed_bleu4(cand, ref))
        means = {lang: sum(s) / len(s) for lang, s in by_language.items()}
        assert set(report.per_language) == set(means)
        for lang, mean in means.items():
            assert abs(report.per_language[lang] - mean) < 1e-9
        assert abs(report.bleu4 - sum(means.values()) / len(means)) < 1e-9

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            corpus_bleu([["a"]], [["a"], ["b"]], ["python", "python"])

    def test_empty_input(self):
        with pytest.raises(EmptyInput):
            corpus_bleu([], [], [])


def make_pair(i, comment, method, label=NEG):
    return PairExample(
        id=f"p{i:03d}",
        comment=comment,
        method=method,
        label=label,
        language="python",
        provenance="synthetic",
    )


class TestTfidfScores:
    def test_identical_texts_unit_similarity(self):
        train = [
            make_pair(0, "alpha beta gamma", "alpha beta gamma"),
            make_pair(1, "delta", "def other(): pass", label=POS),
        ]
        score = tfidf_scores(train, [train[0]])[0]
        assert abs(score - 1.0) < 1e-12

    def test_shared_terms_strictly_positive(self):
        train = [
            make_pair(0, "parse the header line", "def parse_header(line): return line"),
            make_pair(1, "unrelated words", "def zzz(): pass", label=POS),
        ]
        assert tfidf_scores(train, [train[0]])[0] > 0.0

    def test_disjoint_terms_zero(self):
        pair = make_pair(0, "alpha", "beta")
        other = make_pair(1, "alpha beta", "alpha beta", label=POS)
        assert tfidf_scores([pair, other], [pair])[0] == 0.0

    def test_empty_inputs_rejected(self):
        pair = make_pair(0, "a", "b")
        with pytest.raises(EmptyInput):
            tfidf_scores([], [pair])
        with pytest.raises(EmptyInput):
            tfidf_scores([pair], [])


class TestBestThreshold:
    def test_separating_cutoff_found(self):
        scores = [0.1, 0.2, 0.8, 0.9]
        labels = [POS, POS, NEG, NEG]
        assert _best_threshold(scores, labels) == 0.8

    def test_zero_f1_ties_take_lowest_cutoff(self):
        scores = [0.3, 0.7]
        labels = [NEG, NEG]
        assert _best_threshold(scores, labels) == 0.3

    def test_flag_all_when_every_pair_positive(self):
        scores = [0.3, 0.7]
        labels = [POS, POS]
        assert _best_threshold(scores, labels) == 0.7 + 1.0


class TestTfidfBaseline:
    def test_shuffled_comments_separable(self):
        clean = make_synthetic_pairs(48, seed=2)
        data = clean + shuffle_comments(clean, seed=2)
        threshold, report = tfidf_similarity_baseline(data, data)
        assert report.accuracy >= 0.95
        # cross-round comment collisions keep the linear baseline imperfect
        assert report.accuracy < 1.0
        assert 0.0 < threshold < 1.0

    def test_svm_learns_marker_token(self):
        clean = make_synthetic_pairs(40, seed=5)
        marked = [
            replace(p, id=p.id + "-d", comment="Deprecated. " + p.comment, label=POS)
            for p in clean
        ]
        data = clean + marked
        train = [p for i, p in enumerate(data) if i % 2 == 0]
        test = [p for i, p in enumerate(data) if i % 2 == 1]
        threshold, report = tfidf_similarity_baseline(train, test, mode="svm")
        assert threshold == 0.0
        assert report.accuracy == 1.0

    def test_svm_deterministic(self):
        clean = make_synthetic_pairs(12, seed=8)
        data = clean + shuffle_comments(clean, seed=8)
        first = tfidf_similarity_baseline(data, data, mode="svm")
        second = tfidf_similarity_baseline(data, data, mode="svm")
        assert first == second

    def test_single_class_train_rejected(self):
        clean = make_synthetic_pairs(6, seed=0)
        with pytest.raises(SingleClassTrain):
            tfidf_similarity_baseline(clean, clean)

    def test_empty_splits_rejected(self):
        clean = make_synthetic_pairs(4, seed=0)
        data = clean + shuffle_comments(clean, seed=0)
        with pytest.raises(EmptyInput):
            tfidf_similarity_baseline([], data)
        with pytest.raises(EmptyInput):
            tfidf_similarity_baseline(data, [])

    def test_unknown_mode_rejected(self):
        clean = make_synthetic_pairs(4, seed=0)
        data = clean + shuffle_comments(clean, seed=0)
        with pytest.raises(ValueError):
            tfidf_similarity_baseline(data, data, mode="forest")


class TestMetricsReportJson:
    def test_round_trip_with_bleu(self):
        report = MetricsReport(
            accuracy=0.7, precision=0.6, recall=0.75, f1=2 / 3,
            tp=3, fp=2, tn=4, fn=1, bleu4=42.5,
            per_language={"python": 40.0, "java": 45.0},
        )
        assert MetricsReport.from_json_dict(report.to_json_dict()) == report

    def test_bleu_omitted_when_absent(self):
        report = MetricsReport(
            accuracy=1.0, precision=1.0, recall=1.0, f1=1.0,
            tp=1, fp=0, tn=1, fn=0,
        )
        data = report.to_json_dict()
        assert "bleu4" not in data
        assert "per_language" not in data
        assert MetricsReport.from_json_dict(data) == report

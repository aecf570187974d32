"""Command-line entry point exposing the pipeline end-to-end."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .corpus import (
    PairExample,
    build_jit_pair,
    make_labeled_pairs,
    make_synthetic_pairs,
    read_jit_jsonl,
    read_pairs_jsonl,
    split_dataset,
    write_pairs_jsonl,
)
from .detect import CheckResult, DecodeConfig, check_pair, check_records, results_to_json
from .errors import DocCheckError, IoError
from .eval import (
    classification_metrics,
    corpus_bleu,
    smoothed_bleu4,
    tfidf_scores,
    tfidf_similarity_baseline,
)
from .extract import FunctionRecord, parse_file, write_records_jsonl
from .languages import LanguageId, language_for_path, parse_language
from .model import DocModel, ModelConfig, load_checkpoint, save_checkpoint
from .tokenize import BASE_SIZE, Vocabulary, iter_pair_texts, train_bpe
from .train import (
    TrainConfig,
    finetune_iccd,
    train_joint,
    write_loss_log,
    write_train_config,
)

FORMATS = ("json", "jsonl", "pretty")


class UsageError(Exception):
    """Bad invocation: wrong flags, unknown subcommand, missing inputs."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the contract wants 1
        raise UsageError(message)


def _add_common_output(sub):
    sub.add_argument("--out", help="write results here instead of stdout")
    sub.add_argument("--format", choices=FORMATS, default="json")


def build_parser() -> _Parser:
    parser = _Parser(prog="doccheck", description=__doc__)
    subs = parser.add_subparsers(dest="subcommand", metavar="subcommand")

    p = subs.add_parser("extract", help="extract function/docstring records", add_help=True)
    p.add_argument("paths", nargs="+", help="source files or directories")
    p.add_argument("--lang", type=parse_language,
                   help="language override (else inferred per file)")
    p.add_argument("--out", help="write records here instead of stdout")
    p.add_argument("--format", choices=FORMATS, default="jsonl")

    p = subs.add_parser("build-dataset", help="build a pair dataset")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--jit", help="edit-record JSONL to derive labeled pairs from")
    source.add_argument("--records", help="extracted FunctionRecord JSONL")
    source.add_argument("--synthetic", type=int, metavar="N",
                        help="generate N labeled synthetic pairs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--splits", help="also write a train/valid/test split JSON here")
    p.add_argument("--ratios", default="0.8,0.1,0.1",
                   help="comma-separated train,valid,test ratios")
    p.add_argument("--out", help="write pair JSONL here instead of stdout")

    p = subs.add_parser("train", help="joint training over consistent pairs")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--pairs", help="pair JSONL (consistent pairs)")
    source.add_argument("--synthetic", type=int, metavar="N",
                        help="train on N synthetic pairs")
    p.add_argument("--out-dir", required=True, help="artifact directory")
    _add_train_flags(p)
    p.add_argument("--vocab-budget", type=int, default=512,
                   help="BPE merges to learn on top of the byte vocabulary")
    p.add_argument("--max-len", type=int, default=128)
    p.add_argument("--layers", type=int, default=2)
    p.add_argument("--hidden", type=int, default=64)
    p.add_argument("--heads", type=int, default=4)
    p.add_argument("--intermediate", type=int, default=256)
    p.add_argument("--proj", type=int, default=32)
    p.add_argument("--lambda-ctc", type=float, default=1.0)
    p.add_argument("--lambda-bc", type=float, default=1.0)
    p.add_argument("--lambda-tg", type=float, default=1.0)

    p = subs.add_parser("finetune", help="classifier-only tuning on labeled pairs")
    p.add_argument("--pairs", required=True, help="labeled pair JSONL")
    p.add_argument("--checkpoint", help="starting model (or DOCCHECK_CHECKPOINT)")
    p.add_argument("--out-dir", required=True, help="artifact directory")
    _add_train_flags(p)

    p = subs.add_parser("check", help="classify docstrings in source files")
    p.add_argument("paths", nargs="+", help="source files or directories")
    p.add_argument("--lang", type=parse_language,
                   help="language override (else inferred per file)")
    p.add_argument("--checkpoint", help="model to use (or DOCCHECK_CHECKPOINT)")
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--beam", type=int, default=1)
    p.add_argument("--max-new-tokens", type=int, default=64)
    _add_common_output(p)

    p = subs.add_parser("eval", help="score a labeled pair dataset")
    p.add_argument("--pairs", required=True, help="labeled pair JSONL to evaluate")
    p.add_argument("--checkpoint", help="neural model (or DOCCHECK_CHECKPOINT)")
    p.add_argument("--baseline", choices=("threshold", "svm"),
                   help="evaluate a TF-IDF baseline instead of the neural model")
    p.add_argument("--train-pairs", help="fit split for --baseline")
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--bleu", action="store_true",
                   help="also score generated docstrings with smoothed BLEU-4")
    p.add_argument("--dump", help="write per-example scores here (JSONL)")
    p.add_argument("--out", help="write the metrics report here instead of stdout")

    p = subs.add_parser("serve", help="run the HTTP service")
    p.add_argument("--checkpoint", help="model to serve (or DOCCHECK_CHECKPOINT)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int,
                   default=int(os.environ.get("DOCCHECK_PORT", "8000")))
    p.add_argument("--threshold", type=float, default=0.5)

    return parser


def _add_train_flags(sub):
    sub.add_argument("--epochs", type=int, default=30)
    sub.add_argument("--batch-size", type=int, default=8)
    sub.add_argument("--lr", type=float, default=3e-4)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--checkpoint-every", type=int, default=0)


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _source_files(
    paths: list[str], override: LanguageId | None
) -> list[tuple[str, LanguageId]]:
    """Resolve files and their languages; directories are walked recursively.

    An explicit language wins for named files and filters directory walks to
    matching extensions.
    """
    found: list[tuple[str, LanguageId]] = []
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            for child in sorted(path.rglob("*")):
                if not child.is_file():
                    continue
                language = language_for_path(str(child))
                if override is not None:
                    if language is override:
                        found.append((str(child), override))
                elif language is not None:
                    found.append((str(child), language))
        elif path.is_file():
            language = override or language_for_path(str(path))
            if language is None:
                raise ValueError(
                    f"cannot infer language for {raw}; pass --lang"
                )
            found.append((str(path), language))
        else:
            raise IoError(f"no such file or directory: {raw}")
    return found


def _resolve_bundle(checkpoint_flag: str | None) -> tuple[DocModel, Vocabulary]:
    """Load model and vocabulary from a flag, falling back to the env var.

    A directory must hold model.pt and vocab.json; a file path is the model
    with vocab.json expected beside it.
    """
    location = checkpoint_flag or os.environ.get("DOCCHECK_CHECKPOINT", "")
    if not location:
        raise UsageError("no checkpoint: pass --checkpoint or set DOCCHECK_CHECKPOINT")
    path = Path(location)
    if path.is_dir():
        model_path, vocab_path = path / "model.pt", path / "vocab.json"
    else:
        model_path, vocab_path = path, path.parent / "vocab.json"
    if not model_path.is_file():
        raise IoError(f"checkpoint not found: {model_path}")
    if not vocab_path.is_file():
        raise IoError(f"vocabulary not found: {vocab_path}")
    return load_checkpoint(model_path), Vocabulary.load(vocab_path)


def _write_bundle(out_dir: str, model: DocModel, vocab: Vocabulary,
                  reports, cfg: TrainConfig) -> Path:
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    save_checkpoint(model, directory / "model.pt")
    vocab.save(directory / "vocab.json")
    (directory / "loss_log.jsonl").write_text(write_loss_log(reports), encoding="utf-8")
    (directory / "train_config.txt").write_text(write_train_config(cfg), encoding="utf-8")
    return directory / "model.pt"


def _records_pretty(records: list[FunctionRecord]) -> str:
    lines = []
    for rec in records:
        doc = "yes" if rec.docstring is not None else "no"
        lines.append(
            f"{rec.file}:{rec.line_span[0]}\t{rec.qualified_name}"
            f"\t{rec.language.value}\tdoc={doc}"
        )
    return "".join(line + "\n" for line in lines)


def _results_pretty(results: list[CheckResult]) -> str:
    lines = []
    for res in results:
        lines.append(
            f"{res.function_name}\t{res.prediction}\t{res.confidence:.4f}"
        )
    return "".join(line + "\n" for line in lines)


def _results_jsonl(results: list[CheckResult]) -> str:
    return "".join(
        json.dumps(r.to_json_dict(), ensure_ascii=False) + "\n" for r in results
    )


def _cmd_extract(args) -> int:
    records: list[FunctionRecord] = []
    diagnostics: list[str] = []
    for path, language in _source_files(args.paths, args.lang):
        parsed = parse_file(path, language)
        records.extend(parsed.records)
        diagnostics.extend(parsed.diagnostics)
    for line in diagnostics:
        print(f"warning: {line}", file=sys.stderr)
    if args.format == "jsonl":
        text = write_records_jsonl(records)
    elif args.format == "json":
        text = json.dumps([r.to_json_dict() for r in records],
                          ensure_ascii=False, indent=2) + "\n"
    else:
        text = _records_pretty(records)
    _emit(text, args.out)
    return 0


def _load_labeled_pairs(path: str) -> list[PairExample]:
    pairs = read_pairs_jsonl(_read_text(path))
    unlabeled = [p.id for p in pairs if p.label == "unlabeled"]
    if unlabeled:
        raise ValueError(f"pairs must be labeled, got unlabeled {unlabeled[:3]}")
    return pairs


def _cmd_build_dataset(args) -> int:
    if args.jit:
        pairs = [build_jit_pair(r) for r in read_jit_jsonl(_read_text(args.jit))]
    elif args.records:
        from .extract import read_records_jsonl

        pairs = []
        for i, rec in enumerate(read_records_jsonl(_read_text(args.records))):
            if not rec.docstring:
                continue
            pairs.append(
                PairExample(
                    id=f"rec-{i:06d}",
                    comment=rec.docstring,
                    method=rec.code,
                    label="consistent",
                    language=rec.language,
                    provenance="extracted",
                )
            )
    else:
        pairs = make_labeled_pairs(args.synthetic, seed=args.seed)

    if args.splits:
        try:
            ratios = tuple(float(r) for r in args.ratios.split(","))
        except ValueError:
            raise UsageError(f"bad --ratios {args.ratios!r}") from None
        if len(ratios) != 3:
            raise UsageError("--ratios needs exactly three comma-separated numbers")
        split = split_dataset(pairs, ratios=ratios, seed=args.seed)
        Path(args.splits).write_text(split.to_json(), encoding="utf-8")

    _emit(write_pairs_jsonl(pairs), args.out)
    return 0


def _train_config(args) -> TrainConfig:
    kwargs = dict(
        batch_size=args.batch_size,
        epochs=args.epochs,
        learning_rate=args.lr,
        seed=args.seed,
        checkpoint_every=args.checkpoint_every,
    )
    for name in ("lambda_ctc", "lambda_bc", "lambda_tg"):
        if hasattr(args, name):
            kwargs[name] = getattr(args, name)
    return TrainConfig(**kwargs)


def _cmd_train(args) -> int:
    if args.pairs:
        pairs = read_pairs_jsonl(_read_text(args.pairs))
    else:
        pairs = make_synthetic_pairs(args.synthetic, seed=args.seed)
    vocab = train_bpe(iter_pair_texts(pairs), vocab_size=BASE_SIZE + args.vocab_budget)
    config = ModelConfig.desk(
        vocab_size=vocab.size,
        num_layers=args.layers,
        hidden=args.hidden,
        heads=args.heads,
        intermediate=args.intermediate,
        proj_dim=args.proj,
        max_len=args.max_len,
        seed=args.seed,
    )
    model = DocModel(config)
    cfg = _train_config(args)
    model, reports = train_joint(pairs, model, vocab, cfg, checkpoint_dir=args.out_dir)
    checkpoint = _write_bundle(args.out_dir, model, vocab, reports, cfg)
    summary = {
        "steps": len(reports),
        "final_total": reports[-1].total,
        "checkpoint": str(checkpoint),
    }
    sys.stdout.write(json.dumps(summary) + "\n")
    return 0


def _cmd_finetune(args) -> int:
    pairs = _load_labeled_pairs(args.pairs)
    model, vocab = _resolve_bundle(args.checkpoint)
    cfg = _train_config(args)
    model, reports = finetune_iccd(pairs, model, vocab, cfg, checkpoint_dir=args.out_dir)
    checkpoint = _write_bundle(args.out_dir, model, vocab, reports, cfg)
    summary = {
        "steps": len(reports),
        "final_total": reports[-1].total,
        "checkpoint": str(checkpoint),
    }
    sys.stdout.write(json.dumps(summary) + "\n")
    return 0


def _cmd_check(args) -> int:
    model, vocab = _resolve_bundle(args.checkpoint)
    decode_cfg = DecodeConfig(beam_width=args.beam, max_new_tokens=args.max_new_tokens)
    results: list[CheckResult] = []
    for path, language in _source_files(args.paths, args.lang):
        parsed = parse_file(path, language)
        for line in parsed.diagnostics:
            print(f"warning: {line}", file=sys.stderr)
        results.extend(
            check_records(parsed.records, model, vocab,
                          threshold=args.threshold, decode_cfg=decode_cfg)
        )
    if args.format == "json":
        text = results_to_json(results)
    elif args.format == "jsonl":
        text = _results_jsonl(results)
    else:
        text = _results_pretty(results)
    _emit(text, args.out)
    return 0


def _cmd_eval(args) -> int:
    pairs = _load_labeled_pairs(args.pairs)
    dump_rows: list[dict] = []

    if args.baseline:
        if not args.train_pairs:
            raise UsageError("--baseline needs --train-pairs")
        train_pairs = _load_labeled_pairs(args.train_pairs)
        threshold, report = tfidf_similarity_baseline(train_pairs, pairs, mode=args.baseline)
        payload = {"threshold": threshold, **report.to_json_dict()}
        if args.dump:
            scores = (tfidf_scores(train_pairs, pairs)
                      if args.baseline == "threshold" else None)
            for i, pair in enumerate(pairs):
                row = {"id": pair.id, "label": pair.label}
                if scores is not None:
                    row["score"] = scores[i]
                dump_rows.append(row)
    else:
        model, vocab = _resolve_bundle(args.checkpoint)
        preds = []
        for pair in pairs:
            result = check_pair(pair.method, pair.comment, model, vocab,
                                threshold=args.threshold)
            preds.append(result.prediction)
            dump_rows.append({
                "id": pair.id,
                "label": pair.label,
                "prediction": result.prediction,
                "confidence": result.confidence,
            })
        report = classification_metrics(preds, [p.label for p in pairs])
        if args.bleu:
            from .detect import generate_docstring

            candidates, references, languages = [], [], []
            for i, pair in enumerate(pairs):
                generated = generate_docstring(pair.method, model, vocab)
                candidates.append(generated.split())
                references.append(pair.comment.split())
                languages.append(str(pair.language))
                dump_rows[i]["bleu4"] = smoothed_bleu4(
                    candidates[-1], references[-1]
                )
            bleu_report = corpus_bleu(candidates, references, languages)
            report.bleu4 = bleu_report.bleu4
            report.per_language = bleu_report.per_language
        payload = report.to_json_dict()

    if args.dump:
        text = "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in dump_rows)
        Path(args.dump).write_text(text, encoding="utf-8")
    _emit(json.dumps(payload, ensure_ascii=False, indent=2) + "\n", args.out)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .serve import build_app

    model, vocab = _resolve_bundle(args.checkpoint)
    app = build_app(model, vocab, threshold=args.threshold)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


_HANDLERS = {
    "extract": _cmd_extract,
    "build-dataset": _cmd_build_dataset,
    "train": _cmd_train,
    "finetune": _cmd_finetune,
    "check": _cmd_check,
    "eval": _cmd_eval,
    "serve": _cmd_serve,
}


def run(argv: list[str] | None = None) -> int:
    """Execute one invocation: 0 success, 1 usage error, 2 data error."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.subcommand:
            raise UsageError("a subcommand is required")
        return _HANDLERS[args.subcommand](args)
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    except (DocCheckError, OSError, ValueError) as exc:
        record = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(record, ensure_ascii=False), file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command line front end: stats, train, predict, evaluate, grid.

Exit codes: 0 success, 1 usage error, 2 data or file error, 3 numeric
failure.  Data comes either from one positional file (optionally carrying a
split column) or from per-split ``--train/--dev/--test`` files.  ``--split``
picks the records a command operates on; when omitted, train prefers the
train split and evaluate the dev split, falling back to all records if the
corpus has no such split.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .bundle import load_model, save_model
from .config import ExperimentConfig, get_preset, load_config_file, load_grid_file
from .corpus import Corpus, CorpusFormat, concat_corpora, corpus_stats, load_corpus
from .embeddings import load_embeddings
from .errors import DataError, NumericError
from .evaluation import format_report, report_to_dict
from .experiments import evaluate_bundle, features_for_records, grid_search, train_model
from .linear_models import decision_matrix

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3

_SPLIT_CHOICES = ("train", "dev", "test", "unassigned", "all")


class _UsageError(Exception):
    """Bad flag combinations detected after parsing."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_data_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("data", nargs="?", help="data file; may carry a split column")
    parser.add_argument("--train", dest="train_path", metavar="PATH", help="train-split file")
    parser.add_argument("--dev", dest="dev_path", metavar="PATH", help="dev-split file")
    parser.add_argument("--test", dest="test_path", metavar="PATH", help="test-split file")
    parser.add_argument("--delim", choices=["tab", "comma"], default="tab")
    parser.add_argument("--text-col", default="text")
    parser.add_argument("--label-col", default="intent")
    parser.add_argument("--id-col", default=None)
    parser.add_argument("--dialect-col", default=None)
    parser.add_argument("--split-col", default=None)


def _format_from_args(args) -> CorpusFormat:
    return CorpusFormat(
        delimiter="\t" if args.delim == "tab" else ",",
        text_col=args.text_col,
        label_col=args.label_col,
        id_col=args.id_col,
        dialect_col=args.dialect_col,
        split_col=args.split_col,
    )


def _load(args, require_labels: bool) -> Corpus:
    fmt = _format_from_args(args)
    sources = [
        (split, path)
        for split, path in (
            ("train", args.train_path),
            ("dev", args.dev_path),
            ("test", args.test_path),
        )
        if path
    ]
    if args.data and sources:
        raise _UsageError("give either one data file or --train/--dev/--test files, not both")
    if args.data:
        return load_corpus(args.data, fmt, require_labels=require_labels)
    if not sources:
        raise _UsageError("no input: pass a data file or at least one of --train/--dev/--test")
    parts = [
        load_corpus(path, fmt, require_labels=require_labels and split != "test", default_split=split)
        for split, path in sources
    ]
    return concat_corpora(parts)


def _pick_split(args, corpus: Corpus, preferred: str) -> str:
    if args.split is not None:
        return args.split
    if any(rec.split == preferred for rec in corpus.records):
        return preferred
    return "all"


def _resolve_config(args) -> ExperimentConfig:
    if args.preset:
        return get_preset(args.preset)
    return load_config_file(args.config)


def _maybe_embeddings(args):
    return load_embeddings(args.embeddings) if getattr(args, "embeddings", None) else None


def _cmd_stats(args) -> int:
    corpus = _load(args, require_labels=False)
    rows = []
    for split in ("train", "dev", "test", "unassigned"):
        records = corpus.view(split)
        if records:
            rows.append((split, corpus_stats(records)))
    rows.append(("total", corpus_stats(list(corpus.records))))
    print(f"{'split':<12}{'sentences':>12}{'avg words':>12}{'avg chars':>12}")
    for name, st in rows:
        print(f"{name:<12}{st.n_sentences:>12,}{st.avg_words:>12.2f}{st.avg_chars:>12.2f}")
    return EXIT_OK


def _cmd_train(args) -> int:
    config = _resolve_config(args)
    corpus = _load(args, require_labels=True)
    split = _pick_split(args, corpus, "train")
    bundle = train_model(config, corpus, split, _maybe_embeddings(args), n_jobs=args.jobs)
    digest = save_model(bundle, args.out)
    n = len(corpus.view(split))
    print(
        f"trained {config.name}: {len(bundle.labels)} classes, "
        f"{bundle.model.n_features} features, {n} records"
    )
    print(f"wrote {args.out} (sha256 {digest})")
    return EXIT_OK


def _cmd_predict(args) -> int:
    bundle = load_model(args.model)
    corpus = _load(args, require_labels=False)
    split = args.split if args.split is not None else "all"
    records = corpus.view(split)
    if not records:
        raise DataError(f"split {split!r} selects no records")
    X = features_for_records(bundle, records, _maybe_embeddings(args))
    scores = decision_matrix(bundle.model, X)
    labels = bundle.labels.labels
    k = args.top_k
    if k < 1 or k > len(labels):
        raise _UsageError(f"--top-k must be in 1..{len(labels)} for this model")
    lines = []
    if k == 1:
        lines.append("id\tprediction\tscore")
        best = np.argmax(scores, axis=1)
        for i, rec in enumerate(records):
            c = int(best[i])
            lines.append(f"{rec.id}\t{labels[c]}\t{scores[i, c]:.6f}")
    else:
        lines.append("id\trank\tlabel\tscore")
        order = np.argsort(-scores, axis=1, kind="stable")
        for i, rec in enumerate(records):
            for rank in range(k):
                c = int(order[i, rank])
                lines.append(f"{rec.id}\t{rank + 1}\t{labels[c]}\t{scores[i, c]:.6f}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    bundle = load_model(args.model)
    corpus = _load(args, require_labels=True)
    split = _pick_split(args, corpus, "dev")
    records = corpus.view(split)
    if not records:
        raise DataError(f"split {split!r} selects no records")
    report = evaluate_bundle(bundle, records, _maybe_embeddings(args))
    print(format_report(report, max_classes=args.max_classes))
    if args.report_json:
        with open(args.report_json, "w", encoding="utf-8") as handle:
            json.dump(report_to_dict(report), handle, indent=2, sort_keys=True)
            handle.write("\n")
    return EXIT_OK


def _cmd_grid(args) -> int:
    grid = load_grid_file(args.grid)
    corpus = _load(args, require_labels=True)
    train_split = args.train_split or _pick_split_named(corpus, "train")
    eval_split = args.eval_split or _pick_split_named(corpus, "dev")
    total = len(grid.enumerate())

    def progress(result):
        if args.quiet:
            return
        if result.ok:
            line = f"[{result.index + 1}/{total}] {result.config.name} micro_f1={result.micro_f1:.4f}"
        else:
            line = f"[{result.index + 1}/{total}] {result.config.name} FAILED: {result.error}"
        print(line, file=sys.stderr)

    results = grid_search(
        grid,
        corpus,
        train_split,
        eval_split,
        results_path=args.results,
        n_jobs=args.jobs,
        progress=progress,
    )
    ok = [r for r in results if r.ok]
    failed = [r for r in results if not r.ok]
    print(f"{'rank':<6}{'micro_f1':>10}  {'ngrams':<18}  {'weights':<22}  {'C':>6}")
    for rank, r in enumerate(ok[: args.top], start=1):
        feats = r.config.features
        print(
            f"{rank:<6}{r.micro_f1:>10.4f}  "
            f"{str(feats.ngram_triple):<18}  {str(feats.weights):<22}  {r.config.train.C:>6g}"
        )
    if failed:
        print(f"{len(failed)} combination(s) failed; see results file for details", file=sys.stderr)
    return EXIT_OK


def _pick_split_named(corpus: Corpus, preferred: str) -> str:
    if any(rec.split == preferred for rec in corpus.records):
        return preferred
    return "all"


def build_parser() -> _Parser:
    parser = _Parser(prog="arbintent", description="Intent detection for Arabic banking queries")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("stats", help="corpus size and length statistics per split")
    _add_data_args(p)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("train", help="fit a preset or config file and save a model bundle")
    _add_data_args(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--preset", help="named experiment preset, e.g. exp2-row8")
    group.add_argument("--config", help="experiment config JSON file")
    p.add_argument("--out", required=True, help="output model bundle path")
    p.add_argument("--split", choices=_SPLIT_CHOICES, default=None)
    p.add_argument("--embeddings", help="embeddings TSV (for embedding configs)")
    p.add_argument("--jobs", type=int, default=1, help="threads for one-vs-rest training")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("predict", help="label new text with a saved model")
    p.add_argument("model", help="model bundle path")
    _add_data_args(p)
    p.add_argument("--split", choices=_SPLIT_CHOICES, default=None)
    p.add_argument("--embeddings", help="embeddings TSV (for embedding models)")
    p.add_argument("--top-k", type=int, default=1, help="emit the k best labels per input")
    p.add_argument("--out", help="write predictions here instead of stdout")
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("evaluate", help="score a saved model on labeled data")
    p.add_argument("model", help="model bundle path")
    _add_data_args(p)
    p.add_argument("--split", choices=_SPLIT_CHOICES, default=None)
    p.add_argument("--embeddings", help="embeddings TSV (for embedding models)")
    p.add_argument("--report-json", help="also write the full report as JSON")
    p.add_argument("--max-classes", type=int, default=None, help="limit per-class rows printed")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("grid", help="sweep a hyperparameter grid and rank by dev micro-F1")
    _add_data_args(p)
    p.add_argument("--grid", required=True, help="grid spec JSON file")
    p.add_argument("--results", help="JSONL results file (append; enables resume)")
    p.add_argument("--train-split", choices=_SPLIT_CHOICES, default=None)
    p.add_argument("--eval-split", choices=_SPLIT_CHOICES, default=None)
    p.add_argument("--top", type=int, default=10, help="ranked rows to print")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--quiet", action="store_true", help="suppress per-combination progress")
    p.set_defaults(func=_cmd_grid)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if not hasattr(args, "func"):
        parser.print_usage(sys.stderr)
        print("arbintent: error: a command is required", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"arbintent: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericError as exc:
        print(f"arbintent: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DataError, OSError) as exc:
        print(f"arbintent: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())

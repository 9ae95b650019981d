"""Re-run the recorded experiment presets on ArBanking77 (PAL) dev data.

Point --train/--dev (or the ARBANKING77_TRAIN / ARBANKING77_DEV environment
variables) at the split files and this prints each preset's dev micro-F1
next to the recorded reference score.  Embedding presets need --embeddings
with a precomputed vector table and are skipped otherwise.
"""

import argparse
import os
import time

from arbintent import (
    EmbeddingFeatures,
    PRESETS,
    REFERENCE_DEV_F1,
    concat_corpora,
    load_corpus,
    load_embeddings,
    run_experiment,
)
from arbintent.corpus import CorpusFormat


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--train", default=os.environ.get("ARBANKING77_TRAIN"))
    parser.add_argument("--dev", default=os.environ.get("ARBANKING77_DEV"))
    parser.add_argument("--delim", choices=["tab", "comma"], default="tab")
    parser.add_argument("--text-col", default="text")
    parser.add_argument("--label-col", default="intent")
    parser.add_argument("--embeddings", help="TSV table for the embedding presets")
    parser.add_argument("--preset", action="append", help="run only these presets")
    parser.add_argument("--jobs", type=int, default=4)
    args = parser.parse_args()
    if not (args.train and args.dev):
        parser.error("need --train and --dev (or the ARBANKING77_* environment variables)")

    fmt = CorpusFormat(
        delimiter="\t" if args.delim == "tab" else ",",
        text_col=args.text_col,
        label_col=args.label_col,
    )
    corpus = concat_corpora(
        [
            load_corpus(args.train, fmt, default_split="train"),
            load_corpus(args.dev, fmt, default_split="dev"),
        ]
    )
    print(f"{len(corpus.view('train'))} train / {len(corpus.view('dev'))} dev sentences")

    table = load_embeddings(args.embeddings) if args.embeddings else None
    wanted = args.preset or sorted(PRESETS)
    print(f"{'preset':<12}{'dev micro F1':>14}{'reference':>11}{'delta':>8}{'seconds':>9}")
    for name in wanted:
        config = PRESETS[name]
        if isinstance(config.features, EmbeddingFeatures) and table is None:
            print(f"{name:<12}{'(needs --embeddings)':>14}")
            continue
        start = time.time()
        report, _ = run_experiment(config, corpus, embeddings=table, n_jobs=args.jobs)
        score = 100.0 * report.micro_f1
        ref = REFERENCE_DEV_F1[name]
        print(f"{name:<12}{score:>14.2f}{ref:>11.2f}{score - ref:>8.2f}{time.time() - start:>9.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

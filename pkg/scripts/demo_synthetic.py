"""End-to-end demo on a synthetic corpus: train, evaluate, save, reload.

No data files needed; everything is generated from a seed.  Useful as a
smoke test and as a worked example of the library API.
"""

import argparse
import tempfile

import numpy as np

from arbintent import (
    features_for_records,
    format_report,
    get_preset,
    load_model,
    run_experiment,
    save_model,
    synthetic_corpus,
)
from arbintent.linear_models import decision_matrix


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--classes", type=int, default=5)
    parser.add_argument("--train-size", type=int, default=200)
    parser.add_argument("--dev-size", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--preset", default="exp2-row8")
    parser.add_argument("--out", help="where to save the model (default: temp file)")
    args = parser.parse_args()

    corpus = synthetic_corpus(
        n_classes=args.classes,
        n_train=args.train_size,
        n_dev=args.dev_size,
        seed=args.seed,
    )
    config = get_preset(args.preset)
    print(f"training preset {config.name} on {args.train_size} synthetic sentences")
    report, bundle = run_experiment(config, corpus)
    print()
    print(format_report(report))
    print()

    out = args.out or tempfile.NamedTemporaryFile(suffix=".bin", delete=False).name
    digest = save_model(bundle, out)
    print(f"saved model to {out}")
    print(f"sha256 {digest}")

    loaded = load_model(out)
    probes = corpus.view("dev")
    before = decision_matrix(bundle.model, features_for_records(bundle, probes))
    after = decision_matrix(loaded.model, features_for_records(loaded, probes))
    identical = np.array_equal(before, after)
    print(f"reloaded model scores identical: {identical}")
    return 0 if identical else 1


if __name__ == "__main__":
    raise SystemExit(main())

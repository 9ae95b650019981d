"""Seeded synthetic intent corpora for demos and determinism checks.

Each class draws sentences from its own disjoint token vocabulary (tokens
carry a class suffix, so no token appears under two intents), which makes
the corpora linearly separable at the word level while still exercising the
character analyzers.  Everything derives from one ``random.Random`` seed.
"""

from __future__ import annotations

import csv
import random

from .corpus import Corpus, LabelIndex, Record

_SYLLABLES = ("ba", "da", "ku", "mi", "to", "re", "sha", "lo", "ne", "zu", "fa", "ri")


def _token(rng: random.Random, suffix: str) -> str:
    return "".join(rng.choice(_SYLLABLES) for _ in range(rng.randint(2, 4))) + suffix


def synthetic_corpus(
    n_classes: int = 5,
    n_train: int = 200,
    n_dev: int = 50,
    seed: int = 0,
    vocab_per_class: int = 10,
    sentence_len: tuple[int, int] = (3, 7),
) -> Corpus:
    """Round-robin class assignment, so every class appears in every split."""
    if n_classes < 2:
        raise ValueError("need at least two classes")
    rng = random.Random(seed)
    vocabs: list[list[str]] = []
    used: set[str] = set()
    for c in range(n_classes):
        vocab: list[str] = []
        while len(vocab) < vocab_per_class:
            tok = _token(rng, str(c))
            if tok not in used:
                used.add(tok)
                vocab.append(tok)
        vocabs.append(vocab)

    records: list[Record] = []
    for split, count in (("train", n_train), ("dev", n_dev)):
        for i in range(count):
            c = i % n_classes
            words = [rng.choice(vocabs[c]) for _ in range(rng.randint(*sentence_len))]
            records.append(
                Record(
                    id=f"{split}-{i}",
                    text=" ".join(words),
                    intent=f"intent_{c:02d}",
                    split=split,
                )
            )
    labels = LabelIndex.from_first_seen(r.intent for r in records if r.intent is not None)
    return Corpus(tuple(records), labels)


def corpus_to_tsv(corpus: Corpus, path: str) -> None:
    """Write id/text/intent/split columns; the loader reads this back."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, delimiter="\t", lineterminator="\n")
        writer.writerow(["id", "text", "intent", "split"])
        for rec in corpus.records:
            writer.writerow([rec.id, rec.text, rec.intent or "", rec.split])

"""Single-file model persistence with integrity checking.

Layout: an 8-byte magic, a big-endian section count, then named sections
(u32 name length, name bytes, u64 payload length, payload bytes), then a
trailing sha256 digest of everything before it.  The manifest section is
JSON and carries the format version, the experiment config, the label list,
and solver diagnostics.  The vectorizer section (TF-IDF models only) stores
vocabularies and integer document frequencies; IDF is recomputed on load.
Weights and biases are stored as ``.npy`` payloads.  Nothing time- or
path-dependent is written, so retraining with the same config and data
reproduces the file byte for byte.
"""

from __future__ import annotations

import hashlib
import io
import json
import struct
from dataclasses import dataclass

import numpy as np

from .config import (
    EmbeddingFeatures,
    ExperimentConfig,
    TfidfFeatures,
    config_from_dict,
    config_to_dict,
)
from .corpus import LabelIndex
from .errors import BundleError
from .linear_models import LinearModel
from .vectorizer import TfidfBlock, UnionVectorizer, Vocabulary, smoothed_idf

BUNDLE_MAGIC = b"ARBNTBDL"
BUNDLE_FORMAT_VERSION = "1"
_DIGEST_LEN = 32


@dataclass
class ModelBundle:
    """Everything needed to score new text: config, features, classifier."""

    config: ExperimentConfig
    model: LinearModel
    labels: LabelIndex
    vectorizer: UnionVectorizer | None = None
    format_version: str = BUNDLE_FORMAT_VERSION
    digest: str | None = None

    def __post_init__(self) -> None:
        wants_vectorizer = isinstance(self.config.features, TfidfFeatures)
        if wants_vectorizer and self.vectorizer is None:
            raise ValueError("TF-IDF config requires a fitted vectorizer")
        if not wants_vectorizer and self.vectorizer is not None:
            raise ValueError("embedding config must not carry a vectorizer")


def _serializable_diagnostics(diag: dict) -> dict:
    out = {}
    for key, value in diag.items():
        if key == "dual_objective":
            continue  # per-epoch traces are bulky and reproducible
        if isinstance(value, np.generic):
            value = value.item()
        if isinstance(value, (list, tuple)):
            value = [v.item() if isinstance(v, np.generic) else v for v in value]
        out[key] = value
    return out


def _vectorizer_payload(vec: UnionVectorizer) -> bytes:
    blocks = []
    for block, weight in zip(vec.blocks, vec.weights):
        blocks.append(
            {
                "kind": block.config.kind,
                "ngram_min": block.config.ngram_min,
                "ngram_max": block.config.ngram_max,
                "weight": weight,
                "n_docs": block.vocab.n_docs,
                "vocab": block.vocab.feature_names,
                "df": [int(v) for v in block.vocab.df],
            }
        )
    return json.dumps({"blocks": blocks}, sort_keys=True, ensure_ascii=False).encode("utf-8")


def _vectorizer_from_payload(payload: bytes) -> UnionVectorizer:
    from .analyzers import AnalyzerConfig

    raw = json.loads(payload.decode("utf-8"))
    blocks: list[TfidfBlock] = []
    weights: list[float] = []
    for b in raw["blocks"]:
        config = AnalyzerConfig(b["kind"], b["ngram_min"], b["ngram_max"])
        names = b["vocab"]
        df = np.asarray(b["df"], dtype=np.int64)
        if len(names) != len(df):
            raise BundleError("vectorizer section: vocab and df lengths disagree")
        vocab = Vocabulary({name: i for i, name in enumerate(names)}, df, int(b["n_docs"]))
        blocks.append(TfidfBlock(config, vocab, smoothed_idf(df, vocab.n_docs)))
        weights.append(float(b["weight"]))
    return UnionVectorizer(blocks, weights)


def _npy_bytes(arr: np.ndarray) -> bytes:
    buf = io.BytesIO()
    np.save(buf, arr, allow_pickle=False)
    return buf.getvalue()


def _npy_load(payload: bytes, name: str) -> np.ndarray:
    try:
        return np.load(io.BytesIO(payload), allow_pickle=False)
    except ValueError as exc:
        raise BundleError(f"section {name!r} is not a valid array payload: {exc}") from exc


def _pack(sections: list[tuple[str, bytes]]) -> bytes:
    out = bytearray(BUNDLE_MAGIC)
    out += struct.pack(">I", len(sections))
    for name, payload in sections:
        name_bytes = name.encode("utf-8")
        out += struct.pack(">I", len(name_bytes)) + name_bytes
        out += struct.pack(">Q", len(payload)) + payload
    out += hashlib.sha256(bytes(out)).digest()
    return bytes(out)


def _unpack(blob: bytes) -> dict[str, bytes]:
    if len(blob) < len(BUNDLE_MAGIC) + 4 + _DIGEST_LEN:
        raise BundleError("truncated bundle: shorter than the fixed framing")
    if blob[: len(BUNDLE_MAGIC)] != BUNDLE_MAGIC:
        raise BundleError("not a model bundle (bad magic)")
    body, digest = blob[:-_DIGEST_LEN], blob[-_DIGEST_LEN:]
    if hashlib.sha256(body).digest() != digest:
        raise BundleError("bundle digest mismatch: file is corrupted or was edited")
    pos = len(BUNDLE_MAGIC)
    (count,) = struct.unpack_from(">I", body, pos)
    pos += 4
    sections: dict[str, bytes] = {}
    for _ in range(count):
        if pos + 4 > len(body):
            raise BundleError("truncated bundle: section header cut off")
        (name_len,) = struct.unpack_from(">I", body, pos)
        pos += 4
        if pos + name_len + 8 > len(body):
            raise BundleError("truncated bundle: section name or length cut off")
        name = body[pos : pos + name_len].decode("utf-8")
        pos += name_len
        (payload_len,) = struct.unpack_from(">Q", body, pos)
        pos += 8
        if pos + payload_len > len(body):
            raise BundleError(f"truncated bundle: section {name!r} payload cut off")
        sections[name] = body[pos : pos + payload_len]
        pos += payload_len
    if pos != len(body):
        raise BundleError("bundle has trailing bytes after the last section")
    return sections


def bundle_to_bytes(bundle: ModelBundle) -> bytes:
    manifest = {
        "format_version": bundle.format_version,
        "config": config_to_dict(bundle.config.with_data(None)),
        "labels": list(bundle.labels.labels),
        "diagnostics": _serializable_diagnostics(bundle.model.diagnostics),
    }
    sections: list[tuple[str, bytes]] = [
        ("manifest", json.dumps(manifest, sort_keys=True, ensure_ascii=False).encode("utf-8"))
    ]
    if bundle.vectorizer is not None:
        sections.append(("vectorizer", _vectorizer_payload(bundle.vectorizer)))
    sections.append(("weights", _npy_bytes(np.ascontiguousarray(bundle.model.weights, dtype=np.float64))))
    sections.append(("bias", _npy_bytes(np.ascontiguousarray(bundle.model.bias, dtype=np.float64))))
    return _pack(sections)


def bundle_from_bytes(blob: bytes) -> ModelBundle:
    sections = _unpack(blob)
    try:
        manifest = json.loads(sections["manifest"].decode("utf-8"))
    except KeyError:
        raise BundleError("bundle is missing its manifest section") from None
    except json.JSONDecodeError as exc:
        raise BundleError(f"bundle manifest is not valid JSON: {exc}") from exc
    version = manifest.get("format_version")
    if version != BUNDLE_FORMAT_VERSION:
        raise BundleError(
            f"unsupported bundle format version {version!r}; this build reads version {BUNDLE_FORMAT_VERSION!r}"
        )
    try:
        config = config_from_dict(manifest["config"])
        labels = LabelIndex(manifest["labels"])
    except KeyError as exc:
        raise BundleError(f"bundle manifest is missing {exc.args[0]!r}") from None
    except ValueError as exc:
        raise BundleError(f"bundle label list is invalid: {exc}") from exc
    try:
        weights = _npy_load(sections["weights"], "weights")
        bias = _npy_load(sections["bias"], "bias")
    except KeyError as exc:
        raise BundleError(f"bundle is missing its {exc.args[0]!r} section") from None
    if weights.ndim != 2 or bias.shape != (weights.shape[0],):
        raise BundleError("weights and bias shapes are inconsistent")
    if weights.shape[0] != len(labels.labels):
        raise BundleError("weight rows do not match the label list")
    vectorizer = None
    if isinstance(config.features, TfidfFeatures):
        if "vectorizer" not in sections:
            raise BundleError("TF-IDF bundle is missing its vectorizer section")
        vectorizer = _vectorizer_from_payload(sections["vectorizer"])
        if vectorizer.dim != weights.shape[1]:
            raise BundleError("vectorizer width does not match the weight matrix")
    elif isinstance(config.features, EmbeddingFeatures) and "vectorizer" in sections:
        raise BundleError("embedding bundle unexpectedly carries a vectorizer section")
    model = LinearModel(
        weights=weights,
        bias=bias,
        labels=labels,
        provenance=config.train,
        diagnostics=dict(manifest.get("diagnostics", {})),
    )
    return ModelBundle(
        config=config,
        model=model,
        labels=labels,
        vectorizer=vectorizer,
        format_version=version,
        digest=hashlib.sha256(blob).hexdigest(),
    )


def save_model(bundle: ModelBundle, path: str) -> str:
    """Write the bundle; returns the sha256 hex digest of the file bytes."""
    blob = bundle_to_bytes(bundle)
    with open(path, "wb") as handle:
        handle.write(blob)
    bundle.digest = hashlib.sha256(blob).hexdigest()
    return bundle.digest


def load_model(path: str) -> ModelBundle:
    try:
        with open(path, "rb") as handle:
            blob = handle.read()
    except OSError as exc:
        raise BundleError(f"cannot open bundle {path}: {exc}") from exc
    return bundle_from_bytes(blob)

"""Intent detection for Arabic banking queries.

Character and word n-gram TF-IDF features (optionally a weighted union of
the three analyzer kinds), linear classifiers trained from scratch (one-vs-
rest squared-hinge SVM via dual coordinate descent, softmax regression via
L-BFGS), micro-F1 evaluation, named experiment presets, grid search, and a
deterministic single-file model format.
"""

from .analyzers import AnalyzerConfig, analyze, char_ngrams, char_wb_ngrams, word_ngrams
from .bundle import ModelBundle, load_model, save_model
from .config import (
    DataConfig,
    EmbeddingFeatures,
    ExperimentConfig,
    GridSpec,
    PRESETS,
    REFERENCE_DEV_F1,
    TfidfFeatures,
    config_from_dict,
    config_to_dict,
    get_preset,
    weight_cube,
)
from .corpus import (
    Corpus,
    CorpusFormat,
    CorpusStats,
    LabelIndex,
    Record,
    concat_corpora,
    corpus_stats,
    encode_labels,
    load_corpus,
)
from .embeddings import EmbeddingTable, load_embeddings
from .errors import ArbIntentError, BundleError, DataError, NumericError
from .evaluation import EvalReport, evaluate_ids, format_report, micro_f1, report_to_dict
from .experiments import (
    GridResult,
    evaluate_bundle,
    features_for_records,
    grid_search,
    run_experiment,
    train_model,
)
from .linear_models import (
    LinearModel,
    TrainConfig,
    compute_class_weights,
    decision_function,
    predict,
    predict_ids,
    train_linear_svc,
    train_logreg,
)
from .synthetic import corpus_to_tsv, synthetic_corpus
from .vectorizer import (
    SparseVector,
    UnionSpec,
    UnionVectorizer,
    fit_union,
    smoothed_idf,
    transform_many,
    transform_union,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyzerConfig",
    "ArbIntentError",
    "BundleError",
    "Corpus",
    "CorpusFormat",
    "CorpusStats",
    "DataConfig",
    "DataError",
    "EmbeddingFeatures",
    "EmbeddingTable",
    "EvalReport",
    "ExperimentConfig",
    "GridResult",
    "GridSpec",
    "LabelIndex",
    "LinearModel",
    "ModelBundle",
    "NumericError",
    "PRESETS",
    "REFERENCE_DEV_F1",
    "Record",
    "SparseVector",
    "TfidfFeatures",
    "TrainConfig",
    "UnionSpec",
    "UnionVectorizer",
    "analyze",
    "char_ngrams",
    "char_wb_ngrams",
    "compute_class_weights",
    "concat_corpora",
    "config_from_dict",
    "config_to_dict",
    "corpus_stats",
    "corpus_to_tsv",
    "decision_function",
    "encode_labels",
    "evaluate_bundle",
    "evaluate_ids",
    "features_for_records",
    "fit_union",
    "format_report",
    "get_preset",
    "grid_search",
    "load_corpus",
    "load_embeddings",
    "load_model",
    "micro_f1",
    "predict",
    "predict_ids",
    "report_to_dict",
    "run_experiment",
    "save_model",
    "smoothed_idf",
    "synthetic_corpus",
    "train_linear_svc",
    "train_logreg",
    "train_model",
    "transform_many",
    "transform_union",
    "weight_cube",
    "word_ngrams",
]

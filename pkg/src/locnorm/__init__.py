"""Normalize free-form Chinese text to administrative-division paths.

Three cooperating signals produce a province / city / county path for a
document: explicit division mentions scored against a gazetteer, a mined
knowledge base mapping location terms to divisions, and geographic
embeddings that fill in the next missing level. See ``pipeline.normalize``
for the merge, ``cli`` for the command-line entry points.
"""

from .config import Config, load_config
from .confidence import CandidateScore, confidence, score_candidates
from .embeddings import (
    EmbeddingTable,
    TrainConfig,
    cosine,
    kmeans_clusters,
    load_embeddings,
    save_embeddings,
    train,
)
from .gazetteer import (
    AdPath,
    AdRecord,
    Gazetteer,
    GazetteerError,
    load_gazetteer,
)
from .inference import InferenceResult, embed_input, infer_next_level
from .pipeline import (
    Artifacts,
    BenchReport,
    EvalRecord,
    EvalReport,
    NormalizationResult,
    bench,
    evaluate,
    hit_value,
    load_artifacts,
    load_corpus,
    normalize,
    normalize_batch,
    normalize_document,
    save_corpus,
)
from .roi import (
    PairScore,
    RoiEntry,
    RoiStore,
    RoiThresholds,
    build_roi,
    entropy,
    load_roi,
    lookup_roi,
    reweight_parent,
    save_roi,
    score_pair,
)
from .sequences import (
    GeoSequence,
    LexiconRecognizer,
    SeqItem,
    extract_sequences,
    load_geo_lexicon,
    load_sequences,
    save_sequences,
)
from .server import make_server, serve
from .textscan import Document, Matcher, Sentence, Token, scan, split_sentences

__version__ = "0.1.0"

__all__ = [
    "AdPath",
    "AdRecord",
    "Artifacts",
    "BenchReport",
    "CandidateScore",
    "Config",
    "Document",
    "EmbeddingTable",
    "EvalRecord",
    "EvalReport",
    "Gazetteer",
    "GazetteerError",
    "GeoSequence",
    "InferenceResult",
    "LexiconRecognizer",
    "Matcher",
    "NormalizationResult",
    "PairScore",
    "RoiEntry",
    "RoiStore",
    "RoiThresholds",
    "SeqItem",
    "Sentence",
    "Token",
    "TrainConfig",
    "bench",
    "build_roi",
    "confidence",
    "cosine",
    "embed_input",
    "entropy",
    "evaluate",
    "extract_sequences",
    "hit_value",
    "infer_next_level",
    "kmeans_clusters",
    "load_artifacts",
    "load_config",
    "load_corpus",
    "load_embeddings",
    "load_gazetteer",
    "load_geo_lexicon",
    "load_roi",
    "load_sequences",
    "lookup_roi",
    "make_server",
    "normalize",
    "normalize_batch",
    "normalize_document",
    "reweight_parent",
    "save_corpus",
    "save_embeddings",
    "save_roi",
    "save_sequences",
    "scan",
    "score_candidates",
    "score_pair",
    "split_sentences",
    "train",
    "__version__",
]

"""End-to-end normalization: scan → confidence → knowledge base → inference.

``normalize`` turns one free-form text into a three-level division path. The
merge rule layers the three signals by trust:

* confidence (explicit division mentions) is never overridden;
* a knowledge-base entry may extend the confidence prefix downward when its
  path agrees with every confident level — the entry with the strongest
  retained support wins; inconsistent entries are reported, never merged;
* embedding inference fills at most the single next missing level, last.

Each level of the final path is attributed to exactly one stage, and stage
wall-times are recorded per document (excluded from batch serialization so
repeated runs are byte-identical).

Also here: the 0.5-hit evaluation metric, the throughput benchmark, and the
order-preserving parallel batch driver.
"""

from __future__ import annotations

import json
import logging
import multiprocessing
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .config import Config
from .confidence import confidence as _confidence_path
from .embeddings import EmbeddingTable, load_embeddings
from .gazetteer import AdPath, Gazetteer, bundled_gazetteer_path, load_gazetteer
from .inference import InferenceResult, embed_input, infer_next_level
from .roi import RoiStore, load_roi, lookup_roi
from .textscan import (
    AD_HIT,
    LEXICON_WORD,
    Document,
    Matcher,
    Token,
    normalize_text,
    scan,
    split_sentences,
)

log = logging.getLogger(__name__)

_DEFAULT_CONFIG = Config()

STAGES = ("scan", "confidence", "roi", "inference")


@dataclass(frozen=True, slots=True)
class Artifacts:
    """Every loaded, immutable resource the query path needs."""

    gazetteer: Gazetteer
    table: EmbeddingTable | None = None
    store: RoiStore | None = None
    matcher: Matcher = None  # type: ignore[assignment]  # built in __post_init__

    def __post_init__(self):
        if self.matcher is None:
            known: set[str] = set()
            if self.table is not None:
                known.update(self.table.vocab)
            if self.store is not None:
                known.update(self.store.entries)
            object.__setattr__(
                self, "matcher", Matcher(set(self.gazetteer.surfaces()), known)
            )

    def metadata(self) -> dict:
        meta: dict = {"gazetteer_records": len(self.gazetteer)}
        if self.table is not None:
            meta["embedding_vocab"] = len(self.table.vocab)
            meta["embedding_dim"] = self.table.dim
        if self.store is not None:
            meta["roi_entries"] = len(self.store)
        return meta


def load_artifacts(
    gazetteer_path: str | Path | None = None,
    embeddings_path: str | Path | None = None,
    roi_path: str | Path | None = None,
) -> Artifacts:
    gaz = load_gazetteer(gazetteer_path or bundled_gazetteer_path())
    table = load_embeddings(embeddings_path) if embeddings_path else None
    store = load_roi(roi_path) if roi_path else None
    return Artifacts(gazetteer=gaz, table=table, store=store)


@dataclass(frozen=True, slots=True)
class NormalizationResult:
    confidence: AdPath
    inference: InferenceResult
    rois: tuple[tuple[str, AdPath], ...]
    final: AdPath
    provenance: tuple[str | None, str | None, str | None]
    timings: dict[str, float] = field(default_factory=dict)

    def to_dict(self, include_timings: bool = False) -> dict:
        out = {
            "final": {
                "levels": list(self.final.levels),
                "codes": list(self.final.codes),
            },
            "confidence": {
                "levels": list(self.confidence.levels),
                "codes": list(self.confidence.codes),
            },
            "rois": [
                {"term": t, "path": list(p.levels), "codes": list(p.codes)}
                for t, p in self.rois
            ],
            "inference": {
                "level_filled": self.inference.level_filled,
                "chosen": self.inference.chosen,
                "chosen_code": self.inference.chosen_code,
                "similarity": self.inference.similarity,
                "candidates_considered": self.inference.candidates_considered,
                "note": self.inference.note,
            },
            "provenance": list(self.provenance),
        }
        if include_timings:
            out["timings"] = dict(self.timings)
        return out


def _standard_name(tok: Token) -> str:
    """A division token's unique standard name, else its raw surface."""
    names = {rec.name for rec in tok.records}
    return next(iter(names)) if len(names) == 1 else tok.surface


def normalize(
    text: str,
    gazetteer: Gazetteer,
    table: EmbeddingTable | None = None,
    store: RoiStore | None = None,
    options: Config | None = None,
    matcher: Matcher | None = None,
) -> NormalizationResult:
    """Normalize one text; never raises on content.

    Pass a prebuilt ``matcher`` (or go through :func:`normalize_document` with
    :class:`Artifacts`) to avoid recompiling the scanner per call.
    """
    options = options or _DEFAULT_CONFIG
    if matcher is None:
        matcher = Artifacts(gazetteer, table, store).matcher
    timings: dict[str, float] = {}

    t0 = time.perf_counter()
    doc = Document("", normalize_text(text))
    scanned = [
        scan(s, matcher, gazetteer)
        for s in split_sentences(doc, options.sentence_delimiters)
    ]
    timings["scan"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    conf = _confidence_path(scanned, gazetteer)
    timings["confidence"] = time.perf_counter() - t0
    provenance: list[str | None] = [
        "confidence" if lvl is not None else None for lvl in conf.levels
    ]
    final = conf

    t0 = time.perf_counter()
    rois: tuple[tuple[str, AdPath], ...] = ()
    if store is not None:
        hits = lookup_roi(
            store,
            (
                tok.surface
                for tokens in scanned
                for tok in tokens
                if tok.kind == LEXICON_WORD
            ),
        )
        rois = tuple((e.term, e.path) for e in hits)
        if final.depth < 3:
            usable = [
                e
                for e in hits
                if e.path.extends(final) and e.path.depth > final.depth
            ]
            if usable:
                best = min(usable, key=lambda e: (-e.support[0].g, e.term))
                for i in range(final.depth, best.path.depth):
                    provenance[i] = "roi"
                final = best.path
    timings["roi"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    if final.depth >= 3:
        inf = InferenceResult.none("path already complete")
    elif table is None:
        inf = InferenceResult.none("no embedding table loaded")
    else:
        embed_tokens = [
            _standard_name(tok) if tok.kind == AD_HIT else tok.surface
            for tokens in scanned
            for tok in tokens
            if tok.kind in (AD_HIT, LEXICON_WORD)
        ]
        vec = embed_input(embed_tokens, table)
        if vec is None:
            inf = InferenceResult.none(
                "no scanned token is in the embedding vocabulary"
            )
        else:
            inf = infer_next_level(
                final,
                vec,
                gazetteer,
                table,
                min_similarity=options.inference_min_similarity,
            )
        if inf.level_filled is not None:
            i = inf.level_filled - 1
            levels = list(final.levels)
            codes = list(final.codes)
            levels[i] = inf.chosen
            codes[i] = inf.chosen_code
            final = AdPath(tuple(levels), tuple(codes))
            provenance[i] = "inference"
    timings["inference"] = time.perf_counter() - t0

    return NormalizationResult(
        confidence=conf,
        inference=inf,
        rois=rois,
        final=final,
        provenance=tuple(provenance),
        timings=timings,
    )


def normalize_document(doc: Document, artifacts: Artifacts, options: Config | None = None) -> NormalizationResult:
    return normalize(
        doc.text,
        artifacts.gazetteer,
        artifacts.table,
        artifacts.store,
        options,
        matcher=artifacts.matcher,
    )


# ---------------------------------------------------------------------------
# Batch driver (order-preserving, optionally parallel)
# ---------------------------------------------------------------------------

_WORKER_STATE: tuple[Artifacts, Config | None] | None = None


def _init_worker(artifacts: Artifacts, options: Config | None) -> None:
    global _WORKER_STATE
    _WORKER_STATE = (artifacts, options)


def _worker_normalize(doc: Document) -> NormalizationResult:
    assert _WORKER_STATE is not None
    artifacts, options = _WORKER_STATE
    return normalize_document(doc, artifacts, options)


def normalize_batch(
    docs: Sequence[Document],
    artifacts: Artifacts,
    options: Config | None = None,
    workers: int = 1,
) -> list[NormalizationResult]:
    """Normalize documents in input order, across ``workers`` processes."""
    if workers <= 1 or len(docs) <= 1:
        return [normalize_document(d, artifacts, options) for d in docs]
    ctx = multiprocessing.get_context("fork")
    chunk = max(1, len(docs) // (workers * 8))
    with ctx.Pool(
        workers, initializer=_init_worker, initargs=(artifacts, options)
    ) as pool:
        return pool.map(_worker_normalize, docs, chunksize=chunk)


def load_corpus(path: str | Path) -> list[Document]:
    """Read a JSONL corpus of {"doc_id", "text"} objects."""
    docs: list[Document] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                raw = json.loads(line)
                docs.append(Document(str(raw["doc_id"]), str(raw["text"])))
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise ValueError(f"{path}:{lineno}: bad document: {exc}") from exc
    return docs


def save_corpus(docs: Iterable[Document], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for d in docs:
            fh.write(
                json.dumps(
                    {"doc_id": d.doc_id, "text": d.text}, ensure_ascii=False
                )
                + "\n"
            )


# ---------------------------------------------------------------------------
# Evaluation: the 0.5-hit variant F1
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class EvalRecord:
    doc_id: str
    gold: AdPath
    predicted: AdPath
    hit_value: float


@dataclass(frozen=True, slots=True)
class EvalReport:
    precision: float
    recall: float
    f1: float
    records: tuple[EvalRecord, ...]


def hit_value(predicted: AdPath, gold: AdPath) -> float:
    """1 for a full hit, 0.5 for an incomplete-but-consistent prefix, else 0.

    A prediction deeper than the gold still scores 1 when it agrees at every
    gold level; partial credit applies only to outputs that stop early on the
    right chain, never to outputs that name a wrong division.
    """
    gd = gold.depth
    if gd == 0:
        return 0.0
    if all(predicted.levels[i] == gold.levels[i] for i in range(gd)):
        return 1.0
    pd = predicted.depth
    if 0 < pd < gd and all(
        predicted.levels[i] == gold.levels[i] for i in range(pd)
    ):
        return 0.5
    return 0.0


def evaluate(
    results: Mapping[str, AdPath] | Iterable[tuple[str, AdPath]],
    gold: Mapping[str, AdPath] | Iterable[tuple[str, AdPath]],
) -> EvalReport:
    """Precision/recall/F1 under the 0.5-hit rule.

    ``results`` and ``gold`` must cover the same doc_ids. Output is invariant
    under reordering of either input.
    """
    res_map = dict(results.items() if isinstance(results, Mapping) else results)
    gold_map = dict(gold.items() if isinstance(gold, Mapping) else gold)
    if set(res_map) != set(gold_map):
        missing = sorted(set(gold_map) ^ set(res_map))
        raise ValueError(f"doc_ids do not align: {missing[:5]}")

    records = tuple(
        EvalRecord(
            doc_id=doc_id,
            gold=gold_map[doc_id],
            predicted=res_map[doc_id],
            hit_value=hit_value(res_map[doc_id], gold_map[doc_id]),
        )
        for doc_id in sorted(res_map)
    )
    hits = sum(r.hit_value for r in records)
    n_pred = sum(1 for r in records if not r.predicted.is_empty())
    n_gold = sum(1 for r in records if not r.gold.is_empty())
    precision = hits / n_pred if n_pred else 0.0
    recall = hits / n_gold if n_gold else 0.0
    f1 = (
        2 * precision * recall / (precision + recall)
        if precision + recall
        else 0.0
    )
    return EvalReport(precision=precision, recall=recall, f1=f1, records=records)


# ---------------------------------------------------------------------------
# Throughput benchmark
# ---------------------------------------------------------------------------

STABLE_CORPUS_BYTES = 1_048_576


@dataclass(frozen=True, slots=True)
class BenchReport:
    corpus_bytes: int
    doc_count: int
    unstable: bool
    single_seconds: float
    single_bytes_per_sec: float
    stage_seconds: dict[str, float]
    multi_workers: int | None = None
    multi_seconds: float | None = None
    multi_bytes_per_sec: float | None = None

    def to_dict(self) -> dict:
        return {
            "corpus_bytes": self.corpus_bytes,
            "doc_count": self.doc_count,
            "unstable": self.unstable,
            "single": {
                "seconds": self.single_seconds,
                "bytes_per_sec": self.single_bytes_per_sec,
            },
            "multi": None
            if self.multi_workers is None
            else {
                "workers": self.multi_workers,
                "seconds": self.multi_seconds,
                "bytes_per_sec": self.multi_bytes_per_sec,
            },
            "stage_seconds": dict(self.stage_seconds),
        }


def bench(
    docs: Sequence[Document],
    artifacts: Artifacts,
    options: Config | None = None,
    workers: int = 1,
    warmup: int = 32,
) -> BenchReport:
    """Wall-clock throughput of ``normalize`` over a corpus.

    Runs a warmup slice first so caches and lazily compiled regexes are hot,
    then times a full single-worker pass (collecting the per-stage breakdown)
    and, when ``workers`` > 1, a separate multi-worker pass.
    """
    if not docs:
        raise ValueError("bench needs a non-empty corpus")
    corpus_bytes = sum(len(d.text.encode("utf-8")) for d in docs)
    unstable = corpus_bytes < STABLE_CORPUS_BYTES
    if unstable:
        log.warning(
            "corpus is %d bytes (< %d); throughput numbers will be noisy",
            corpus_bytes,
            STABLE_CORPUS_BYTES,
        )

    for d in docs[: min(warmup, len(docs))]:
        normalize_document(d, artifacts, options)

    stage_seconds = dict.fromkeys(STAGES, 0.0)
    t0 = time.perf_counter()
    for d in docs:
        result = normalize_document(d, artifacts, options)
        for stage, secs in result.timings.items():
            stage_seconds[stage] += secs
    single_seconds = time.perf_counter() - t0

    multi_workers = multi_seconds = multi_bps = None
    if workers > 1:
        t0 = time.perf_counter()
        normalize_batch(docs, artifacts, options, workers=workers)
        multi_seconds = time.perf_counter() - t0
        multi_workers = workers
        multi_bps = corpus_bytes / multi_seconds if multi_seconds else 0.0

    return BenchReport(
        corpus_bytes=corpus_bytes,
        doc_count=len(docs),
        unstable=unstable,
        single_seconds=single_seconds,
        single_bytes_per_sec=corpus_bytes / single_seconds if single_seconds else 0.0,
        stage_seconds=stage_seconds,
        multi_workers=multi_workers,
        multi_seconds=multi_seconds,
        multi_bytes_per_sec=multi_bps,
    )

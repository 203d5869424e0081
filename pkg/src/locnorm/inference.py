"""Filling the next uncertain division level from implicit evidence.

The input is represented as the arithmetic mean of the embeddings of its
tokens that intersect the vocabulary (repeated tokens contribute once per
occurrence, so strong repeated signals dominate). The candidate pool is the
gazetteer children of the current path, restricted to divisions present in
the vocabulary; the child with maximal cosine similarity wins. One call fills
exactly one level — the shallowest null one — and a complete path is left
untouched.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .embeddings import EmbeddingTable, cosine
from .gazetteer import AdPath, Gazetteer


@dataclass(frozen=True, slots=True)
class InferenceResult:
    level_filled: int | None  # 1–3, or None when nothing was inferred
    chosen: str | None  # standard division name
    chosen_code: str | None
    similarity: float | None  # cosine in [-1, 1]
    candidates_considered: int
    note: str = ""

    @staticmethod
    def none(note: str, considered: int = 0) -> "InferenceResult":
        return InferenceResult(None, None, None, None, considered, note)


def embed_input(tokens: Iterable[str], table: EmbeddingTable) -> np.ndarray | None:
    """Occurrence-weighted mean of in-vocabulary token embeddings."""
    rows = [table.index[t] for t in tokens if t in table.index]
    if not rows:
        return None
    return table.input_vectors[rows].mean(axis=0)


def infer_next_level(
    confidence_path: AdPath,
    input_vector: np.ndarray,
    gazetteer: Gazetteer,
    table: EmbeddingTable,
    min_similarity: float | None = None,
) -> InferenceResult:
    """Argmax-cosine choice among the children of the current path.

    Ties break toward the lexicographically smallest record code. With
    ``min_similarity`` set, a best candidate below the threshold is reported
    but not chosen.
    """
    depth = confidence_path.depth
    if depth >= 3:
        return InferenceResult.none("path already complete")

    candidates = [
        rec for rec in gazetteer.children(confidence_path) if rec.name in table.index
    ]
    if not candidates:
        return InferenceResult.none(
            f"no level-{depth + 1} candidate division is in the embedding vocabulary"
        )

    best = None
    best_sim = -np.inf
    for rec in candidates:  # children() is code-ordered: first strict max wins ties
        sim = cosine(table.vector(rec.name), input_vector)
        if sim > best_sim:
            best, best_sim = rec, sim
    assert best is not None
    if min_similarity is not None and best_sim < min_similarity:
        return InferenceResult.none(
            f"best candidate {best.name} at cosine {best_sim:.4f} "
            f"below threshold {min_similarity}",
            considered=len(candidates),
        )
    return InferenceResult(
        level_filled=depth + 1,
        chosen=best.name,
        chosen_code=best.code,
        similarity=float(best_sim),
        candidates_considered=len(candidates),
    )

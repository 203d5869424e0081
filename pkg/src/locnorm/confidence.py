"""Candidate-path scoring from explicit division mentions.

Every division hit is expanded to its full three-level path; candidates are
first filtered by how many distinct levels of the path were hit anywhere in
the document, then weighted sentence by sentence. A sentence contributes

    (hits of the candidate in the sentence) / (1 + other division hits)

so an address-listing sentence full of unrelated divisions is heavily
discounted. The winning path is truncated to its deepest directly-hit level:
a hit on a county confirms its city and province transitively, but levels
below the deepest hit stay null for the inference stage to fill.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .gazetteer import AdPath, Gazetteer
from .textscan import AD_HIT, Token

ScannedSentences = Sequence[Sequence[Token]]


@dataclass(frozen=True, slots=True)
class CandidateScore:
    path: AdPath
    level_hits: int  # distinct levels of path hit anywhere in the document
    deepest_hit: int  # deepest directly-hit level, for truncation/tie-break
    weight: float


def _codes_key(path: AdPath) -> tuple[str, str, str]:
    return tuple(c or "" for c in path.codes)


def _hit_levels(sentences: ScannedSentences, path: AdPath) -> set[int]:
    """Levels of ``path`` whose record was matched by some AD hit."""
    codes = path.codes
    levels: set[int] = set()
    for tokens in sentences:
        for tok in tokens:
            if tok.kind != AD_HIT:
                continue
            for rec in tok.records:
                for lvl in (1, 2, 3):
                    if codes[lvl - 1] is not None and rec.code == codes[lvl - 1]:
                        levels.add(lvl)
        if len(levels) == 3:
            return levels
    return levels


def collect_candidates(
    sentences: ScannedSentences, gazetteer: Gazetteer
) -> set[AdPath]:
    """Expand every AD hit to its full path; duplicates merge."""
    candidates: set[AdPath] = set()
    for tokens in sentences:
        for tok in tokens:
            if tok.kind != AD_HIT:
                continue
            for rec in tok.records:
                candidates.update(gazetteer.expand_to_paths(rec))
    return candidates


def count_level(sentences: ScannedSentences, path: AdPath) -> int:
    """Distinct levels of ``path`` hit anywhere in the document.

    One surface can confirm several levels at once when it resolves to
    records on more than one level (self-named municipality records).
    """
    return len(_hit_levels(sentences, path))


def score_candidates(
    sentences: ScannedSentences, candidates: Iterable[AdPath]
) -> list[CandidateScore]:
    """Filter candidates to the best level coverage, then accumulate weights."""
    ordered = sorted(set(candidates), key=_codes_key)
    if not ordered:
        raise ValueError("score_candidates requires at least one candidate")

    hit_levels = {path: _hit_levels(sentences, path) for path in ordered}
    max_hits = max(len(v) for v in hit_levels.values())
    survivors = [p for p in ordered if len(hit_levels[p]) == max_hits]

    scores: list[CandidateScore] = []
    for path in survivors:
        codes = set(path.codes) - {None}
        weight = 0.0
        for tokens in sentences:
            mine = 0
            other = 0
            for tok in tokens:
                if tok.kind != AD_HIT:
                    continue
                if any(rec.code in codes for rec in tok.records):
                    mine += 1
                else:
                    other += 1
            if mine:
                weight += mine / (1 + other)
        scores.append(
            CandidateScore(
                path=path,
                level_hits=max_hits,
                deepest_hit=max(hit_levels[path]),
                weight=weight,
            )
        )
    return scores


def confidence(sentences: ScannedSentences, gazetteer: Gazetteer) -> AdPath:
    """The best-supported path, truncated to its deepest directly-hit level.

    Ties break toward the deeper explicit hit, then the lexicographically
    smallest code triple, so the result is independent of enumeration order.
    Returns the all-null path when the document mentions no division.
    """
    candidates = collect_candidates(sentences, gazetteer)
    if not candidates:
        return AdPath.EMPTY
    scores = score_candidates(sentences, candidates)
    best = min(scores, key=lambda c: (-c.weight, -c.deepest_hit, _codes_key(c.path)))
    return best.path.truncated(best.deepest_hit)

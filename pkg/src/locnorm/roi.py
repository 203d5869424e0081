"""Mining the term → division knowledge base from geographic sequences.

A geographic word that reliably implies one place (a mountain, a campus, an
airport) earns an entry mapping it to a division path; a ubiquitous name (a
bank branch chain) must not. The build pipeline, in order:

1. count term/division co-occurrences once per sequence, and each division's
   sequence frequency;
2. score g = count × ln(|S| / (1 + df)) and drop pairs under the validity
   threshold — divisions that appear everywhere carry no signal;
3. reject terms whose score distribution is too dispersed: entropy over the
   normalized scores above the cutoff (in nats);
4. reweight a child division ranked below its own parent by dividing by
   P(child | parent, ¬child, s) — the probability that a parent-only sequence
   has the child named in a sibling sequence of the same document — which
   recovers fine-grained mappings that corpora under-mention;
5. re-sort, keep the top pairs on the same order of magnitude (g ≥ g_max/10,
   at most 3), and accept the term only if every kept division lies on one
   ancestor chain; the entry's path is the deepest point of that chain.

The store is an exact-match in-memory index persisted as JSONL plus a
metadata sidecar recording thresholds and corpus statistics.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .gazetteer import AdPath, Gazetteer
from .sequences import AD, GEO, GeoSequence


@dataclass(frozen=True, slots=True)
class RoiThresholds:
    validity_min_score: float = 1.0
    entropy_cutoff: float = 1.0  # nats
    magnitude_ratio: float = 0.1
    top_k: int = 3

    def as_dict(self) -> dict:
        return {
            "validity_min_score": self.validity_min_score,
            "entropy_cutoff": self.entropy_cutoff,
            "magnitude_ratio": self.magnitude_ratio,
            "top_k": self.top_k,
        }


@dataclass(frozen=True, slots=True)
class PairScore:
    term: str
    ad_name: str
    raw_count: int
    idf: float
    g: float


@dataclass(frozen=True, slots=True)
class RoiEntry:
    term: str
    path: AdPath
    entropy: float
    support: tuple[PairScore, ...]


@dataclass
class RoiStore:
    entries: dict[str, RoiEntry] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)


# ---------------------------------------------------------------------------
# Formula building blocks
# ---------------------------------------------------------------------------


def count_pairs(
    sequences: Sequence[GeoSequence],
) -> tuple[dict[tuple[str, str], int], dict[str, int], int]:
    """Per-sequence co-occurrence counts and division sequence frequencies.

    Returns (pair_counts, doc_freq, total_sequences); a pair counts once per
    sequence it appears in, df(w) is the number of sequences containing the
    division w at all.
    """
    pair_counts: dict[tuple[str, str], int] = {}
    doc_freq: dict[str, int] = {}
    total = 0
    for seq in sequences:
        total += 1
        ads = {it.surface for it in seq.items if it.kind == AD}
        geos = {it.surface for it in seq.items if it.kind == GEO}
        for a in ads:
            doc_freq[a] = doc_freq.get(a, 0) + 1
        for w in geos:
            for a in ads:
                key = (w, a)
                pair_counts[key] = pair_counts.get(key, 0) + 1
    return pair_counts, doc_freq, total


def score_pair(count: int, df: int, total_sequences: int) -> float:
    """g = count × ln(total / (1 + df))."""
    if total_sequences < 1:
        raise ValueError("total_sequences must be ≥ 1")
    if count < 1 or df < 1:
        raise ValueError("count and df must be ≥ 1 for a stored pair")
    return count * math.log(total_sequences / (1 + df))


def entropy(scores: Sequence[float]) -> float:
    """Shannon entropy (nats) of the normalized score distribution."""
    if not scores:
        raise ValueError("entropy of an empty candidate list is undefined")
    if any(g <= 0 for g in scores):
        raise ValueError("all scores must be positive")
    total = sum(scores)
    return -sum((g / total) * math.log(g / total) for g in scores)


def _sequence_stats(
    sequences: Sequence[GeoSequence],
) -> tuple[list[set[str]], dict[str, list[int]]]:
    """Per-sequence division sets plus a doc_id → sequence indices map."""
    ad_sets = [
        {it.surface for it in seq.items if it.kind == AD} for seq in sequences
    ]
    by_doc: dict[str, list[int]] = {}
    for i, seq in enumerate(sequences):
        by_doc.setdefault(seq.doc_id, []).append(i)
    return ad_sets, by_doc


def reweight_parent(
    g: float,
    child: str,
    parent: str,
    sequences: Sequence[GeoSequence],
) -> float:
    """Divide g by P(child | parent, ¬child, s); identity on zero counts.

    The denominator counts sequences naming the parent but not the child; the
    numerator counts those among them whose same-document sibling sequences
    name the child.
    """
    ad_sets, by_doc = _sequence_stats(sequences)
    denom = 0
    numer = 0
    for i, seq in enumerate(sequences):
        ads = ad_sets[i]
        if parent not in ads or child in ads:
            continue
        denom += 1
        if any(child in ad_sets[j] for j in by_doc[seq.doc_id] if j != i):
            numer += 1
    if numer == 0 or denom == 0:
        return g
    return g / (numer / denom)


# ---------------------------------------------------------------------------
# Build pipeline
# ---------------------------------------------------------------------------


def _consistent_chain(
    names: Sequence[str], gazetteer: Gazetteer
) -> AdPath | None:
    """The unique deepest path covering one expansion of every name.

    Returns None when some name is unknown, the expansions sit on divergent
    chains, or more than one deepest chain covers them (unresolvable
    ambiguity).
    """
    options: list[list[AdPath]] = []
    for name in names:
        paths = gazetteer.paths_for_name(name)
        if not paths:
            return None
        options.append(paths)
    seen: set[AdPath] = set()
    chains: list[AdPath] = []
    for paths in options:
        for p in paths:
            if p not in seen:
                seen.add(p)
                chains.append(p)
    covering = [
        c
        for c in chains
        if all(any(c.extends(p) for p in paths) for paths in options)
    ]
    if not covering:
        return None
    best_depth = max(c.depth for c in covering)
    deepest = [c for c in covering if c.depth == best_depth]
    if len(deepest) != 1:
        return None
    return deepest[0]


def build_roi(
    sequences: Sequence[GeoSequence],
    gazetteer: Gazetteer,
    thresholds: RoiThresholds = RoiThresholds(),
) -> RoiStore:
    """Run the full mining pipeline over extracted sequences."""
    sequences = list(sequences)
    if not sequences:
        raise ValueError("cannot build a knowledge base from zero sequences")

    pair_counts, doc_freq, total = count_pairs(sequences)

    by_term: dict[str, list[PairScore]] = {}
    for (term, ad_name), count in sorted(pair_counts.items()):
        g = score_pair(count, doc_freq[ad_name], total)
        if g < thresholds.validity_min_score:
            continue
        idf = math.log(total / (1 + doc_freq[ad_name]))
        by_term.setdefault(term, []).append(
            PairScore(term=term, ad_name=ad_name, raw_count=count, idf=idf, g=g)
        )

    stats = {
        "total_sequences": total,
        "distinct_terms_scored": len(by_term),
        "rejected_entropy": 0,
        "rejected_chain": 0,
    }
    entries: dict[str, RoiEntry] = {}
    for term in sorted(by_term):
        pairs = sorted(by_term[term], key=lambda p: (-p.g, p.ad_name))
        term_entropy = entropy([p.g for p in pairs])
        if term_entropy > thresholds.entropy_cutoff:
            stats["rejected_entropy"] += 1
            continue

        # parent reweighting: a child ranked below its own parent gets its
        # score divided by the recovery probability (computed once, against
        # the highest-ranked parent)
        adjusted: list[PairScore] = []
        for i, p in enumerate(pairs):
            parents = gazetteer.parent_names(p.ad_name)
            g = p.g
            for q in pairs[:i]:
                if q.ad_name in parents:
                    g = reweight_parent(g, p.ad_name, q.ad_name, sequences)
                    break
            adjusted.append(
                PairScore(p.term, p.ad_name, p.raw_count, p.idf, g)
            )
        adjusted.sort(key=lambda p: (-p.g, p.ad_name))

        g_max = adjusted[0].g
        kept = [p for p in adjusted if p.g >= g_max * thresholds.magnitude_ratio]
        kept = kept[: thresholds.top_k]

        path = _consistent_chain([p.ad_name for p in kept], gazetteer)
        if path is None:
            stats["rejected_chain"] += 1
            continue
        entries[term] = RoiEntry(
            term=term, path=path, entropy=term_entropy, support=tuple(kept)
        )

    stats["entries"] = len(entries)
    return RoiStore(
        entries=entries,
        meta={"thresholds": thresholds.as_dict(), "stats": stats},
    )


def lookup_roi(store: RoiStore, tokens: Iterable[str]) -> list[RoiEntry]:
    """Exact-match scanned tokens against entry terms, first-occurrence order."""
    out: list[RoiEntry] = []
    seen: set[str] = set()
    for t in tokens:
        if t in seen:
            continue
        seen.add(t)
        entry = store.entries.get(t)
        if entry is not None:
            out.append(entry)
    return out


# ---------------------------------------------------------------------------
# Persistence: entries as JSONL (sorted by term) + ".meta.json" sidecar
# ---------------------------------------------------------------------------


def save_roi(store: RoiStore, path: str | Path) -> None:
    path = Path(path)
    with open(path, "w", encoding="utf-8") as fh:
        for term in sorted(store.entries):
            e = store.entries[term]
            fh.write(
                json.dumps(
                    {
                        "term": e.term,
                        "path": list(e.path.levels),
                        "codes": list(e.path.codes),
                        "entropy": e.entropy,
                        "support": [
                            {
                                "ad": p.ad_name,
                                "g": p.g,
                                "count": p.raw_count,
                                "idf": p.idf,
                            }
                            for p in e.support
                        ],
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )
    meta_path = path.with_name(path.name + ".meta.json")
    with open(meta_path, "w", encoding="utf-8") as fh:
        json.dump(store.meta, fh, ensure_ascii=False, indent=2, sort_keys=True)
        fh.write("\n")


def load_roi(path: str | Path) -> RoiStore:
    path = Path(path)
    entries: dict[str, RoiEntry] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                raw = json.loads(line)
                term = str(raw["term"])
                levels = tuple(raw["path"])
                codes = tuple(raw.get("codes", (None, None, None)))
                support = tuple(
                    PairScore(
                        term=term,
                        ad_name=str(s["ad"]),
                        raw_count=int(s.get("count", 1)),
                        idf=float(s.get("idf", 0.0)),
                        g=float(s["g"]),
                    )
                    for s in raw["support"]
                )
                entries[term] = RoiEntry(
                    term=term,
                    path=AdPath(levels, codes),
                    entropy=float(raw["entropy"]),
                    support=support,
                )
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"{path}:{lineno}: bad entry: {exc}") from exc
    meta_path = path.with_name(path.name + ".meta.json")
    meta = {}
    if meta_path.exists():
        with open(meta_path, encoding="utf-8") as fh:
            meta = json.load(fh)
    return RoiStore(entries=entries, meta=meta)

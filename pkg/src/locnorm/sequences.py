"""Geographic-sequence extraction from a document corpus.

Every division mention anchors a window of surrounding sentences (one on each
side by default). Inside each window, division hits and recognized location
entities are collected in raw-text order into a GeoSequence; windows that
share a sentence merge so nothing is double-counted downstream. Sequences
shorter than ``min_len`` are dropped.

Division items are normalized to the standard record name (so 成都 and 成都市
accumulate under one key); an ambiguous surface whose records disagree on the
standard name is kept verbatim.

The entity recognizer is pluggable. The default is deterministic and
self-contained: exact matches against a user-supplied lexicon, plus a
conservative suffix heuristic that fires only on short, cleanly delimited CJK
runs ending in a location suffix (山, 湖, 机场, 公园, ...). It is crude by
design — wire in a real NER model through the same interface for quality.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Protocol, Sequence

from .gazetteer import Gazetteer
from .textscan import (
    AD_HIT,
    Document,
    Matcher,
    Sentence,
    normalize_text,
    scan,
    split_sentences,
)

AD = "AD"
GEO = "GEO"


@dataclass(frozen=True, slots=True)
class SeqItem:
    surface: str
    kind: str  # AD | GEO
    start: int = -1  # character offset in the source document; -1 once loaded


@dataclass(frozen=True, slots=True)
class GeoSequence:
    doc_id: str
    seq_index: int
    items: tuple[SeqItem, ...]

    def surfaces(self, kind: str | None = None) -> list[str]:
        return [it.surface for it in self.items if kind is None or it.kind == kind]


class EntityRecognizer(Protocol):
    """Sentence text → location-entity (start, end) spans, deterministic."""

    def __call__(self, text: str) -> list[tuple[int, int]]: ...


DEFAULT_SUFFIXES = (
    "机场",
    "大学",
    "学院",
    "公园",
    "广场",
    "车站",
    "基地",
    "大道",
    "立交",
    "古镇",
    "老街",
    "水库",
    "景区",
    "山",
    "湖",
    "河",
    "江",
    "海",
    "湾",
    "岛",
    "寺",
    "塔",
    "港",
)

_CJK_RUN = re.compile(r"[一-鿿]+")


class LexiconRecognizer:
    """Default recognizer: lexicon exact-match + bounded suffix heuristic.

    The suffix rule fires only when a maximal CJK run (bounded by non-CJK text
    or the sentence edge) is 2–6 characters long and ends with a known suffix,
    i.e. the run *is* the entity. Entities embedded in running prose must come
    from the lexicon.
    """

    def __init__(
        self,
        lexicon: Iterable[str] = (),
        suffixes: Sequence[str] = DEFAULT_SUFFIXES,
        max_run: int = 6,
    ):
        terms = {normalize_text(t) for t in lexicon} - {""}
        self._matcher = Matcher(set(), terms)
        self._suffixes = tuple(suffixes)
        self._max_run = max_run

    def __call__(self, text: str) -> list[tuple[int, int]]:
        spans = [(m.start(), m.end()) for m in self._matcher.finditer(text)]
        for m in _CJK_RUN.finditer(text):
            run = m.group()
            if 2 <= len(run) <= self._max_run and run.endswith(self._suffixes):
                spans.append((m.start(), m.end()))
        return sorted(set(spans))


def load_geo_lexicon(path: str | Path) -> set[str]:
    """One term per line; blank lines and '#' comments ignored."""
    terms: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            term = normalize_text(line.strip())
            if term and not term.startswith("#"):
                terms.add(term)
    return terms


def _resolve_spans(
    ad_tokens: list, geo_spans: list[tuple[int, int]], sentence: Sentence
) -> list[SeqItem]:
    """Merge AD hits and entity spans leftmost-longest; AD wins exact ties."""
    candidates: list[tuple[int, int, int, object]] = []  # (start, -len, prio, payload)
    for tok in ad_tokens:
        candidates.append((tok.start, -(tok.end - tok.start), 0, tok))
    for s, e in geo_spans:
        candidates.append((sentence.start + s, -(e - s), 1, sentence.text[s:e]))
    candidates.sort(key=lambda c: (c[0], c[1], c[2]))

    items: list[SeqItem] = []
    pos = -1
    for start, neg_len, _prio, payload in candidates:
        if start < pos:
            continue
        end = start - neg_len
        if isinstance(payload, str):
            items.append(SeqItem(payload, GEO, start))
        else:
            names = sorted({rec.name for rec in payload.records})
            surface = names[0] if len(names) == 1 else payload.surface
            items.append(SeqItem(surface, AD, start))
        pos = end
    return items


def extract_sequences(
    corpus: Iterable[Document],
    gazetteer: Gazetteer,
    recognizer: EntityRecognizer,
    min_len: int = 3,
    window: int = 1,
    delimiters: str | None = None,
) -> list[GeoSequence]:
    """Windowed extraction around every division anchor.

    ``window`` is the number of sentences taken on each side of an anchor
    sentence; anchor windows that overlap merge into one sequence. Output is
    ordered by (document order, window order) and is deterministic.
    """
    if min_len < 2:
        raise ValueError("min_len must be ≥ 2")
    matcher = Matcher(set(gazetteer.surfaces()))
    out: list[GeoSequence] = []
    split_kwargs = {} if delimiters is None else {"delimiters": delimiters}

    for doc in corpus:
        doc = Document(doc.doc_id, normalize_text(doc.text))
        sentences = split_sentences(doc, **split_kwargs)
        if not sentences:
            continue
        per_sentence: list[list[SeqItem]] = []
        anchor_ids: list[int] = []
        for sent in sentences:
            ad_tokens = [
                t for t in scan(sent, matcher, gazetteer) if t.kind == AD_HIT
            ]
            geo_spans = recognizer(sent.text)
            per_sentence.append(_resolve_spans(ad_tokens, geo_spans, sent))
            if ad_tokens:
                anchor_ids.append(sent.index)

        n = len(sentences)
        windows: list[tuple[int, int]] = []
        for i in anchor_ids:
            lo, hi = max(0, i - window), min(n - 1, i + window)
            if windows and lo <= windows[-1][1]:
                windows[-1] = (windows[-1][0], max(hi, windows[-1][1]))
            else:
                windows.append((lo, hi))

        seq_index = 0
        for lo, hi in windows:
            items = [it for sid in range(lo, hi + 1) for it in per_sentence[sid]]
            if len(items) >= min_len:
                out.append(GeoSequence(doc.doc_id, seq_index, tuple(items)))
                seq_index += 1
    return out


# ---------------------------------------------------------------------------
# Persistence: one JSON object per sequence
# ---------------------------------------------------------------------------


def save_sequences(sequences: Iterable[GeoSequence], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for seq in sequences:
            fh.write(
                json.dumps(
                    {
                        "doc_id": seq.doc_id,
                        "seq_index": seq.seq_index,
                        "items": [
                            {"surface": it.surface, "kind": it.kind}
                            for it in seq.items
                        ],
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )


def load_sequences(path: str | Path) -> list[GeoSequence]:
    out: list[GeoSequence] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                raw = json.loads(line)
                items = tuple(
                    SeqItem(str(it["surface"]), str(it["kind"])) for it in raw["items"]
                )
                out.append(GeoSequence(str(raw["doc_id"]), int(raw["seq_index"]), items))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"{path}:{lineno}: bad sequence record: {exc}") from exc
    return out

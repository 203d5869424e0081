"""Sentence splitting and dictionary-driven token scanning.

The scanner is a multi-pattern exact matcher over a union lexicon (division
surfaces, knowledge-base terms, embedding vocabulary). Matches are resolved
leftmost-longest — at each position the longest lexicon entry wins, and the
next match starts after it — which is what downstream consumers want: a long
domain term (成都双流国际机场) shadows the division mention embedded in it.

The matcher compiles the lexicon into a trie-shaped regular expression so the
actual scanning runs inside `re` at C speed. A trie node that is both a
terminal and a branch point becomes a greedy optional group, which makes
Python's leftmost-first alternation behave as leftmost-longest.

Offsets are Unicode character offsets into the document text, so
``doc.text[tok.start:tok.end] == tok.surface`` always holds; every character
offset is also a valid UTF-8 boundary.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .gazetteer import Gazetteer

SENTENCE_DELIMITERS = "。！？!?；;\n"

AD_HIT = "AD_HIT"
LEXICON_WORD = "LEXICON_WORD"
OTHER = "OTHER"


@dataclass(frozen=True, slots=True)
class Document:
    doc_id: str
    text: str


@dataclass(frozen=True, slots=True)
class Sentence:
    """One sentence with its [start, end) span in the document text."""

    index: int
    start: int
    end: int
    text: str


@dataclass(frozen=True, slots=True)
class Token:
    surface: str
    start: int  # character offset in the document
    end: int
    kind: str  # AD_HIT | LEXICON_WORD | OTHER
    records: tuple = ()  # matched AdRecords when kind == AD_HIT

    def __post_init__(self):
        if self.kind == AD_HIT and not self.records:
            raise ValueError("AD_HIT token must carry its matched records")


def normalize_text(text: str) -> str:
    """Unicode NFC; the only normalization applied anywhere."""
    return unicodedata.normalize("NFC", text)


def split_sentences(
    doc: Document, delimiters: str = SENTENCE_DELIMITERS
) -> list[Sentence]:
    """Split on the delimiter set, delimiters attached to the left sentence.

    Concatenating the sentence texts reproduces the document exactly.
    """
    text = doc.text
    if not text:
        return []
    delim_cls = re.escape(delimiters)
    pattern = re.compile(f"[^{delim_cls}]*[{delim_cls}]+|[^{delim_cls}]+")
    return [
        Sentence(index=i, start=m.start(), end=m.end(), text=m.group())
        for i, m in enumerate(pattern.finditer(text))
    ]


# ---------------------------------------------------------------------------
# Trie-regex matcher
# ---------------------------------------------------------------------------


def _trie_pattern(surfaces: list[str]) -> str:
    """Compile surfaces into a regex preferring the longest entry at each start."""
    root: dict = {}
    for s in surfaces:
        node = root
        for ch in s:
            node = node.setdefault(ch, {})
        node[""] = {}  # terminal marker

    def emit(node: dict) -> str:
        terminal = "" in node
        branches = sorted(k for k in node if k != "")
        if not branches:
            return ""
        alts = [re.escape(ch) + emit(node[ch]) for ch in branches]
        body = alts[0] if len(alts) == 1 else "(?:" + "|".join(alts) + ")"
        # greedy optional continuation below a terminal: longer entries win
        return f"(?:{body})?" if terminal else body

    return emit(root)


class Matcher:
    """Compiled multi-pattern scanner over a labeled lexicon.

    ``ad_surfaces`` mark administrative-division hits; ``lexicon_words`` mark
    every other known term. A surface present in both is reported as AD_HIT.
    """

    def __init__(self, ad_surfaces: set[str], lexicon_words: set[str] = frozenset()):
        self.ad_surfaces = frozenset(s for s in ad_surfaces if s)
        self.lexicon_words = frozenset(s for s in lexicon_words if s) - self.ad_surfaces
        union = sorted(self.ad_surfaces | self.lexicon_words)
        self._regex = re.compile(_trie_pattern(union)) if union else None

    def finditer(self, text: str):
        if self._regex is None:
            return iter(())
        return self._regex.finditer(text)


def compile_matcher(
    ad_surfaces: set[str], lexicon_words: set[str] = frozenset()
) -> Matcher:
    return Matcher(ad_surfaces, lexicon_words)


def scan(
    sentence: Sentence,
    lexicon: Matcher | set[str],
    gazetteer: "Gazetteer | None" = None,
) -> list[Token]:
    """All non-overlapping leftmost-longest matches in one sentence.

    Maximal unmatched gaps become OTHER tokens, so the token spans cover the
    sentence. Pass a ``Matcher`` for repeated scanning; a raw set is compiled
    on the fly — its surfaces count as AD hits only when a gazetteer is given
    and resolves them. AD hits require the gazetteer to attach their records.
    """
    if not isinstance(lexicon, Matcher):
        surfaces = set(lexicon)
        if gazetteer is not None:
            ad = {s for s in surfaces if gazetteer.lookup(s)}
            lexicon = Matcher(ad, surfaces - ad)
        else:
            lexicon = Matcher(set(), surfaces)
    elif lexicon.ad_surfaces and gazetteer is None:
        raise ValueError("a gazetteer is required to resolve AD hits")

    tokens: list[Token] = []
    pos = 0
    text = sentence.text
    base = sentence.start
    for m in lexicon.finditer(text):
        if m.start() > pos:
            tokens.append(
                Token(text[pos : m.start()], base + pos, base + m.start(), OTHER)
            )
        surface = m.group()
        if surface in lexicon.ad_surfaces:
            records = tuple(sorted(gazetteer.lookup(surface), key=lambda r: r.code))
            tokens.append(Token(surface, base + m.start(), base + m.end(), AD_HIT, records))
        else:
            tokens.append(Token(surface, base + m.start(), base + m.end(), LEXICON_WORD))
        pos = m.end()
    if pos < len(text):
        tokens.append(Token(text[pos:], base + pos, base + len(text), OTHER))
    return tokens

from __future__ import annotations

import pytest

from locnorm.gazetteer import AdRecord, Gazetteer
from locnorm.sequences import (
    AD,
    GEO,
    GeoSequence,
    LexiconRecognizer,
    SeqItem,
    extract_sequences,
    load_geo_lexicon,
    load_sequences,
    save_sequences,
)
from locnorm.textscan import Document


def test_recognizer_lexicon_matches_inside_prose():
    rec = LexiconRecognizer(["颐和园"])
    text = "我们今天去颐和园划船"
    assert [(s, e) for s, e in rec(text)] == [(5, 8)]
    assert text[5:8] == "颐和园"


def test_recognizer_suffix_fires_only_on_clean_short_runs():
    rec = LexiconRecognizer([])
    # the run is exactly the entity, bounded by punctuation
    assert rec("梧桐山，很美") == [(0, 3)]
    # embedded in a longer run: no lexicon entry, no fire
    assert rec("我们爬梧桐山去") == []
    # 8-char run exceeds max_run even though it ends with a suffix
    assert rec("成都双流国际机场") == []
    assert rec("双流机场") == [(0, 4)]
    # single char is below the 2-char floor
    assert rec("山") == []


def test_recognizer_spans_sorted_and_deduped():
    rec = LexiconRecognizer(["泸沽湖"], suffixes=("湖",))
    assert rec("泸沽湖") == [(0, 3)]  # lexicon and suffix agree on one span


def test_load_geo_lexicon_bundled():
    from locnorm.fixtures import default_lexicon_path

    terms = load_geo_lexicon(default_lexicon_path())
    assert len(terms) == 23
    assert "颐和园" in terms and "成都双流国际机场" in terms


def test_load_geo_lexicon_skips_comments(tmp_path):
    p = tmp_path / "lex.txt"
    p.write_text("# header\n\n梧桐山\n 泸沽湖 \n", encoding="utf-8")
    assert load_geo_lexicon(p) == {"梧桐山", "泸沽湖"}


def _sequences(texts, gazetteer, lexicon=(), **kw):
    docs = [Document(f"d{i}", t) for i, t in enumerate(texts)]
    return extract_sequences(docs, gazetteer, LexiconRecognizer(lexicon), **kw)


def test_long_entity_shadows_embedded_division(gazetteer):
    (seq,) = _sequences(
        ["成都双流国际机场在双流区。"], gazetteer, ["成都双流国际机场"], min_len=2
    )
    assert [(it.surface, it.kind) for it in seq.items] == [
        ("成都双流国际机场", GEO),
        ("双流区", AD),
    ]


def test_ad_wins_exact_span_tie(gazetteer):
    (seq,) = _sequences(["武汉市有湖北经济学院。"], gazetteer, ["武汉市", "湖北经济学院"], min_len=2)
    assert [(it.surface, it.kind) for it in seq.items] == [
        ("武汉市", AD),
        ("湖北经济学院", GEO),
    ]


def test_alias_normalized_to_standard_name(gazetteer):
    (seq,) = _sequences(["襄樊的鹏城朋友。"], gazetteer, min_len=2)
    assert seq.surfaces(AD) == ["襄阳市", "深圳市"]


def test_ambiguous_surface_without_common_name_kept_verbatim():
    gaz = Gazetteer(
        [
            AdRecord("100000", "阿尔法省", ("双城",), 1, None),
            AdRecord("200000", "贝塔省", ("双城",), 1, None),
        ]
    )
    (seq,) = _sequences(["双城的湖边，双城的河谷。"], gaz, ["湖边"], min_len=2)
    assert seq.surfaces(AD) == ["双城", "双城"]


def test_adjacent_sentence_pulled_into_window(gazetteer):
    (seq,) = _sequences(["梧桐山很美。盐田区就在旁边。"], gazetteer, ["梧桐山"], min_len=2)
    assert [(it.surface, it.kind) for it in seq.items] == [
        ("梧桐山", GEO),
        ("盐田区", AD),
    ]
    assert (seq.doc_id, seq.seq_index) == ("d0", 0)


def test_overlapping_windows_merge(gazetteer):
    # anchors on sentences 0 and 2 share sentence 1 → one sequence
    text = "盐田区。梧桐山很美。深圳市。"
    (seq,) = _sequences([text], gazetteer, ["梧桐山"], min_len=2)
    assert seq.surfaces() == ["盐田区", "梧桐山", "深圳市"]


def test_distant_anchors_stay_separate(gazetteer):
    # two filler sentences between anchors → windows (0,1) and (2,3)
    text = "盐田区。梧桐山。没有别的。深圳市福田区。"
    seqs = _sequences([text], gazetteer, ["梧桐山"], min_len=2)
    assert [s.seq_index for s in seqs] == [0, 1]
    assert seqs[0].surfaces() == ["盐田区", "梧桐山"]
    assert seqs[1].surfaces() == ["深圳市", "福田区"]


def test_window_size_zero_is_anchor_sentence_only(gazetteer):
    # neighbour sentences are excluded, so only the anchor sentence's two
    # items survive and the lone 深圳市 anchor falls under min_len
    text = "梧桐山很美。盐田区的大梅沙。深圳市。"
    (seq,) = _sequences([text], gazetteer, ["梧桐山", "大梅沙"], min_len=2, window=0)
    assert seq.surfaces() == ["盐田区", "大梅沙"]


def test_min_len_counts_all_items(gazetteer):
    texts = ["盐田区的梧桐山。"]
    assert _sequences(texts, gazetteer, ["梧桐山"], min_len=3) == []
    (seq,) = _sequences(texts, gazetteer, ["梧桐山"], min_len=2)
    assert len(seq.items) == 2


def test_min_len_floor(gazetteer):
    with pytest.raises(ValueError):
        _sequences(["盐田区。"], gazetteer, min_len=1)


def test_empty_and_anchorless_docs_yield_nothing(gazetteer):
    assert _sequences(["", "今天天气不错。", "颐和园很美。"], gazetteer, ["颐和园"]) == []


def test_item_offsets_point_into_document(gazetteer):
    text = "去盐田区看梧桐山。"
    (seq,) = _sequences([text], gazetteer, ["梧桐山"], min_len=2)
    for it in seq.items:
        assert text[it.start : it.start + len(it.surface)] == it.surface
    # a normalized alias keeps the offset of its source span
    (seq,) = _sequences(["去深圳看梧桐山。"], gazetteer, ["梧桐山"], min_len=2)
    ad = seq.items[0]
    assert (ad.surface, ad.start) == ("深圳市", 1)


def test_save_load_roundtrip(tmp_path, gazetteer):
    seqs = _sequences(["盐田区的梧桐山很美。深圳市。"], gazetteer, ["梧桐山"], min_len=2)
    path = tmp_path / "seqs.jsonl"
    save_sequences(seqs, path)
    loaded = load_sequences(path)
    assert len(loaded) == len(seqs)
    for a, b in zip(loaded, seqs):
        assert a.doc_id == b.doc_id and a.seq_index == b.seq_index
        assert [(i.surface, i.kind) for i in a.items] == [
            (i.surface, i.kind) for i in b.items
        ]
        assert all(i.start == -1 for i in a.items)  # offsets are not persisted


def test_load_sequences_reports_bad_line(tmp_path):
    p = tmp_path / "seqs.jsonl"
    p.write_text('{"doc_id": "a", "seq_index": 0, "items": []}\nnot json\n', "utf-8")
    with pytest.raises(ValueError, match=":2:"):
        load_sequences(p)

"""Pins the bundled demo corpus to its design table.

The corpus is engineered: every co-occurrence count, document frequency and
derived score below is a design constant, so these tests freeze the mined
knowledge base numerically. If an edit to the bundled texts moves any number,
the right fix is almost always to restore the texts, not to update the test.
"""

from __future__ import annotations

import math
from collections import Counter

import pytest

from locnorm.fixtures import QUERY_CASES, gold_paths, query_documents
from locnorm.roi import count_pairs, entropy, score_pair

from oracles import brute_roi

TOTAL_SEQUENCES = 137

SEQUENCES_PER_BLOCK = {
    "wts": 19, "lgh": 14, "shl": 14, "slj": 8, "hbe": 10, "hwj": 10,
    "dxa": 9, "boc": 10, "gdw": 20, "yhy": 12, "slt": 8, "hyl": 3,
}

# division → number of sequences naming it, over the whole corpus
DOC_FREQ = {
    "盐田区": 11, "深圳市": 18, "广东省": 8,
    "丽江市": 11, "云南省": 3,
    "双流区": 9, "成都市": 6, "四川省": 1, "龙泉驿区": 6,
    "武汉市": 8, "湖北省": 2,
    "呼和浩特市": 7, "内蒙古自治区": 2,
    "珠海市": 2, "贵阳市": 2, "海口市": 2, "合肥市": 2, "天津市": 2,
    "广州市": 8, "佛山市": 4,
    "北京市": 10, "海淀区": 4,
    "上海市": 2, "浦东新区": 6,
    "尉犁县": 2, "巴音郭楞蒙古自治州": 1,
}

# term → [(division, co-occurrence count)] in final support order; the one
# reweighted pair carries its recovery probability
SUPPORT = {
    "上海森兰体育公园": [("浦东新区", 6), ("上海市", 2)],
    "世界之窗": [("深圳市", 2)],
    "假日海滩": [("海口市", 2)],
    "内蒙古大兴安岭": [("呼和浩特市", 7), ("内蒙古自治区", 2)],
    "十陵立交": [("龙泉驿区", 6), ("成都市", 2)],
    "华为基地": [("深圳市", 8), ("广东省", 2)],
    "华发广场": [("珠海市", 2)],
    "大召寺": [("呼和浩特市", 2)],
    "大梅沙": [("盐田区", 4)],
    "成都双流国际机场": [("双流区", 9), ("成都市", 4), ("四川省", 1)],
    "梧桐山": [("盐田区", 11), ("深圳市", 6), ("广东省", 2)],
    "泸沽湖": [("丽江市", 11), ("云南省", 3)],
    "湖北经济学院": [("武汉市", 8), ("湖北省", 2)],
    "瓷房子": [("天津市", 2)],
    "甲秀楼": [("贵阳市", 2)],
    "胡杨林景区": [("尉犁县", 2), ("巴音郭楞蒙古自治州", 1)],
    "逍遥津": [("合肥市", 2)],
    "颐和园": [("海淀区", 2), ("北京市", 8)],
}

PATHS = {
    "上海森兰体育公园": ("上海市", "上海市", "浦东新区"),
    "世界之窗": ("广东省", "深圳市", None),
    "假日海滩": ("海南省", "海口市", None),
    "内蒙古大兴安岭": ("内蒙古自治区", "呼和浩特市", None),
    "十陵立交": ("四川省", "成都市", "龙泉驿区"),
    "华为基地": ("广东省", "深圳市", None),
    "华发广场": ("广东省", "珠海市", None),
    "大召寺": ("内蒙古自治区", "呼和浩特市", None),
    "大梅沙": ("广东省", "深圳市", "盐田区"),
    "成都双流国际机场": ("四川省", "成都市", "双流区"),
    "梧桐山": ("广东省", "深圳市", "盐田区"),
    "泸沽湖": ("云南省", "丽江市", None),
    "湖北经济学院": ("湖北省", "武汉市", None),
    "瓷房子": ("天津市", "天津市", None),
    "甲秀楼": ("贵州省", "贵阳市", None),
    "胡杨林景区": ("新疆", "巴音郭楞蒙古自治州", "尉犁县"),
    "逍遥津": ("安徽省", "合肥市", None),
    "颐和园": ("北京市", "北京市", "海淀区"),
}

# too dispersed (entropy gate) — mined, scored, then rejected
REJECTED = ("中国银行", "白云山", "荔枝湾", "骑楼街")

GEO_TERMS = set(SUPPORT) | set(REJECTED)


def _g(count: int, ad: str) -> float:
    return score_pair(count, DOC_FREQ[ad], TOTAL_SEQUENCES)


def test_sequence_counts_per_block(sequences):
    assert len(sequences) == TOTAL_SEQUENCES
    got = Counter(seq.doc_id[:3] for seq in sequences)
    assert dict(got) == SEQUENCES_PER_BLOCK


def test_two_segment_documents_split(sequences):
    # the last two documents of the 颐和园 block hold two distant anchors:
    # a 北京市-only window and a 海淀区-only window
    for doc_id in ("yhy09", "yhy10"):
        pair = [s for s in sequences if s.doc_id == doc_id]
        assert [s.seq_index for s in pair] == [0, 1]
        assert set(pair[0].surfaces("AD")) == {"北京市"}
        assert set(pair[1].surfaces("AD")) == {"海淀区"}


def test_vocabulary_is_exactly_the_designed_tokens(sequences, embedding_table):
    surfaces = {it.surface for seq in sequences for it in seq.items}
    assert surfaces == set(DOC_FREQ) | GEO_TERMS
    assert len(surfaces) == 48
    assert set(embedding_table.vocab) == surfaces
    # kinds never leak across: division names scan as AD, terms as GEO
    for seq in sequences:
        for it in seq.items:
            assert (it.kind == "AD") == (it.surface in DOC_FREQ)


def test_document_frequencies(sequences):
    _, doc_freq, total = count_pairs(sequences)
    assert total == TOTAL_SEQUENCES
    assert doc_freq == DOC_FREQ


def test_pair_counts(sequences):
    pair_counts, _, _ = count_pairs(sequences)
    for term, support in SUPPORT.items():
        for ad, count in support:
            assert pair_counts[(term, ad)] == count, (term, ad)
    # the rejected bank chain: two sequences in each of five cities
    for city in ("珠海市", "贵阳市", "海口市", "合肥市", "天津市"):
        assert pair_counts[("中国银行", city)] == 2


def test_store_entry_set(roi_store):
    assert set(roi_store.entries) == set(SUPPORT)
    assert len(roi_store) == 18
    for term in REJECTED:
        assert term not in roi_store.entries


def test_meta_stats(roi_store):
    assert roi_store.meta["stats"] == {
        "total_sequences": 137,
        "distinct_terms_scored": 22,
        "rejected_entropy": 4,
        "rejected_chain": 0,
        "entries": 18,
    }
    assert roi_store.meta["thresholds"]["entropy_cutoff"] == 1.0


def test_entry_paths(roi_store, gazetteer):
    for term, levels in PATHS.items():
        entry = roi_store.entries[term]
        assert entry.path.levels == levels, term
        assert gazetteer.validate_path(entry.path)
        assert all(
            (l is None) == (c is None) for l, c in zip(levels, entry.path.codes)
        )


def test_entry_supports_and_scores(roi_store):
    for term, support in SUPPORT.items():
        got = roi_store.entries[term].support
        assert [(p.ad_name, p.raw_count) for p in got] == support, term
        for p, (ad, count) in zip(got, support):
            if (term, ad) == ("颐和园", "海淀区"):
                continue  # reweighted, checked separately
            assert p.g == pytest.approx(_g(count, ad), rel=1e-12), (term, ad)


def test_parent_reweight_flips_yiheyuan(roi_store):
    """海淀区 starts at a quarter of 北京市's score; dividing by the designed
    recovery probability P = 2/8 lifts it past its parent."""
    support = roi_store.entries["颐和园"].support
    assert [p.ad_name for p in support] == ["海淀区", "北京市"]
    raw_child = _g(2, "海淀区")
    raw_parent = _g(8, "北京市")
    assert raw_child < raw_parent
    assert support[0].g == pytest.approx(raw_child / 0.25, rel=1e-12)
    assert support[1].g == pytest.approx(raw_parent, rel=1e-12)
    assert support[0].g > support[1].g


def test_entropies_match_valid_pair_distribution(sequences, roi_store):
    pair_counts, doc_freq, total = count_pairs(sequences)
    by_term: dict[str, list[float]] = {}
    for (term, ad), count in pair_counts.items():
        g = score_pair(count, doc_freq[ad], total)
        if g >= 1.0:
            by_term.setdefault(term, []).append(g)
    assert set(by_term) == set(SUPPORT) | set(REJECTED)  # 22 scored terms
    for term, entry in roi_store.entries.items():
        assert entry.entropy == pytest.approx(entropy(by_term[term]), abs=1e-12), term
    # dispersal of the rejected terms really is above the nat cutoff
    for term in REJECTED:
        assert entropy(by_term[term]) > 1.0, term


def test_entropy_spot_values(roi_store):
    spots = {
        "梧桐山": 0.9142,
        "成都双流国际机场": 0.9093,
        "泸沽湖": 0.5963,
        "颐和园": 0.5591,
        "胡杨林景区": 0.6511,
    }
    for term, expected in spots.items():
        assert roi_store.entries[term].entropy == pytest.approx(expected, abs=5e-4)
    for term, support in SUPPORT.items():
        if len(support) == 1:
            assert roi_store.entries[term].entropy == 0.0


def test_bank_chain_is_maximally_dispersed(sequences):
    # five cities, two sequences each: the score distribution is uniform and
    # its entropy is ln 5 up to float rounding — just over the 1-nat gate
    pair_counts, doc_freq, total = count_pairs(sequences)
    scores = [
        score_pair(count, doc_freq[ad], total)
        for (term, ad), count in pair_counts.items()
        if term == "中国银行"
    ]
    assert len(scores) == 5
    assert entropy(scores) == pytest.approx(math.log(5), abs=1e-12)
    assert entropy(scores) > 1.0


def test_store_matches_independent_miner(sequences, roi_store, gazetteer):
    want = brute_roi(sequences, gazetteer)
    assert set(want) == set(roi_store.entries)
    for term, (levels, support) in want.items():
        entry = roi_store.entries[term]
        assert entry.path.levels == levels
        assert [p.ad_name for p in entry.support] == [ad for ad, _ in support]
        for p, (_, g) in zip(entry.support, support):
            assert p.g == pytest.approx(g, rel=1e-12)


def test_query_cases_shape():
    assert len(QUERY_CASES) == 13
    ids = [c.doc_id for c in QUERY_CASES]
    assert len(set(ids)) == 13
    docs = query_documents()
    assert [d.doc_id for d in docs] == ids
    gold = gold_paths()
    assert set(gold) == set(ids)
    empties = {c.doc_id for c in QUERY_CASES if c.gold == (None, None, None)}
    assert empties == {"q-empty", "q-nohit"}

from __future__ import annotations

import random

import pytest

from locnorm.confidence import (
    collect_candidates,
    confidence,
    count_level,
    score_candidates,
)
from locnorm.gazetteer import AdPath
from locnorm.textscan import Document, Matcher, scan, split_sentences

from oracles import brute_confidence


def _scanned(text, gazetteer, matcher=None):
    matcher = matcher or Matcher(set(gazetteer.surfaces()))
    doc = Document("t", text)
    return [scan(s, matcher, gazetteer) for s in split_sentences(doc)]


def test_transitive_fill_from_single_deep_hit(gazetteer):
    result = confidence(_scanned("尉犁县的胡杨林很美。", gazetteer), gazetteer)
    assert result.levels == ("新疆", "巴音郭楞蒙古自治州", "尉犁县")
    assert result.codes == ("650000", "652800", "652823")


def test_truncation_to_deepest_direct_hit(gazetteer):
    # 深圳 confirms levels 1-2 of its expansion; level 3 stays open
    result = confidence(_scanned("周末去深圳。", gazetteer), gazetteer)
    assert result.levels == ("广东省", "深圳市", None)
    assert result.codes == ("440000", "440300", None)


def test_level_coverage_disambiguates_homonym(gazetteer):
    # 朝阳区 exists under two cities; co-mentioned 北京市 hits two more
    # levels of the Beijing expansion and none of the Changchun one
    result = confidence(_scanned("北京市的朝阳区吃烤鸭。", gazetteer), gazetteer)
    assert result.levels == ("北京市", "北京市", "朝阳区")


def test_homonym_alone_breaks_tie_by_code(gazetteer):
    result = confidence(_scanned("朝阳区吃烤鸭。", gazetteer), gazetteer)
    assert result.codes == ("110000", "110100", "110105")


def test_self_named_municipality_counts_two_levels(gazetteer):
    scanned = _scanned("天津市在渤海边。", gazetteer)
    (path,) = [p for p in collect_candidates(scanned, gazetteer) if p.depth == 2]
    assert path.levels == ("天津市", "天津市", None)
    assert count_level(scanned, path) == 2


def test_listing_sentence_is_discounted(gazetteer):
    scanned = _scanned("深圳市很好。广州市、深圳市、佛山市、珠海市都在广东省。", gazetteer)
    scores = {s.path.l2: s for s in score_candidates(scanned, collect_candidates(scanned, gazetteer))}
    # survivors are the four two-level city paths; the province-only path
    # covers fewer levels and is filtered out
    assert set(scores) == {"广州市", "深圳市", "佛山市", "珠海市"}
    # listing sentence: each city shares it with 3 strangers (+ the province
    # hit counts toward every survivor), so it adds 2/(1+3) at most
    assert scores["深圳市"].weight == pytest.approx(1.0 + 2 / 4)
    assert scores["广州市"].weight == pytest.approx(2 / 4)
    assert confidence(scanned, gazetteer).l2 == "深圳市"


def test_repeated_mentions_accumulate(gazetteer):
    one = confidence(_scanned("武汉市。", gazetteer), gazetteer)
    assert one.levels == ("湖北省", "武汉市", None)
    scanned = _scanned("武汉市很大。武汉市很热。襄阳市。", gazetteer)
    scores = {s.path.l2: s.weight for s in score_candidates(scanned, collect_candidates(scanned, gazetteer))}
    assert scores["武汉市"] == pytest.approx(2.0)
    assert scores["襄阳市"] == pytest.approx(1.0)


def test_alias_resolves_to_standard_name(gazetteer):
    result = confidence(_scanned("襄樊的古城。", gazetteer), gazetteer)
    assert result.levels == ("湖北省", "襄阳市", None)


def test_no_mention_returns_empty(gazetteer):
    assert confidence(_scanned("今天天气不错。", gazetteer), gazetteer) == AdPath.EMPTY
    assert confidence([], gazetteer) == AdPath.EMPTY


def test_score_candidates_rejects_empty(gazetteer):
    with pytest.raises(ValueError):
        score_candidates([], set())


def test_matches_independent_rescorer_on_random_documents(gazetteer):
    pieces = [
        "北京市", "朝阳区", "朝阳", "天津市", "和平区", "深圳", "盐田区",
        "广东省", "武汉市", "湖北", "谷城县", "襄阳市", "襄樊", "成都",
        "双流区", "龙泉驿", "新城区", "上海", "浦东新区",
        "的", "在", "去玩", "吃饭", "。", "，", "很好。",
    ]
    matcher = Matcher(set(gazetteer.surfaces()))
    rng = random.Random(20240816)
    for _ in range(60):
        text = "".join(rng.choice(pieces) for _ in range(rng.randint(1, 25)))
        scanned = _scanned(text, gazetteer, matcher)
        assert confidence(scanned, gazetteer) == brute_confidence(scanned, gazetteer), text

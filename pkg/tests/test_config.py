from __future__ import annotations

import json

import pytest

from locnorm.config import ENV_PREFIX, Config, load_config


def test_defaults():
    cfg = Config()
    assert cfg.embedding_dim == 100
    assert cfg.embedding_epochs == 5
    assert cfg.embedding_learning_rate == 0.025
    assert cfg.roi_entropy_cutoff == 1.0
    assert cfg.roi_magnitude_ratio == 0.1
    assert cfg.roi_top_k == 3
    assert cfg.window_sentences == 1
    assert cfg.min_sequence_len == 3
    assert cfg.inference_min_similarity is None
    assert cfg.seed == 42
    assert cfg.workers == 1


def test_file_overlay(tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"embedding_dim": 32, "roi_top_k": 5}), "utf-8")
    cfg = load_config(p)
    assert cfg.embedding_dim == 32
    assert cfg.roi_top_k == 5
    assert cfg.embedding_epochs == 5  # untouched default


def test_unknown_key_is_an_error(tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"embeding_dim": 32}), "utf-8")
    with pytest.raises(ValueError, match="unknown config keys: embeding_dim"):
        load_config(p)


def test_file_must_hold_an_object(tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text("[1, 2]", "utf-8")
    with pytest.raises(ValueError, match="JSON object"):
        load_config(p)


def test_env_overrides_file(tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"embedding_dim": 32}), "utf-8")
    env = {ENV_PREFIX + "EMBEDDING_DIM": "64", ENV_PREFIX + "SEED": "7"}
    cfg = load_config(p, env=env)
    assert cfg.embedding_dim == 64
    assert cfg.seed == 7


def test_env_values_are_coerced():
    env = {
        ENV_PREFIX + "EMBEDDING_LEARNING_RATE": "0.05",
        ENV_PREFIX + "WORKERS": "4",
        ENV_PREFIX + "HOST": "0.0.0.0",
        ENV_PREFIX + "INFERENCE_MIN_SIMILARITY": "0.25",
    }
    cfg = load_config(env=env)
    assert cfg.embedding_learning_rate == 0.05
    assert cfg.workers == 4
    assert cfg.host == "0.0.0.0"
    assert cfg.inference_min_similarity == 0.25


def test_min_similarity_none_spellings():
    assert load_config(env={ENV_PREFIX + "INFERENCE_MIN_SIMILARITY": "none"}).inference_min_similarity is None
    assert load_config(env={ENV_PREFIX + "INFERENCE_MIN_SIMILARITY": ""}).inference_min_similarity is None


def test_bool_is_not_an_int(tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"roi_top_k": True}), "utf-8")
    with pytest.raises(ValueError, match="boolean"):
        load_config(p)


@pytest.mark.parametrize(
    "field,bad",
    [
        ("sentence_delimiters", ""),
        ("window_sentences", 0),
        ("min_sequence_len", 1),
        ("embedding_dim", 0),
        ("embedding_epochs", 0),
        ("embedding_learning_rate", 0.0),
        ("embedding_learning_rate", -1.0),
        ("embedding_softmax_mode", "hierarchical"),
        ("embedding_negative_k", 0),
        ("roi_validity_min_score", -0.5),
        ("roi_entropy_cutoff", -0.1),
        ("roi_magnitude_ratio", 0.0),
        ("roi_magnitude_ratio", 1.5),
        ("roi_top_k", 0),
        ("port", -1),
        ("port", 65536),
        ("max_body_bytes", 0),
        ("workers", 0),
    ],
)
def test_validation_rejects(field, bad):
    with pytest.raises(ValueError):
        Config(**{field: bad})


def test_port_zero_means_os_assigned():
    assert Config(port=0).port == 0


def test_env_type_error_propagates():
    with pytest.raises(ValueError):
        load_config(env={ENV_PREFIX + "EMBEDDING_DIM": "many"})

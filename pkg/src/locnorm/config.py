"""Runtime configuration: defaults, JSON file overlay, environment overrides.

Precedence (lowest to highest): built-in defaults, a JSON config file, then
``LOCNORM_<FIELD>`` environment variables. Unknown keys in the file are an
error — silent typos in threshold names are worse than a crash.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass
from pathlib import Path

from .textscan import SENTENCE_DELIMITERS

ENV_PREFIX = "LOCNORM_"


@dataclass(slots=True)
class Config:
    # text scanning / sequence extraction
    sentence_delimiters: str = SENTENCE_DELIMITERS
    window_sentences: int = 1
    min_sequence_len: int = 3

    # embedding training
    embedding_dim: int = 100
    embedding_window: int = 5
    embedding_epochs: int = 5
    embedding_learning_rate: float = 0.025
    embedding_softmax_mode: str = "full"
    embedding_negative_k: int = 5

    # knowledge-base mining
    roi_validity_min_score: float = 1.0
    roi_entropy_cutoff: float = 1.0
    roi_magnitude_ratio: float = 0.1
    roi_top_k: int = 3

    # inference
    inference_min_similarity: float | None = None

    # serving
    host: str = "127.0.0.1"
    port: int = 8321
    max_body_bytes: int = 1_048_576

    # reproducibility / parallelism
    seed: int = 42
    workers: int = 1

    def __post_init__(self) -> None:
        if not self.sentence_delimiters:
            raise ValueError("sentence_delimiters must not be empty")
        for name in (
            "window_sentences",
            "embedding_dim",
            "embedding_window",
            "embedding_epochs",
            "embedding_negative_k",
            "roi_top_k",
            "max_body_bytes",
            "workers",
        ):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be ≥ 1")
        if not 0 <= self.port <= 65535:  # 0 = OS-assigned
            raise ValueError("port must be in [0, 65535]")
        if self.min_sequence_len < 2:
            raise ValueError("min_sequence_len must be ≥ 2")
        if self.embedding_learning_rate <= 0:
            raise ValueError("embedding_learning_rate must be positive")
        if self.embedding_softmax_mode not in ("full", "negative_sampling"):
            raise ValueError(
                "embedding_softmax_mode must be 'full' or 'negative_sampling'"
            )
        if self.roi_validity_min_score < 0 or self.roi_entropy_cutoff < 0:
            raise ValueError("knowledge-base thresholds must be non-negative")
        if not 0 < self.roi_magnitude_ratio <= 1:
            raise ValueError("roi_magnitude_ratio must be in (0, 1]")


_FIELDS = {f.name: f for f in dataclasses.fields(Config)}


def _coerce(name: str, raw: object) -> object:
    """Coerce a JSON/env value to the field's declared type."""
    field = _FIELDS[name]
    if name == "inference_min_similarity":
        if raw is None or raw == "" or raw == "none":
            return None
        return float(raw)  # type: ignore[arg-type]
    if field.type in ("int", int):
        if isinstance(raw, bool):
            raise ValueError(f"{name}: expected an integer, got a boolean")
        return int(raw)  # type: ignore[arg-type]
    if field.type in ("float", float):
        return float(raw)  # type: ignore[arg-type]
    return str(raw)


def load_config(path: str | Path | None = None, *, env: dict | None = None) -> Config:
    """Build a Config from defaults + optional JSON file + env overrides."""
    values: dict[str, object] = {}
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict):
            raise ValueError(f"{path}: config file must hold a JSON object")
        unknown = sorted(set(raw) - set(_FIELDS))
        if unknown:
            raise ValueError(f"{path}: unknown config keys: {', '.join(unknown)}")
        for key, val in raw.items():
            values[key] = _coerce(key, val)

    environ = os.environ if env is None else env
    for name in _FIELDS:
        env_key = ENV_PREFIX + name.upper()
        if env_key in environ:
            values[name] = _coerce(name, environ[env_key])

    return Config(**values)  # type: ignore[arg-type]

from __future__ import annotations

import pytest

from locnorm.config import Config
from locnorm.embeddings import load_embeddings
from locnorm.fixtures import build_all, default_gazetteer_path
from locnorm.gazetteer import load_gazetteer
from locnorm.pipeline import Artifacts, load_artifacts
from locnorm.roi import load_roi
from locnorm.sequences import load_sequences


@pytest.fixture(scope="session")
def gazetteer():
    return load_gazetteer(default_gazetteer_path())


@pytest.fixture(scope="session")
def fixture_paths(tmp_path_factory):
    """All bundled demo artifacts, built once per test session."""
    out = tmp_path_factory.mktemp("demo-artifacts")
    return build_all(out)


@pytest.fixture(scope="session")
def sequences(fixture_paths):
    return load_sequences(fixture_paths["sequences"])


@pytest.fixture(scope="session")
def roi_store(fixture_paths):
    return load_roi(fixture_paths["roi"])


@pytest.fixture(scope="session")
def embedding_table(fixture_paths):
    return load_embeddings(fixture_paths["embeddings"])


@pytest.fixture(scope="session")
def artifacts(fixture_paths) -> Artifacts:
    return load_artifacts(
        default_gazetteer_path(),
        embeddings_path=fixture_paths["embeddings"],
        roi_path=fixture_paths["roi"],
    )


@pytest.fixture(scope="session")
def options() -> Config:
    return Config()

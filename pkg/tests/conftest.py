"""Shared fixtures: a hand-sized model and a generated demo corpus."""

from __future__ import annotations

import pytest

from sibyl.dataio import generate_demo_corpus
from sibyl.explain import ReferenceStats
from sibyl.model import CaseRecord, Model
from sibyl.service import DataPaths, build_state


@pytest.fixture
def tiny_model():
    return Model(
        intercept=0.1,
        weights={"A": 0.5, "B": -0.2, "C": 0.3},
        outcome_name="removal",
    )


@pytest.fixture
def tiny_stats():
    return ReferenceStats(
        means={"A": 2.0, "B": 1.0, "C": 0.5},
        stds={"A": 1.0, "B": 1.0, "C": 0.5},
        count=10,
    )


@pytest.fixture
def tiny_case():
    return CaseRecord(id="t1", values={"A": 3.0, "B": 1.0, "C": 1.0})


@pytest.fixture(scope="session")
def demo_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("demo") / "corpus"
    generate_demo_corpus(120, 12, 7, out)
    return out


@pytest.fixture(scope="session")
def demo_paths(demo_dir):
    return DataPaths.in_dir(demo_dir)


@pytest.fixture(scope="session")
def demo_state(demo_paths):
    return build_state(demo_paths, review_mode=False)


@pytest.fixture(scope="session")
def review_state(demo_paths):
    return build_state(demo_paths, review_mode=True)

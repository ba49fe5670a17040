"""Shared fixtures: the five-attribute interview example used throughout.

Four people answered all five questions (the training table); two more are
interviewed with prediction switched on (the test table).  Income's domain
has three labels, every other attribute two, so the label strings are the
digit form of the value indices.
"""

import numpy as np
import pytest

from fpqm import Attribute, BuildConfig, Dataset, build

NAMES = ("Education", "Income", "Social Skills", "Work Ability", "Communication")
DOMAINS = (("0", "1"), ("0", "1", "2"), ("0", "1"), ("0", "1"), ("0", "1"))
TRAIN_ROWS = [
    [0, 1, 0, 1, 1],
    [1, 2, 0, 0, 1],
    [1, 0, 1, 0, 1],
    [1, 0, 1, 1, 0],
]
TEST_ROWS = [
    [1, 1, 0, 1, 0],
    [1, 0, 1, 1, 0],
]


def example_schema() -> tuple[Attribute, ...]:
    return tuple(
        Attribute(name=n, domain=d, index=i)
        for i, (n, d) in enumerate(zip(NAMES, DOMAINS))
    )


def csv_text(rows) -> str:
    lines = [",".join(NAMES)]
    for row in rows:
        lines.append(",".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


@pytest.fixture(scope="session")
def schema():
    return example_schema()


@pytest.fixture(scope="session")
def train_ds(schema):
    return Dataset(schema, np.array(TRAIN_ROWS))


@pytest.fixture(scope="session")
def test_ds(schema):
    return Dataset(schema, np.array(TEST_ROWS))


@pytest.fixture(scope="session")
def linear_model(train_ds):
    return build(train_ds, BuildConfig(aggregation_mode="linear"))


@pytest.fixture(scope="session")
def squared_model(train_ds):
    return build(train_ds, BuildConfig(aggregation_mode="squared"))


@pytest.fixture
def train_csv(tmp_path):
    path = tmp_path / "train.csv"
    path.write_text(csv_text(TRAIN_ROWS), encoding="utf-8")
    return path


@pytest.fixture
def test_csv(tmp_path):
    path = tmp_path / "test.csv"
    path.write_text(csv_text(TEST_ROWS), encoding="utf-8")
    return path

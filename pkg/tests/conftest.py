import os
from typing import IO, Iterator

import pytest

from dissect.winratio.comparator import OutcomeHierarchy, parse_hierarchy
from dissect.winratio.core import PairCounts


def absolute_path(filename: str) -> str:
    return os.path.join(os.path.dirname(__file__), filename)


def open_file(name: str, mode: str = "r") -> Iterator[IO]:
    with open(absolute_path(name), mode, newline="") as f:
        yield f


@pytest.fixture
def hierarchy_path() -> str:
    return absolute_path("data/hierarchy.cfg")


@pytest.fixture
def hierarchy(hierarchy_path: str) -> OutcomeHierarchy:
    return parse_hierarchy(hierarchy_path)


@pytest.fixture
def pairs_path() -> str:
    return absolute_path("data/pairs.csv")


@pytest.fixture
def pairs_fh() -> Iterator[IO]:
    yield from open_file("data/pairs.csv")


@pytest.fixture
def pairs_missing_path() -> str:
    return absolute_path("data/pairs_missing.csv")


@pytest.fixture
def pairs_empty_path() -> str:
    return absolute_path("data/pairs_empty.csv")


@pytest.fixture
def pairs_bad_path() -> str:
    return absolute_path("data/pairs_bad.csv")


@pytest.fixture
def small_grid_path() -> str:
    return absolute_path("data/small.grid")


@pytest.fixture
def emphasis() -> PairCounts:
    return PairCounts(249, 151, 964)


@pytest.fixture
def charm() -> PairCounts:
    return PairCounts(421, 324, 527)

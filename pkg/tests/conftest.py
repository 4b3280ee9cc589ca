"""Shared corpora for the unit and acceptance suites.

The exhaustive corpora are session-scoped: enumerating all union-closed
families at d=4 takes a few seconds and several criteria share it.
"""

from __future__ import annotations

import pytest

from biasedcube.explore import enumerate_families
from biasedcube.verify import weight_corpus


@pytest.fixture(scope="session")
def uc_corpus():
    """d -> list of union-closed families, ascending table order."""

    cache: dict[int, list] = {}

    def get(d: int):
        if d not in cache:
            cache[d] = list(enumerate_families(d, filters=("union-closed",)))
        return cache[d]

    return get


@pytest.fixture(scope="session")
def interior_weights():
    """d -> the 20-vector interior weight corpus used by the exhaustive runs."""

    cache: dict[int, list] = {}

    def get(d: int, count: int = 20):
        key = (d, count)
        if key not in cache:
            cache[key] = weight_corpus(d, count, seed=20260815)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def half_open_weights():
    """d -> the 25-vector corpus with every weight in [1/2, 1)."""

    cache: dict[int, list] = {}

    def get(d: int, count: int = 25):
        key = (d, count)
        if key not in cache:
            cache[key] = weight_corpus(d, count, seed=31337, at_least_half=True)
        return cache[key]

    return get

"""Shared fixtures: BFS distance tables are expensive, build each once."""

import pytest

from wcdcube import build_distance_table


@pytest.fixture(scope="session")
def table3():
    return build_distance_table(3)


@pytest.fixture(scope="session")
def table4():
    return build_distance_table(4)


@pytest.fixture(scope="session")
def table5():
    return build_distance_table(5)


@pytest.fixture(scope="session")
def table6():
    return build_distance_table(6)

from __future__ import annotations

import pytest

from minmaxdelay import build_instance
from minmaxdelay.gadgets import building_block, gap_composite, partition_gadget, property_corpus


def single_edge(capacity=5, delay=2, rate=1):
    return build_instance(["s", "t"], [("e", "s", "t", capacity, delay)], "s", "t", rate)


@pytest.fixture
def edge_instance():
    return single_edge()


@pytest.fixture
def block3():
    return building_block(3)


@pytest.fixture
def block5():
    return building_block(5)


@pytest.fixture
def partition312():
    instance, b = partition_gadget([3, 1, 2])
    return instance


@pytest.fixture
def composite5():
    return gap_composite(5)


@pytest.fixture(scope="session")
def corpus():
    return property_corpus(50)

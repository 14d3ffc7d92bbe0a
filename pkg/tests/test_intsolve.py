from __future__ import annotations

from fractions import Fraction

import pytest

from minmaxdelay import build_instance
from minmaxdelay.errors import InfeasibleError, ResourceError
from minmaxdelay.gadgets import building_block, gap_composite, random_instance, three_partition_gadget
from minmaxdelay.intsolve import int_gap, int_min_max_delay
from minmaxdelay.model import check_flow, max_delay
from minmaxdelay.oracle import oracle_int_min_max_delay
from conftest import single_edge


@pytest.mark.parametrize("n, expected", [(3, 1), (5, 2)])
def test_block(n, expected):
    result = int_min_max_delay(building_block(n), 2)
    assert result.optimal_value == expected
    assert max_delay(building_block(n), result.flow) == expected
    assert all(r.denominator == 1 for _, r in result.flow.entries)


def test_composite5(composite5):
    result = int_gap(composite5)
    assert (result.fractional_value, result.optimal_value, result.gap) == (1, 2, 2)
    assert check_flow(composite5, result.flow, 4) == []


def test_composite7_gap():
    assert int_gap(gap_composite(7)).gap == 3


def test_single_edge_gap():
    assert int_gap(single_edge(capacity=2, delay=3, rate=1)).gap == 1


def test_gap_with_zero_fractional_optimum():
    inst = build_instance(["s", "t"], [("a", "s", "t", 1, 0), ("b", "s", "t", 1, 0)], "s", "t", 2)
    assert int_gap(inst).gap == 1


def test_three_partition_yes():
    instance, b = three_partition_gadget([5, 5, 6, 6, 7, 7])
    assert int_min_max_delay(instance).optimal_value == b == 18


def test_fractional_rate_rejected(block5):
    with pytest.raises(ValueError):
        int_min_max_delay(block5, Fraction(4, 3))


def test_infeasible():
    result = int_min_max_delay(single_edge(capacity=1, delay=1, rate=2))
    assert not result.feasible
    with pytest.raises(InfeasibleError):
        int_gap(single_edge(capacity=1, delay=1, rate=2))


def test_node_budget():
    with pytest.raises(ResourceError):
        int_min_max_delay(gap_composite(9), node_budget=5)


def test_path_budget():
    with pytest.raises(ResourceError):
        int_min_max_delay(building_block(9), 2, path_budget=10)


def test_probes_are_monotone(block5):
    result = int_min_max_delay(block5, 2)
    for (d1, ok1) in result.probes:
        for (d2, ok2) in result.probes:
            if d1 <= d2 and ok1:
                assert ok2


@pytest.mark.parametrize("seed", range(25))
def test_matches_exhaustive_oracle(seed):
    inst = random_instance(seed, 4 + seed % 4, 8 + seed % 4, 3, 4, 3)
    try:
        expected = oracle_int_min_max_delay(inst)
    except ResourceError:
        pytest.skip("too many paths for the exhaustive oracle")
    result = int_min_max_delay(inst)
    assert result.optimal_value == expected
    if result.feasible:
        assert check_flow(inst, result.flow, inst.rate) == []
        assert max_delay(inst, result.flow) == expected



def test_zero_delay_optimum_is_integral():
    # The zero-delay subgraph has an integral max flow, so a zero fractional
    # optimum at integer R is always matched by an integer flow.
    inst = build_instance(["s", "a", "t"],
                          [("sa0", "s", "a", 1, 0), ("sa1", "s", "a", 1, 0), ("at", "a", "t", 2, 0)],
                          "s", "t", 2)
    result = int_gap(inst)
    assert (result.fractional_value, result.optimal_value, result.gap) == (0, 0, 1)

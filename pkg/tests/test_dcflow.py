from __future__ import annotations

from fractions import Fraction

import pytest

from minmaxdelay import build_instance
from minmaxdelay.dcflow import dc_max_flow, decompose, level_flow_of
from minmaxdelay.errors import FlowError, InstanceError
from minmaxdelay.expansion import expand
from minmaxdelay.model import check_flow, path_delay
from minmaxdelay.oracle import oracle_dc_max_flow
from conftest import single_edge


@pytest.mark.parametrize("T, value", [(0, 0), (1, 0), (2, 5), (9, 5)])
def test_single_edge_threshold(T, value):
    assert dc_max_flow(single_edge(capacity=5, delay=2), T).value == value


@pytest.mark.parametrize("T, value", [(0, 1), (1, 2), (2, 2)])
def test_block3(block3, T, value):
    result = dc_max_flow(block3, T)
    assert result.value == value == oracle_dc_max_flow(block3, T)


@pytest.mark.parametrize("T, value", [(2, 1), (3, 2)])
def test_partition_gadget(partition312, T, value):
    assert dc_max_flow(partition312, T).value == value == oracle_dc_max_flow(partition312, T)


def test_block3_decomposition(block3):
    flow = dc_max_flow(block3, 1).path_flow
    assert flow.total_rate == 2
    assert all(path_delay(block3, p) <= 1 for p in flow.paths)
    assert check_flow(block3, flow, 2) == []


def test_witness_level_flow_matches_paths(block5):
    result = dc_max_flow(block5, 1)
    assert result.value == Fraction(4, 3)
    assert level_flow_of(block5, result.path_flow, result.problem.variables) == result.edge_level_flow


def test_decompose_single_chain():
    inst = build_instance(["s", "v", "t"], [("sv", "s", "v", 3, 1), ("vt", "v", "t", 2, 1)], "s", "t", 1)
    problem = expand(inst, 2)
    flow = decompose(problem, {("sv", 1): Fraction(2), ("vt", 2): Fraction(2)})
    assert flow.entries == ((("sv", "vt"), Fraction(2)),)


def test_decompose_zero_flow(block3):
    problem = expand(block3, 2)
    assert not decompose(problem, {key: Fraction(0) for key in problem.variables})


def test_decompose_rejects_unbalanced():
    inst = build_instance(["s", "v", "t"], [("sv", "s", "v", 3, 1), ("vt", "v", "t", 2, 1)], "s", "t", 1)
    problem = expand(inst, 2)
    with pytest.raises(FlowError):
        decompose(problem, {("sv", 1): Fraction(2), ("vt", 2): Fraction(1)})


def test_walks_are_shortcut_to_simple_paths():
    # s -> a -> b -> a -> t is a positive-delay walk; a path decomposition must not keep the loop.
    inst = build_instance(["s", "a", "b", "t"],
                          [("sa", "s", "a", 1, 0), ("ab", "a", "b", 1, 1), ("ba", "b", "a", 1, 1),
                           ("at", "a", "t", 1, 0)], "s", "t", 1)
    problem = expand(inst, 2)
    flow = decompose(problem, {("sa", 0): Fraction(1), ("ab", 1): Fraction(1), ("ba", 2): Fraction(1),
                               ("at", 2): Fraction(1)})
    assert flow.entries == ((("sa", "at"), Fraction(1)),)


def test_invalid_instance_rejected():
    with pytest.raises(InstanceError):
        dc_max_flow(single_edge(capacity=1, delay=-1), 3)

"""Exact integer min-max-delay by exhaustive search, and the integrality gap.

The candidate optima are the distinct simple-path delays.  For a candidate
D we ask whether R integer units fit on paths of delay <= D:

1. the fractional relaxation r*(D) must already reach R;
2. the graph minus {s, t} splits into components that share no capacity,
   so each component's best integer rate is found separately
   (``search_max_rate``) and the rates add up.

The feasibility answers are monotone in D, so D is binary-searched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from .dcflow import dc_max_flow
from .errors import FlowError, InfeasibleError, ResourceError
from .minmax import min_max_delay, trim_to_rate
from .model import GraphInstance, PathFlow, require_valid

NODE_BUDGET = 10_000_000
PATH_BUDGET = 10_000


@dataclass
class IntSolveResult:
    optimal_value: int | None
    flow: PathFlow = field(default_factory=PathFlow)
    gap: Fraction | float | None = None
    fractional_value: int | None = None
    search_nodes: int = 0
    probes: list = field(default_factory=list)  # (D, feasible) in probe order

    @property
    def feasible(self) -> bool:
        return self.optimal_value is not None


class _Arrays:
    """int64 views of an instance for the kernels."""

    def __init__(self, instance: GraphInstance):
        self.instance = instance
        self.node_index = {v: i for i, v in enumerate(instance.nodes)}
        self.edge_ids = [e.id for e in instance.edges]
        ni = self.node_index
        self.tail = np.array([ni[e.tail] for e in instance.edges], np.int64)
        self.head = np.array([ni[e.head] for e in instance.edges], np.int64)
        self.delay = np.array([e.delay for e in instance.edges], np.int64)
        self.capacity = np.array([e.capacity for e in instance.edges], np.int64)
        self.s = ni[instance.source]
        self.t = ni[instance.sink]
        n = len(instance.nodes)
        order = np.argsort(self.tail, kind="stable")
        self.adj_edge = order.astype(np.int64)
        self.adj_head = self.head[order]
        self.indptr = np.zeros(n + 1, np.int64)
        np.add.at(self.indptr, self.tail + 1, 1)
        self.indptr = np.cumsum(self.indptr).astype(np.int64)

    def paths(self, budget: int):
        ptr, edges, delays, status = _kernels.enumerate_paths_csr(
            self.indptr, self.adj_edge, self.adj_head, self.delay,
            self.s, self.t, len(self.node_index), budget)
        if status != _kernels.STATUS_OK:
            raise ResourceError(f"more than {budget} simple paths")
        return [(tuple(int(x) for x in edges[ptr[i]:ptr[i + 1]]), int(delays[i])) for i in range(len(delays))]

    def components(self) -> np.ndarray:
        """Component label per edge for the graph without s and t; -1 for unusable edges."""
        parent = list(range(len(self.node_index)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        s, t = self.s, self.t
        for u, w in zip(self.tail, self.head):
            if s in (u, w) or t in (u, w):
                continue
            parent[find(u)] = find(w)
        labels = np.full(len(self.tail), -1, np.int64)
        direct = len(self.node_index)
        for i, (u, w) in enumerate(zip(self.tail, self.head)):
            if w == s or u == t:
                continue
            if u == s and w == t:
                labels[i] = direct + i
            elif u == s:
                labels[i] = find(w)
            else:
                labels[i] = find(u)
        return labels


def _require_integer_rate(rate) -> int:
    rate = Fraction(rate)
    if rate.denominator != 1:
        raise ValueError(f"integer min-max-delay needs an integer rate, got {rate}")
    return int(rate)


def int_feasible(arrays: _Arrays, paths: list, labels: np.ndarray, D: int, R: int,
                 node_budget: int) -> tuple:
    """Route R integer units on paths of delay <= D if possible.

    Returns ``(witness counts by path or None, search nodes used)``.
    """
    groups: dict = {}
    for idx, (edges, delay) in enumerate(paths):
        if delay <= D:
            groups.setdefault(int(labels[edges[0]]), []).append(idx)
    total = 0
    used = 0
    witness: dict = {}
    for label in sorted(groups):
        members = groups[label]
        # Longest eligible paths first: they are the ones the delay bound rules out early.
        members.sort(key=lambda i: (-paths[i][1], paths[i][0]))
        ptr = np.zeros(len(members) + 1, np.int64)
        flat = []
        for k, i in enumerate(members):
            flat.extend(paths[i][0])
            ptr[k + 1] = len(flat)
        mask = np.zeros(len(arrays.capacity), np.bool_)
        mask[np.array(flat, np.int64)] = True
        resid = np.where(mask, arrays.capacity, 0).astype(np.int64)
        best, counts, nodes, status = _kernels.search_max_rate(
            ptr, np.array(flat, np.int64), resid, arrays.tail, arrays.head, arrays.delay,
            len(arrays.node_index), arrays.s, arrays.t, D, R - total, node_budget - used)
        used += int(nodes)
        if status != _kernels.STATUS_OK:
            raise ResourceError(f"integer search exceeded {node_budget} nodes at D={D}")
        total += int(best)
        for k, c in enumerate(counts):
            if c:
                witness[members[k]] = int(c)
        if total >= R:
            return witness, used
    return None, used


def int_min_max_delay(instance: GraphInstance, rate=None, node_budget: int = NODE_BUDGET,
                      path_budget: int = PATH_BUDGET) -> IntSolveResult:
    """Minimum over integer path flows of rate R of the largest flow-carrying path delay."""
    require_valid(instance)
    if rate is not None:
        instance = instance.with_rate(rate)
    R = _require_integer_rate(instance.rate)
    arrays = _Arrays(instance)
    paths = arrays.paths(path_budget)
    labels = arrays.components()
    candidates = sorted({d for _, d in paths})
    result = IntSolveResult(optimal_value=None)
    cache: dict = {}

    def probe(D):
        if D in cache:
            return cache[D]
        if dc_max_flow(instance, D, validate=False).value < R:
            found = None
        else:
            found, nodes = int_feasible(arrays, paths, labels, D, R, node_budget - result.search_nodes)
            result.search_nodes += nodes
        result.probes.append((D, found is not None))
        cache[D] = found
        return found

    if not candidates or probe(candidates[-1]) is None:
        return result
    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if probe(candidates[mid]) is not None:
            hi = mid
        else:
            lo = mid + 1
    witness = probe(candidates[hi])
    flow = PathFlow(tuple(
        (tuple(arrays.edge_ids[e] for e in paths[i][0]), Fraction(c)) for i, c in witness.items()))
    flow = _trim_integer(instance, flow, R)
    result.optimal_value = candidates[hi]
    result.flow = flow
    return result


def _trim_integer(instance: GraphInstance, flow: PathFlow, R: int) -> PathFlow:
    trimmed = trim_to_rate(instance, flow, R)
    if any(r.denominator != 1 for _, r in trimmed.entries):
        raise FlowError("integer witness lost integrality")
    return trimmed


def int_gap(instance: GraphInstance, rate=None, node_budget: int = NODE_BUDGET) -> IntSolveResult:
    """Integer optimum together with its ratio to the fractional optimum.

    ``gap`` is a Fraction, ``math.inf`` when only the fractional optimum is
    zero, and 1 when both are zero.
    """
    frac = min_max_delay(instance, rate)
    if not frac.solved:
        raise InfeasibleError(f"rate not routable (max flow {frac.max_flow})")
    result = int_min_max_delay(instance, rate, node_budget=node_budget)
    if not result.feasible:
        raise InfeasibleError("no integer flow reaches the rate")
    fractional, integral = frac.optimal_value, result.optimal_value
    if fractional == 0:
        result.gap = math.inf if integral > 0 else Fraction(1)
    else:
        result.gap = Fraction(integral, fractional)
    result.fractional_value = fractional
    return result

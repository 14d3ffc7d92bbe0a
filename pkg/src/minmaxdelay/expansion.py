"""Delay-indexed (time-expanded) LP for the delay-constrained max-flow problem.

Variable ``f[e@d]`` is the rate that has accumulated delay ``d`` on leaving
edge ``e``.  Conservation is written per (node, delay level) pair, and the
capacity of an original edge is shared by all of its levels.

Only variables that can carry flow are created: a forward pass from
``(s, 0)`` finds the reachable (node, level) states, and a backward
shortest-delay bound drops states from which the sink cannot be reached by
level ``T``.  Edges entering the source or leaving the sink are never
created since no simple s-t path uses them.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .lp import EQ, LE, LinearProgram, LpSolution
from .model import GraphInstance


@dataclass
class ExpandedProblem:
    instance: GraphInstance
    delay_bound: int
    variables: dict = field(default_factory=dict)  # (edge id, level) -> var name
    reverse_map: dict = field(default_factory=dict)  # var name -> (edge id, level)
    lp: LinearProgram = field(default_factory=LinearProgram)

    @property
    def conservation_rows(self) -> int:
        return sum(1 for c in self.lp.constraints if c.name and c.name.startswith("cons["))


def var_name(edge_id: str, level: int) -> str:
    return f"f[{edge_id}@{level}]"


def usable_edges(instance: GraphInstance) -> list:
    s, t = instance.source, instance.sink
    return [e for e in instance.edges if e.head != s and e.tail != t]


def distance_to_sink(instance: GraphInstance, edges=None) -> dict:
    """Smallest path delay from each node to the sink (Dijkstra on reversed edges)."""
    edges = usable_edges(instance) if edges is None else edges
    rev = defaultdict(list)
    for e in edges:
        rev[e.head].append(e)
    dist = {instance.sink: 0}
    heap = [(0, instance.sink)]
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist.get(v, d):
            continue
        for e in rev[v]:
            nd = d + e.delay
            if nd < dist.get(e.tail, nd + 1):
                dist[e.tail] = nd
                heapq.heappush(heap, (nd, e.tail))
    return dist


def reachable_variables(instance: GraphInstance, T: int) -> list:
    """(edge, exit level) pairs lying on some expanded s-t path within level T."""
    s, t = instance.source, instance.sink
    edges = usable_edges(instance)
    out = defaultdict(list)
    for e in edges:
        out[e.tail].append(e)
    dist = distance_to_sink(instance, edges)
    inf = T + 1

    pending = defaultdict(set)
    pending[0].add(s)
    found = set()
    for level in range(T + 1):
        frontier = list(pending.pop(level, ()))
        seen = set(frontier)
        while frontier:
            v = frontier.pop()
            for e in out[v]:
                exit_level = level + e.delay
                if exit_level > T or exit_level + dist.get(e.head, inf) > T:
                    continue
                found.add((e.id, exit_level))
                if e.head == t:
                    continue
                if e.delay == 0:
                    if e.head not in seen:
                        seen.add(e.head)
                        frontier.append(e.head)
                else:
                    pending[exit_level].add(e.head)
    order = {e.id: i for i, e in enumerate(instance.edges)}
    return sorted(found, key=lambda key: (order[key[0]], key[1]))


def expand(instance: GraphInstance, T: int) -> ExpandedProblem:
    """Build the delay-indexed LP for delay bound ``T``."""
    if T < 0:
        raise ValueError("delay bound must be non-negative")
    s, t = instance.source, instance.sink
    edge = instance.edge_by_id
    problem = ExpandedProblem(instance, T)
    lp = problem.lp

    for eid, level in reachable_variables(instance, T):
        name = var_name(eid, level)
        problem.variables[(eid, level)] = name
        problem.reverse_map[name] = (eid, level)
        lp.add_variable(name, cost=1 if edge[eid].head == t else 0)

    by_edge = defaultdict(list)
    inflow = defaultdict(list)  # (node, level) -> var names entering
    outflow = defaultdict(list)  # (node, level) -> var names leaving
    for (eid, level), name in problem.variables.items():
        e = edge[eid]
        by_edge[eid].append(name)
        inflow[(e.head, level)].append(name)
        outflow[(e.tail, level - e.delay)].append(name)

    balance = defaultdict(Fraction)
    for name in outflow.get((s, 0), ()):
        balance[name] += 1
    for name in lp.objective:
        balance[name] -= 1
    lp.add_constraint(balance, EQ, 0, name="rate_balance")

    node_order = {v: i for i, v in enumerate(instance.nodes)}
    states = sorted(
        {key for key in list(inflow) + list(outflow) if key[0] not in (s, t)},
        key=lambda key: (key[1], node_order[key[0]]),
    )
    for node, level in states:
        row = defaultdict(Fraction)
        for name in inflow.get((node, level), ()):
            row[name] += 1
        for name in outflow.get((node, level), ()):
            row[name] -= 1
        lp.add_constraint(row, EQ, 0, name=f"cons[{node}@{level}]")

    for e in instance.edges:
        if by_edge.get(e.id):
            lp.add_constraint({n: 1 for n in by_edge[e.id]}, LE, e.capacity, name=f"cap[{e.id}]")
    return problem


def extract_edge_flow(problem: ExpandedProblem, solution: LpSolution) -> dict:
    """Map every ``(edge id, level)`` variable to its exact value."""
    return {key: solution.values.get(name, Fraction(0)) for key, name in problem.variables.items()}

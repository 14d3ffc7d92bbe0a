"""Delay-constrained max flow r*(T) and path decomposition of expanded flows."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import FlowError
from .expansion import ExpandedProblem, expand, extract_edge_flow
from .lp import OPTIMAL, solve_lp
from .model import GraphInstance, PathFlow, require_valid


@dataclass
class DcMaxFlowResult:
    T: int
    value: Fraction
    edge_level_flow: dict = field(default_factory=dict)
    path_flow: PathFlow = field(default_factory=PathFlow)
    problem: ExpandedProblem | None = None


def _drop_cycles(instance: GraphInstance, edge_ids: list) -> tuple:
    """Shortcut repeated nodes out of an s-t walk, leaving a simple path."""
    edge = instance.edge_by_id
    kept: list = []
    position = {instance.source: 0}
    for eid in edge_ids:
        head = edge[eid].head
        if head in position:
            cut = position[head]
            for dropped in kept[cut:]:
                del position[edge[dropped].head]
            del kept[cut:]
        else:
            kept.append(eid)
            position[head] = len(kept)
    return tuple(kept)


def decompose(problem: ExpandedProblem, edge_level_flow: dict) -> PathFlow:
    """Split a feasible expanded flow into source-sink paths.

    Paths are traced from ``(s, 0)`` by always following the leaving variable
    with the largest remaining flow (ties: instance edge order, then level),
    and the bottleneck is peeled off.  Walks that revisit a node are
    shortcut to simple paths, which only lowers their delay.
    """
    instance = problem.instance
    s, t = instance.source, instance.sink
    edge = instance.edge_by_id
    order = {e.id: i for i, e in enumerate(instance.edges)}

    residual = {key: Fraction(v) for key, v in edge_level_flow.items() if v}
    if any(v < 0 for v in residual.values()):
        raise FlowError("not a feasible expanded flow: negative variable")
    leaving = defaultdict(list)
    for eid, level in residual:
        e = edge[eid]
        leaving[(e.tail, level - e.delay)].append((eid, level))
    for arcs in leaving.values():
        arcs.sort(key=lambda key: (order[key[0]], key[1]))

    def heaviest(state):
        best, best_val = None, Fraction(0)
        for key in leaving.get(state, ()):
            val = residual.get(key, 0)
            if val > best_val:
                best, best_val = key, val
        return best

    entries = []
    while True:
        step = heaviest((s, 0))
        if step is None:
            break
        steps = [step]
        while edge[step[0]].head != t:
            step = heaviest((edge[step[0]].head, step[1]))
            if step is None:
                raise FlowError("not a feasible expanded flow: conservation violated")
            steps.append(step)
        amount = min(residual[key] for key in steps)
        for key in steps:
            residual[key] -= amount
            if not residual[key]:
                del residual[key]
        entries.append((_drop_cycles(instance, [eid for eid, _ in steps]), amount))
    if residual:
        raise FlowError("not a feasible expanded flow: flow not reachable from the source")
    return PathFlow(tuple(entries))


def level_flow_of(instance: GraphInstance, flow: PathFlow, keys=()) -> dict:
    """Expanded (edge, exit level) flow induced by a path flow."""
    edge = instance.edge_by_id
    out = {key: Fraction(0) for key in keys}
    for path, rate in flow.entries:
        level = 0
        for eid in path:
            level += edge[eid].delay
            out[(eid, level)] = out.get((eid, level), Fraction(0)) + rate
    return out


def dc_max_flow(instance: GraphInstance, T: int, validate: bool = True) -> DcMaxFlowResult:
    """Maximum rate routable with every flow-carrying path delay <= T."""
    if validate:
        require_valid(instance)
    problem = expand(instance, T)
    solution = solve_lp(problem.lp)
    if solution.status != OPTIMAL:
        raise RuntimeError(f"expanded LP unexpectedly {solution.status}")
    flow = decompose(problem, extract_edge_flow(problem, solution))
    if flow.total_rate != solution.objective_value:
        raise FlowError("decomposition lost flow")
    return DcMaxFlowResult(
        T=T,
        value=solution.objective_value,
        edge_level_flow=level_flow_of(instance, flow, problem.variables),
        path_flow=flow,
        problem=problem,
    )

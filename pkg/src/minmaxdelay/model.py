"""Graph instances, path flows and their exact-arithmetic bookkeeping.

All flow quantities are :class:`fractions.Fraction`; capacities and delays are
plain ints.  Paths are tuples of edge ids so that parallel edges stay
distinguishable.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import FlowError, InstanceError, InstanceParseError, PathError

Rational = Fraction
Path = tuple  # tuple[str, ...] of edge ids


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: they would smuggle rounding into the exact pipeline.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact rational value {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise ValueError(f"not a rational literal: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    capacity: int
    delay: int


@dataclass(frozen=True)
class GraphInstance:
    """Directed graph with integer capacities and delays plus a routing request."""

    nodes: tuple
    edges: tuple
    source: str
    sink: str
    rate: Fraction

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "rate", Fraction(self.rate))

    @cached_property
    def edge_by_id(self) -> dict:
        return {e.id: e for e in self.edges}

    @cached_property
    def out_edges(self) -> dict:
        out = {v: [] for v in self.nodes}
        for e in self.edges:
            out.setdefault(e.tail, []).append(e)
        return out

    @cached_property
    def in_edges(self) -> dict:
        inc = {v: [] for v in self.nodes}
        for e in self.edges:
            inc.setdefault(e.head, []).append(e)
        return inc

    @property
    def max_delay(self) -> int:
        return max((e.delay for e in self.edges), default=0)

    @property
    def size(self) -> int:
        """max(|V|, |E|)."""
        return max(len(self.nodes), len(self.edges))

    @property
    def delay_horizon(self) -> int:
        """|E| * d_max, an upper bound on the delay of any simple path."""
        return len(self.edges) * self.max_delay

    def with_rate(self, rate) -> "GraphInstance":
        return GraphInstance(self.nodes, self.edges, self.source, self.sink, as_rational(rate))


@dataclass(frozen=True)
class PathFlow:
    """Positive rates on simple source-sink paths.

    Entries are kept in canonical order (sorted by path) with duplicate paths
    merged and zero rates dropped, so equal flows compare equal.
    """

    entries: tuple = ()

    def __post_init__(self):
        merged: dict = defaultdict(Fraction)
        for path, rate in self.entries:
            merged[tuple(path)] += Fraction(rate)
        for path, rate in merged.items():
            if rate < 0:
                raise FlowError(f"negative rate {rate} on path {path}")
        canon = tuple(sorted((p, r) for p, r in merged.items() if r != 0))
        object.__setattr__(self, "entries", canon)

    @property
    def total_rate(self) -> Fraction:
        return sum((r for _, r in self.entries), Fraction(0))

    @property
    def paths(self) -> list:
        return [p for p, _ in self.entries]

    def __len__(self):
        return len(self.entries)

    def __bool__(self):
        return bool(self.entries)


@dataclass
class SolveReport:
    """Outcome of a min-max-delay solve.

    ``iterations`` holds ``(T, r*(T), branch)`` triples in probe order; the
    first one is the feasibility probe at the delay horizon.
    """

    status: str
    optimal_value: int | None = None
    flow: PathFlow = field(default_factory=PathFlow)
    iterations: list = field(default_factory=list)
    max_flow: Fraction | None = None
    elapsed: float = 0.0

    @property
    def solved(self) -> bool:
        return self.status == "solved"


# -- validation ---------------------------------------------------------------


def _is_nonneg_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool) and x >= 0


def zero_delay_cycle(instance: GraphInstance) -> list | None:
    """Return the node list of a directed cycle made of zero-delay edges, if any."""
    adj = defaultdict(list)
    for e in instance.edges:
        if e.delay == 0 and e.tail != e.head:
            adj[e.tail].append(e.head)
    color: dict = {}
    for root in instance.nodes:
        if root in color:
            continue
        stack = [(root, iter(adj[root]))]
        trail = [root]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[v] = 2
                stack.pop()
                trail.pop()
            elif color.get(nxt) == 1:
                return trail[trail.index(nxt):] + [nxt]
            elif nxt not in color:
                color[nxt] = 1
                stack.append((nxt, iter(adj[nxt])))
                trail.append(nxt)
    return None


def validate(instance: GraphInstance) -> list:
    """List every invariant violation of ``instance``; empty means valid."""
    problems = []
    nodes = set(instance.nodes)
    if len(nodes) != len(instance.nodes):
        problems.append("duplicate node id")
    if instance.source not in nodes:
        problems.append(f"source {instance.source!r} is not a declared node")
    if instance.sink not in nodes:
        problems.append(f"sink {instance.sink!r} is not a declared node")
    if instance.source == instance.sink:
        problems.append("source equals sink")
    seen = set()
    for e in instance.edges:
        if e.id in seen:
            problems.append(f"duplicate edge id {e.id!r}")
        seen.add(e.id)
        if e.tail not in nodes or e.head not in nodes:
            problems.append(f"edge {e.id!r}: bad endpoint")
        if e.tail == e.head:
            problems.append(f"edge {e.id!r}: self-loop")
        if not isinstance(e.capacity, int) or isinstance(e.capacity, bool):
            problems.append(f"edge {e.id!r}: capacity is not an integer")
        elif e.capacity < 0:
            problems.append(f"edge {e.id!r}: negative capacity")
        if not isinstance(e.delay, int) or isinstance(e.delay, bool):
            problems.append(f"edge {e.id!r}: delay is not an integer")
        elif e.delay < 0:
            problems.append(f"edge {e.id!r}: negative delay")
    if not isinstance(instance.rate, Fraction) or instance.rate <= 0:
        problems.append("rate must be positive")
    if not problems:
        cycle = zero_delay_cycle(instance)
        if cycle is not None:
            problems.append("zero-delay cycle through " + " -> ".join(cycle))
    return problems


def require_valid(instance: GraphInstance) -> None:
    problems = validate(instance)
    if problems:
        raise InstanceError(problems)


# -- paths and flows ----------------------------------------------------------


def path_nodes(instance: GraphInstance, path: Sequence[str]) -> list:
    """Node sequence visited by ``path``; raises PathError unless it is a simple s-t path."""
    if not path:
        raise PathError("empty path")
    try:
        edges = [instance.edge_by_id[eid] for eid in path]
    except KeyError as exc:
        raise PathError(f"unknown edge {exc.args[0]!r}") from None
    if edges[0].tail != instance.source:
        raise PathError(f"path starts at {edges[0].tail!r}, not at the source")
    if edges[-1].head != instance.sink:
        raise PathError(f"path ends at {edges[-1].head!r}, not at the sink")
    nodes = [edges[0].tail]
    for prev, e in zip(edges, edges[1:]):
        if prev.head != e.tail:
            raise PathError(f"edges {prev.id!r} and {e.id!r} are not connected")
    nodes.extend(e.head for e in edges)
    if len(set(nodes)) != len(nodes):
        raise PathError("path repeats a node")
    return nodes


def path_delay(instance: GraphInstance, path: Sequence[str]) -> int:
    path_nodes(instance, path)
    return sum(instance.edge_by_id[eid].delay for eid in path)


def max_delay(instance: GraphInstance, flow: PathFlow) -> int:
    """Largest delay among flow-carrying paths."""
    if not flow:
        raise FlowError("no flow-carrying path")
    return max(path_delay(instance, p) for p in flow.paths)


def aggregate_edge_flow(instance: GraphInstance, flow: PathFlow) -> dict:
    totals = {e.id: Fraction(0) for e in instance.edges}
    for path, rate in flow.entries:
        for eid in path:
            totals[eid] += rate
    return totals


def total_path_delay(instance: GraphInstance, flow: PathFlow) -> Fraction:
    """Sum over paths of rate times path delay."""
    return sum((r * path_delay(instance, p) for p, r in flow.entries), Fraction(0))


def total_edge_delay(instance: GraphInstance, flow: PathFlow) -> Fraction:
    """Sum over edges of edge flow times edge delay."""
    agg = aggregate_edge_flow(instance, flow)
    return sum((agg[e.id] * e.delay for e in instance.edges), Fraction(0))


def check_flow(instance: GraphInstance, flow: PathFlow, rate=None) -> list:
    """Exact feasibility check; returns a list of violations (empty when feasible)."""
    problems = []
    for path, r in flow.entries:
        try:
            path_nodes(instance, path)
        except PathError as exc:
            problems.append(f"path {list(path)}: {exc}")
        if r <= 0:
            problems.append(f"path {list(path)}: non-positive rate {r}")
    if problems:
        return problems
    if rate is not None and flow.total_rate != Fraction(rate):
        problems.append(f"total rate {flow.total_rate} != required {Fraction(rate)}")
    for eid, fe in aggregate_edge_flow(instance, flow).items():
        cap = instance.edge_by_id[eid].capacity
        if fe > cap:
            problems.append(f"edge {eid!r}: flow {fe} exceeds capacity {cap}")
    return problems


# -- serialization ------------------------------------------------------------


def instance_to_dict(instance: GraphInstance) -> dict:
    rate = instance.rate
    return {
        "nodes": list(instance.nodes),
        "edges": [
            {"id": e.id, "tail": e.tail, "head": e.head, "capacity": e.capacity, "delay": e.delay}
            for e in instance.edges
        ],
        "source": instance.source,
        "sink": instance.sink,
        "rate": rate.numerator if rate.denominator == 1 else format_rational(rate),
    }


def write_instance(instance: GraphInstance) -> bytes:
    return (json.dumps(instance_to_dict(instance), indent=2) + "\n").encode()


def _field_int(rec: Mapping, key: str, where: str) -> int:
    if key not in rec:
        raise InstanceParseError(f"{where}: missing field {key!r}")
    value = rec[key]
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InstanceParseError(f"{where}.{key}: expected a decimal integer, got {value!r}")
    if isinstance(value, str):
        text = value.strip()
        if not text.lstrip("-").isdigit():
            raise InstanceParseError(f"{where}.{key}: expected a decimal integer, got {value!r}")
        value = int(text)
    return value


def _field_str(rec: Mapping, key: str, where: str) -> str:
    if key not in rec:
        raise InstanceParseError(f"{where}: missing field {key!r}")
    value = rec[key]
    if not isinstance(value, str):
        raise InstanceParseError(f"{where}.{key}: expected a string id, got {value!r}")
    return value


def instance_from_dict(doc: Mapping) -> GraphInstance:
    if not isinstance(doc, Mapping):
        raise InstanceParseError("top level must be an object")
    nodes = doc.get("nodes")
    if not isinstance(nodes, list) or not all(isinstance(v, str) for v in nodes):
        raise InstanceParseError("nodes: expected a list of string ids")
    raw_edges = doc.get("edges")
    if not isinstance(raw_edges, list):
        raise InstanceParseError("edges: expected a list of records")
    edges = []
    for i, rec in enumerate(raw_edges):
        where = f"edges[{i}]"
        if not isinstance(rec, Mapping):
            raise InstanceParseError(f"{where}: expected a record")
        edges.append(Edge(
            id=_field_str(rec, "id", where),
            tail=_field_str(rec, "tail", where),
            head=_field_str(rec, "head", where),
            capacity=_field_int(rec, "capacity", where),
            delay=_field_int(rec, "delay", where),
        ))
    if "rate" not in doc:
        raise InstanceParseError("missing field 'rate'")
    try:
        rate = as_rational(doc["rate"])
    except (TypeError, ValueError, ZeroDivisionError):
        raise InstanceParseError(f"rate: expected an integer or 'p/q', got {doc['rate']!r}") from None
    return GraphInstance(
        nodes=tuple(nodes),
        edges=tuple(edges),
        source=_field_str(doc, "source", "instance"),
        sink=_field_str(doc, "sink", "instance"),
        rate=rate,
    )


def read_instance(data: bytes | str) -> GraphInstance:
    if isinstance(data, bytes):
        data = data.decode()
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise InstanceParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return instance_from_dict(doc)


def flow_to_dict(instance: GraphInstance, flow: PathFlow) -> dict:
    records = [
        {"path": list(p), "rate": format_rational(r), "delay": path_delay(instance, p)}
        for p, r in flow.entries
    ]
    return {
        "paths": records,
        "max_delay": max_delay(instance, flow) if flow else None,
        "total_rate": format_rational(flow.total_rate),
    }


def flow_from_dict(doc: Mapping) -> PathFlow:
    try:
        return PathFlow(tuple((tuple(rec["path"]), as_rational(rec["rate"])) for rec in doc["paths"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FlowError(f"malformed flow document: {exc}") from None


def build_instance(nodes: Iterable[str], edges: Iterable[tuple], source: str, sink: str, rate) -> GraphInstance:
    """Convenience constructor from ``(id, tail, head, capacity, delay)`` tuples."""
    return GraphInstance(
        nodes=tuple(nodes),
        edges=tuple(Edge(*rec) for rec in edges),
        source=source,
        sink=sink,
        rate=as_rational(rate),
    )

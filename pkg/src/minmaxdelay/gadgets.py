"""Instance generators: hardness-reduction graphs, gap networks, random graphs.

Edge ids follow a fixed scheme so tests can name expected paths verbatim:

* partition / 3-partition chains: ``dash_i`` (w_{i-1} -> w_i, delay a_i),
  ``bypass_in_i`` (w_{i-1} -> v_i) and ``bypass_out_i`` (v_i -> w_i)
* building block: ``dash_i`` (delay 1) and ``solid_i`` (delay 0) between a_i and a_{i+1}
* composite: block ``k`` edges are prefixed ``b{k}_``; connectors are
  ``src_{k}`` and ``snk_{k}``
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .errors import InstanceError
from .model import Edge, GraphInstance, as_rational, zero_delay_cycle


def _chain_with_bypass(values: Sequence[int], bypass_capacity: int, rate) -> GraphInstance:
    n = len(values)
    nodes = [f"w{i}" for i in range(n + 1)] + [f"v{i}" for i in range(1, n + 1)]
    edges = []
    for i, a in enumerate(values, start=1):
        edges.append(Edge(f"dash_{i}", f"w{i - 1}", f"w{i}", 1, a))
        edges.append(Edge(f"bypass_in_{i}", f"w{i - 1}", f"v{i}", bypass_capacity, 0))
        edges.append(Edge(f"bypass_out_{i}", f"v{i}", f"w{i}", bypass_capacity, 0))
    return GraphInstance(tuple(nodes), tuple(edges), "w0", f"w{n}", as_rational(rate))


def partition_gadget(values: Sequence[int]) -> tuple:
    """Partition reduction: unit capacities, R = 2, threshold b = sum/2.

    For an odd sum the graph is still built and ``b`` is returned as a
    non-integral Fraction.
    """
    values = list(values)
    if not values:
        raise ValueError("partition gadget needs a non-empty multiset")
    if any(not isinstance(a, int) or a <= 0 for a in values):
        raise ValueError("partition values must be positive integers")
    b = Fraction(sum(values), 2)
    return _chain_with_bypass(values, 1, 2), (int(b) if b.denominator == 1 else b)


def three_partition_violations(values: Sequence[int]) -> list:
    values = list(values)
    problems = []
    if not values or len(values) % 3:
        problems.append(f"need 3k elements, got {len(values)}")
        return problems
    if any(not isinstance(a, int) or a <= 0 for a in values):
        problems.append("elements must be positive integers")
        return problems
    k = len(values) // 3
    total = sum(values)
    if total % k:
        problems.append(f"sum {total} is not divisible by k={k}")
        return problems
    b = total // k
    for a in values:
        if not 4 * a > b:
            problems.append(f"element {a} violates b/4 < a (b={b})")
        if not 2 * a < b:
            problems.append(f"element {a} violates a < b/2 (b={b})")
    return problems


def three_partition_gadget(values: Sequence[int]) -> tuple:
    """3-partition reduction: R = k, threshold b = sum/k.

    The chain carries one unit-capacity dashed edge per element and a
    zero-delay bypass of capacity k-1, so every stage has total capacity k.
    For k = 2 this is exactly the partition gadget.
    """
    problems = three_partition_violations(values)
    if problems:
        raise InstanceError(problems)
    k = len(values) // 3
    return _chain_with_bypass(list(values), k - 1, k), sum(values) // k


def building_block(n: int, rate=2) -> GraphInstance:
    """Chain a_1..a_n with a unit-delay and a zero-delay unit-capacity edge per hop."""
    if n < 3:
        raise ValueError("building block needs n >= 3")
    nodes = [f"a{i}" for i in range(1, n + 1)]
    edges = []
    for i in range(1, n):
        edges.append(Edge(f"dash_{i}", f"a{i}", f"a{i + 1}", 1, 1))
        edges.append(Edge(f"solid_{i}", f"a{i}", f"a{i + 1}", 1, 0))
    return GraphInstance(tuple(nodes), tuple(edges), "a1", f"a{n}", as_rational(rate))


def gap_composite(n: int) -> GraphInstance:
    """n-2 disjoint building blocks between s and t; connectors have capacity 2, delay 0; R = n-1."""
    if n < 3:
        raise ValueError("gap composite needs n >= 3")
    nodes = ["s"]
    edges = []
    for k in range(1, n - 1):
        nodes.extend(f"b{k}_a{i}" for i in range(1, n + 1))
        edges.append(Edge(f"src_{k}", "s", f"b{k}_a1", 2, 0))
        for i in range(1, n):
            edges.append(Edge(f"b{k}_dash_{i}", f"b{k}_a{i}", f"b{k}_a{i + 1}", 1, 1))
            edges.append(Edge(f"b{k}_solid_{i}", f"b{k}_a{i}", f"b{k}_a{i + 1}", 1, 0))
        edges.append(Edge(f"snk_{k}", f"b{k}_a{n}", "t", 2, 0))
    nodes.append("t")
    return GraphInstance(tuple(nodes), tuple(edges), "s", "t", Fraction(n - 1))


def _reaches(nodes, edges, s, t) -> bool:
    adj = {v: [] for v in nodes}
    for e in edges:
        adj[e.tail].append(e.head)
    seen, stack = {s}, [s]
    while stack:
        v = stack.pop()
        if v == t:
            return True
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def _draw_endpoints(rng, nodes):
    # Edges into the source or out of the sink never lie on a simple s-t path.
    while True:
        tail = rng.choice(nodes[:-1])
        head = rng.choice(nodes[1:])
        if tail != head:
            return tail, head


def random_instance(seed, node_count: int, edge_count: int, max_capacity: int, max_delay: int,
                    max_rate: int = 3, retries: int = 200) -> GraphInstance:
    """Seeded random instance with s -> t reachable and no zero-delay cycle.

    Source is ``n0`` and sink is ``n{node_count-1}``; capacities are drawn
    from [1, max_capacity], delays from [0, max_delay] and the rate from
    [1, max_rate].
    """
    if node_count < 2 or edge_count < 1 or max_capacity < 1 or max_delay < 0 or max_rate < 1:
        raise ValueError("random_instance parameters out of range")
    rng = random.Random(seed)
    nodes = tuple(f"n{i}" for i in range(node_count))
    s, t = nodes[0], nodes[-1]
    for _ in range(retries):
        edges = []
        for i in range(edge_count):
            tail, head = _draw_endpoints(rng, nodes)
            edges.append(Edge(f"e{i}", tail, head, rng.randint(1, max_capacity), rng.randint(0, max_delay)))
        inst = GraphInstance(nodes, tuple(edges), s, t, Fraction(rng.randint(1, max_rate)))
        for _ in range(edge_count):
            cycle = zero_delay_cycle(inst)
            if cycle is None:
                break
            u, v = cycle[0], cycle[1]
            idx = next(i for i, e in enumerate(edges) if e.tail == u and e.head == v and e.delay == 0)
            old = edges[idx]
            if max_delay > 0:
                edges[idx] = Edge(old.id, old.tail, old.head, old.capacity, rng.randint(1, max_delay))
            else:
                tail, head = _draw_endpoints(rng, nodes)
                edges[idx] = Edge(old.id, tail, head, old.capacity, 0)
            inst = GraphInstance(nodes, tuple(edges), s, t, inst.rate)
        if zero_delay_cycle(inst) is None and _reaches(nodes, inst.edges, s, t):
            return inst
    raise InstanceError([f"no connected instance found in {retries} attempts (seed={seed})"])


def property_corpus(count: int = 50) -> list:
    """Seeded small random instances for the property suites.

    4 to 8 nodes, 9 to 12 edges, capacities <= 3, delays <= 5, rate <= 3.
    """
    return [random_instance(seed, 4 + seed % 5, 9 + seed % 4, 3, 5, 3) for seed in range(count)]

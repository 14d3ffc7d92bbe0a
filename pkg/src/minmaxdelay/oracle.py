"""Brute-force reference solvers for small instances.

Everything here works from an explicit list of simple s-t paths and shares
nothing with the delay-indexed pipeline except the LP solver, so agreement
between the two is a real cross-check.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ResourceError
from .lp import LE, LinearProgram, OPTIMAL, solve_lp
from .model import GraphInstance

PATH_BUDGET = 10_000


def enumerate_paths(instance: GraphInstance, budget: int = PATH_BUDGET) -> list:
    """Every simple s-t path as ``(edge ids, delay)``, sorted by delay then ids."""
    s, t = instance.source, instance.sink
    out = instance.out_edges
    found = []

    def walk(v, on_path, trail, delay):
        if v == t:
            found.append((tuple(trail), delay))
            if len(found) > budget:
                raise ResourceError(f"more than {budget} simple paths")
            return
        for e in out.get(v, ()):
            if e.head in on_path:
                continue
            on_path.add(e.head)
            trail.append(e.id)
            walk(e.head, on_path, trail, delay + e.delay)
            trail.pop()
            on_path.discard(e.head)

    walk(s, {s}, [], 0)
    found.sort(key=lambda pd: (pd[1], pd[0]))
    return found


def path_lp(instance: GraphInstance, paths: list) -> LinearProgram:
    """max sum of path rates s.t. per-edge capacity, over the given paths."""
    lp = LinearProgram()
    uses: dict = {}
    for i, (path, _) in enumerate(paths):
        name = f"p{i}"
        lp.add_variable(name, cost=1)
        for eid in path:
            uses.setdefault(eid, []).append(name)
    for e in instance.edges:
        if e.id in uses:
            lp.add_constraint({n: 1 for n in uses[e.id]}, LE, e.capacity, name=f"cap[{e.id}]")
    return lp


def oracle_dc_max_flow(instance: GraphInstance, T: int, paths=None) -> Fraction:
    """r*(T) from the path formulation over all simple paths with delay <= T."""
    paths = enumerate_paths(instance) if paths is None else paths
    eligible = [pd for pd in paths if pd[1] <= T]
    if not eligible:
        return Fraction(0)
    sol = solve_lp(path_lp(instance, eligible))
    assert sol.status == OPTIMAL
    return sol.objective_value


def oracle_min_max_delay(instance: GraphInstance, rate=None, paths=None) -> int | None:
    """Smallest path delay D with r*(D) >= R, or None when R is not routable."""
    R = instance.rate if rate is None else Fraction(rate)
    paths = enumerate_paths(instance) if paths is None else paths
    for D in sorted({d for _, d in paths}):
        if oracle_dc_max_flow(instance, D, paths) >= R:
            return D
    return None


def oracle_int_min_max_delay(instance: GraphInstance, rate=None, max_paths: int = 64,
                             max_rate: int = 8) -> int | None:
    """Exhaustive search over integer path rates; tiny instances only."""
    R = instance.rate if rate is None else Fraction(rate)
    if R.denominator != 1:
        raise ValueError("integer flows need an integer rate")
    R = int(R)
    paths = enumerate_paths(instance)
    if len(paths) > max_paths or R > max_rate:
        raise ResourceError(f"oracle limited to {max_paths} paths and rate {max_rate}")
    residual = {e.id: e.capacity for e in instance.edges}
    best = [None]

    # Assign units to paths in index order, allowing repeats; track the worst delay used.
    def place(start, remaining, worst):
        if remaining == 0:
            if best[0] is None or worst < best[0]:
                best[0] = worst
            return
        for i in range(start, len(paths)):
            path, delay = paths[i]
            if all(residual[eid] > 0 for eid in path):
                for eid in path:
                    residual[eid] -= 1
                place(i, remaining - 1, max(worst, delay))
                for eid in path:
                    residual[eid] += 1

    place(0, R, 0)
    return best[0]

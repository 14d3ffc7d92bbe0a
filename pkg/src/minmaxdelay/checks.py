"""Cross-checks of the solvers against the brute-force references.

``cross_check`` returns ``(name, passed, detail)`` rows; the ``verify`` CLI
subcommand prints them and the test-suite asserts on them.
"""

from __future__ import annotations

from fractions import Fraction

from .dcflow import dc_max_flow
from .errors import ResourceError
from .intsolve import int_min_max_delay
from .minmax import min_max_delay
from .model import (GraphInstance, aggregate_edge_flow, check_flow, max_delay, path_delay,
                    total_edge_delay, total_path_delay, validate)
from .oracle import enumerate_paths, oracle_dc_max_flow, oracle_int_min_max_delay, oracle_min_max_delay


def witness_problems(instance: GraphInstance, flow, rate, claimed_delay) -> list:
    """Rate, capacity, tightness and total-delay identity of a solver witness."""
    problems = check_flow(instance, flow, rate)
    if problems:
        return problems
    if max_delay(instance, flow) != claimed_delay:
        problems.append(f"max delay {max_delay(instance, flow)} != reported {claimed_delay}")
    if total_path_delay(instance, flow) != total_edge_delay(instance, flow):
        problems.append("sum_p f^p d^p != sum_e f_e d_e")
    return problems


def cross_check(instance: GraphInstance, with_integer: bool = True) -> list:
    rows = []

    def row(name, ok, detail=""):
        rows.append((name, bool(ok), detail))

    problems = validate(instance)
    row("validate", not problems, "; ".join(problems))
    if problems:
        return rows
    try:
        paths = enumerate_paths(instance)
    except ResourceError as exc:
        row("enumerate_paths", False, str(exc))
        return rows
    row("enumerate_paths", True, f"{len(paths)} simple paths")

    horizon = instance.delay_horizon
    R = instance.rate
    r_star = {}
    mismatches, bad_witness = [], []
    for T in range(horizon + 1):
        res = dc_max_flow(instance, T, validate=False)
        r_star[T] = res.value
        ref = oracle_dc_max_flow(instance, T, paths)
        if ref != res.value:
            mismatches.append(f"T={T}: expanded {res.value} vs path {ref}")
        flow = res.path_flow
        issues = check_flow(instance, flow, res.value)
        if flow and max(path_delay(instance, p) for p in flow.paths) > T:
            issues.append("path longer than T")
        agg = aggregate_edge_flow(instance, flow)
        by_edge = {e.id: Fraction(0) for e in instance.edges}
        for (eid, _), v in res.edge_level_flow.items():
            by_edge[eid] += v
        if agg != by_edge:
            issues.append("path/edge aggregate mismatch")
        if issues:
            bad_witness.append(f"T={T}: " + "; ".join(issues))
    row("dc_max_flow = path LP, all T", not mismatches, "; ".join(mismatches[:3]) or f"T in [0, {horizon}]")
    row("dc_max_flow witnesses", not bad_witness, "; ".join(bad_witness[:3]))
    monotone = all(r_star[T] <= r_star[T + 1] for T in range(horizon))
    row("r*(T) non-decreasing", monotone)

    report = min_max_delay(instance)
    ref = oracle_min_max_delay(instance, paths=paths)
    got = report.optimal_value if report.solved else None
    row("min_max_delay = oracle", got == ref, f"solver {got}, oracle {ref}")
    violations = [T for T in range(horizon + 1) if (got is not None and got <= T) != (r_star[T] >= R)]
    row("d*(R) <= T iff r*(T) >= R", not violations, f"violations at T={violations[:5]}" if violations else "")
    if report.solved:
        issues = witness_problems(instance, report.flow, R, report.optimal_value)
        row("min_max_delay witness", not issues, "; ".join(issues))

    if with_integer and R.denominator == 1:
        try:
            ref_int = oracle_int_min_max_delay(instance)
        except ResourceError:
            ref_int = "skipped"
        if ref_int != "skipped":
            res_int = int_min_max_delay(instance)
            row("int_min_max_delay = oracle", res_int.optimal_value == ref_int,
                f"solver {res_int.optimal_value}, oracle {ref_int}")
            if res_int.feasible:
                issues = witness_problems(instance, res_int.flow, R, res_int.optimal_value)
                if any(r.denominator != 1 for _, r in res_int.flow.entries):
                    issues.append("non-integer rate")
                row("int witness", not issues, "; ".join(issues))
                if got is not None:
                    row("integer optimum >= fractional", res_int.optimal_value >= got)
    return rows

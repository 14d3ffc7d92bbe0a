"""Min-max-delay by binary search on the delay bound.

d*(R) <= T holds exactly when r*(T) >= R, so the optimum is the smallest T
whose delay-constrained max flow reaches the rate.  The search keeps
``r*(T_u) >= R`` and ``r*(T_l - 1) < R`` as invariants and stops when the two
bounds meet.
"""

from __future__ import annotations

import logging
import time
from fractions import Fraction

from .dcflow import dc_max_flow
from .errors import FlowError
from .model import GraphInstance, PathFlow, SolveReport, path_delay, require_valid

log = logging.getLogger(__name__)


def trim_to_rate(instance: GraphInstance, flow: PathFlow, rate) -> PathFlow:
    """Reduce ``flow`` to total ``rate``, cutting the largest-delay paths first.

    Delay ties go to the lexicographically smallest edge-id sequence.
    """
    rate = Fraction(rate)
    excess = flow.total_rate - rate
    if excess < 0:
        raise FlowError(f"flow total {flow.total_rate} is below the requested rate {rate}")
    ranked = sorted(flow.entries, key=lambda pr: (-path_delay(instance, pr[0]), pr[0]))
    kept = []
    for path, r in ranked:
        cut = min(r, excess)
        excess -= cut
        if r - cut:
            kept.append((path, r - cut))
    return PathFlow(tuple(kept))


def min_max_delay(instance: GraphInstance, rate=None) -> SolveReport:
    """Optimal maximum path delay for routing ``rate`` (default: the instance rate)."""
    require_valid(instance)
    if rate is not None:
        instance = instance.with_rate(rate)
    R = instance.rate
    started = time.perf_counter()

    upper = instance.delay_horizon
    probe = dc_max_flow(instance, upper, validate=False)
    report = SolveReport(status="infeasible")
    report.iterations.append((upper, probe.value, "init"))
    if probe.value < R:
        report.max_flow = probe.value
        report.elapsed = time.perf_counter() - started
        return report

    lower, accepted = 0, probe
    while lower < upper:
        T = (lower + upper) // 2
        result = dc_max_flow(instance, T, validate=False)
        if result.value >= R:
            upper, accepted = T, result
            branch = "upper"
        else:
            lower = T + 1
            branch = "lower"
        report.iterations.append((T, result.value, branch))
        log.debug("T=%d r*=%s -> %s", T, result.value, branch)

    report.status = "solved"
    report.optimal_value = upper
    report.flow = trim_to_rate(instance, accepted.path_flow, R)
    report.elapsed = time.perf_counter() - started
    return report

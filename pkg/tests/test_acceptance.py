"""Acceptance criteria 1-9, one test each.

Each test prints a single ``criterion N: PASS|FAIL`` line before asserting,
so ``pytest -v -s`` (or the tee'd log) shows the verdict table directly.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import pytest

from minmaxdelay import dc_max_flow, int_gap, int_min_max_delay, min_max_delay
from minmaxdelay.checks import witness_problems
from minmaxdelay.gadgets import (building_block, gap_composite, partition_gadget, three_partition_gadget,
                                 three_partition_violations)
from minmaxdelay.model import max_delay
from minmaxdelay.oracle import enumerate_paths, oracle_dc_max_flow


@pytest.fixture
def verdict(capsys):
    def emit(number, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return emit


# -- brute-force references ---------------------------------------------------


def has_equal_bipartition(values):
    total = sum(values)
    if total % 2:
        return False
    sums = {0}
    for a in values:
        sums |= {s + a for s in sums}
    return total // 2 in sums


def has_three_partition(values):
    k = len(values) // 3
    b = sum(values) // k

    def split(rest):
        if not rest:
            return True
        first, others = rest[0], rest[1:]
        for i, j in itertools.combinations(range(len(others)), 2):
            if first + others[i] + others[j] == b:
                remaining = [x for idx, x in enumerate(others) if idx not in (i, j)]
                if split(remaining):
                    return True
        return False

    return split(sorted(values))


# -- shared corpus sweep -------------------------------------------------------


@pytest.fixture(scope="session")
def sweep(corpus):
    """Per instance: r*(T) from both formulations for every T, plus solves at R and R+1."""
    rows = []
    for inst in corpus:
        paths = enumerate_paths(inst)
        expanded, path_lp = {}, {}
        results = {}
        for T in range(inst.delay_horizon + 1):
            results[T] = dc_max_flow(inst, T)
            expanded[T] = results[T].value
            path_lp[T] = oracle_dc_max_flow(inst, T, paths)
        rows.append({
            "instance": inst,
            "expanded": expanded,
            "path_lp": path_lp,
            "results": results,
            "solve": min_max_delay(inst),
            "solve_next": min_max_delay(inst, inst.rate + 1),
        })
    return rows


# -- criteria -------------------------------------------------------------------


def test_criterion_1_integer_block(verdict):
    got = {n: int_min_max_delay(building_block(n), 2).optimal_value for n in (3, 4, 5, 6, 7, 9)}
    want = {n: math.ceil((n - 1) / 2) for n in got}
    verdict(1, got == want, f"int d*(2) on building_block(n): {got}")


def test_criterion_2_fractional_block(verdict):
    got = {n: min_max_delay(building_block(n), Fraction(n - 1, n - 2)).optimal_value for n in (3, 4, 5, 7, 9)}
    verdict(2, all(v == 1 for v in got.values()), f"d*((n-1)/(n-2)) on building_block(n): {got}")


def test_criterion_3_gap_growth(verdict):
    rows = {}
    for n in (3, 5, 7, 9):
        res = int_gap(gap_composite(n))
        rows[n] = (res.fractional_value, res.optimal_value, int(res.gap))
    ok = all(rows[n] == (1, math.ceil((n - 1) / 2), math.ceil((n - 1) / 2)) for n in rows)
    gaps = [rows[n][2] for n in sorted(rows)]
    ok = ok and all(a < b for a, b in zip(gaps, gaps[1:]))
    verdict(3, ok, "(fractional, integer, gap): " + ", ".join(f"n={n} {rows[n]}" for n in rows))


def test_criterion_4_partition_biconditional(verdict):
    rng = random.Random(2024)
    cases, yes = [], 0
    while len(cases) < 30:
        values = [rng.randint(1, 12) for _ in range(rng.randint(1, 10))]
        if sum(values) % 2:
            continue
        cases.append(values)
    mismatches = []
    for values in cases:
        instance, b = partition_gadget(values)
        d = min_max_delay(instance).optimal_value
        truth = has_equal_bipartition(values)
        yes += truth
        if (d == b) != truth:
            mismatches.append((values, d, b, truth))
    verdict(4, not mismatches, f"{len(cases)} multisets ({yes} partitionable), mismatches={mismatches}")


def three_partition_cases():
    rng = random.Random(99)
    yes_cases, no_cases = [], []
    while len(yes_cases) < 5 or len(no_cases) < 5:
        k = rng.choice((2, 3))
        b = rng.randint(12, 30)
        values = [rng.randint(b // 4 + 1, (b - 1) // 2) for _ in range(3 * k)]
        if three_partition_violations(values):
            continue
        bucket = yes_cases if has_three_partition(values) else no_cases
        if len(bucket) < 5:
            bucket.append(values)
    return yes_cases + no_cases


def test_criterion_5_three_partition_biconditional(verdict):
    mismatches, ks = [], []
    for values in three_partition_cases():
        instance, b = three_partition_gadget(values)
        ks.append(len(values) // 3)
        d = int_min_max_delay(instance).optimal_value
        if (d == b) != has_three_partition(values):
            mismatches.append((values, d, b))
    verdict(5, not mismatches, f"10 inputs (5 yes, 5 no; k={ks}), mismatches={mismatches}")


def test_criterion_6_threshold_biconditional(sweep, verdict):
    violations, checked = [], 0
    for i, row in enumerate(sweep):
        R, d = row["instance"].rate, row["solve"].optimal_value
        for T, r in row["expanded"].items():
            checked += 1
            if (d is not None and d <= T) != (r >= R):
                violations.append((i, T))
    verdict(6, not violations, f"{checked} (instance, T) pairs, violations={violations[:5]}")


def test_criterion_7_formulation_equivalence(sweep, verdict):
    bad = [(i, T) for i, row in enumerate(sweep) for T in row["expanded"]
           if row["expanded"][T] != row["path_lp"][T]]
    total = sum(len(row["expanded"]) for row in sweep)
    verdict(7, not bad, f"{total} (instance, T) pairs, mismatches={bad[:5]}")


def test_criterion_8_witnesses(sweep, verdict):
    problems, count = [], 0
    for i, row in enumerate(sweep):
        inst = row["instance"]
        for key in ("solve", "solve_next"):
            report = row[key]
            if report.solved:
                rate = inst.rate if key == "solve" else inst.rate + 1
                count += 1
                problems += [(i, key, p) for p in witness_problems(inst, report.flow, rate, report.optimal_value)]
        for T, res in row["results"].items():
            if res.path_flow:
                count += 1
                flow = res.path_flow
                problems += [(i, T, p) for p in witness_problems(inst, flow, res.value, max_delay(inst, flow))]
    extra = [
        (building_block(5), Fraction(4, 3), min_max_delay(building_block(5), Fraction(4, 3))),
        (gap_composite(5), 4, int_min_max_delay(gap_composite(5))),
        (partition_gadget([3, 1, 2])[0], 2, min_max_delay(partition_gadget([3, 1, 2])[0])),
    ]
    for inst, rate, res in extra:
        count += 1
        problems += [("gadget", p) for p in witness_problems(inst, res.flow, rate, res.optimal_value)]
    verdict(8, not problems, f"{count} witnesses, problems={problems[:3]}")


def test_criterion_9_monotonicity(sweep, verdict):
    bad_r, bad_d = [], []
    for i, row in enumerate(sweep):
        values = [row["expanded"][T] for T in sorted(row["expanded"])]
        if any(a > b for a, b in zip(values, values[1:])):
            bad_r.append(i)
        d, d_next = row["solve"].optimal_value, row["solve_next"].optimal_value
        if d is None and d_next is not None or (d is not None and d_next is not None and d > d_next):
            bad_d.append(i)
    verdict(9, not bad_r and not bad_d, f"r*(T) violations={bad_r}, d*(R) vs d*(R+1) violations={bad_d}")

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from minmaxdelay.lp import (EQ, GE, INFEASIBLE, LE, OPTIMAL, UNBOUNDED, LinearProgram, LpSolution,
                            check_solution, solve_lp)


def lp_of(objective, rows, sense="max"):
    names = sorted({v for v in objective} | {v for coeffs, _, _ in rows for v in coeffs})
    lp = LinearProgram(sense=sense)
    for v in names:
        lp.add_variable(v, objective.get(v, 0))
    for coeffs, rel, rhs in rows:
        lp.add_constraint(coeffs, rel, rhs)
    return lp


def test_single_bound():
    sol = solve_lp(lp_of({"x": 1}, [({"x": 1}, LE, 5)]))
    assert sol.status == OPTIMAL
    assert sol.values == {"x": 5}


def test_infeasible():
    assert solve_lp(lp_of({"x": 1}, [({"x": 1}, LE, -1)])).status == INFEASIBLE


def test_fractional_optimum():
    lp = lp_of({"x": 1, "y": 1}, [({"x": 1, "y": 1}, LE, Fraction(3, 2)), ({"x": 1}, LE, 1), ({"y": 1}, LE, 1)])
    sol = solve_lp(lp)
    assert sol.objective_value == Fraction(3, 2)
    assert check_solution(lp, sol) == []


def test_unbounded():
    assert solve_lp(lp_of({"x": 1, "y": 1}, [({"x": 1, "y": -1}, LE, 1)])).status == UNBOUNDED


def test_equality_and_ge_rows():
    lp = lp_of({"x": 1, "y": 2}, [({"x": 1, "y": 1}, EQ, 4), ({"x": 1}, GE, 1)], sense="min")
    sol = solve_lp(lp)
    assert sol.objective_value == 4
    assert sol.values == {"x": 4, "y": 0}
    assert check_solution(lp, sol) == []


def test_redundant_equalities():
    lp = lp_of({"x": 1}, [({"x": 1, "y": 1}, EQ, 2), ({"x": 2, "y": 2}, EQ, 4), ({"y": 1}, GE, Fraction(1, 2))])
    sol = solve_lp(lp)
    assert sol.objective_value == Fraction(3, 2)
    assert check_solution(lp, sol) == []


def test_empty_row_consistency():
    lp = lp_of({"x": 1}, [({"x": 1}, LE, 1)])
    lp.add_constraint({"x": 0}, EQ, 1)
    assert solve_lp(lp).status == INFEASIBLE


def test_check_solution_flags_violation():
    lp = lp_of({"x": 1}, [({"x": 1}, LE, 5)])
    problems = check_solution(lp, LpSolution(OPTIMAL, {"x": Fraction(6)}, Fraction(6)))
    assert problems == ["r0: 6 <= 5 violated"]


def test_check_solution_accepts_feasible_point():
    lp = lp_of({"x": 1}, [({"x": 1}, LE, 5)])
    assert check_solution(lp, LpSolution(OPTIMAL, {"x": Fraction(2)}, Fraction(2))) == []


def test_row_order_does_not_change_optimum():
    rng = random.Random(7)
    rows = [({"a": 1, "b": 2, "c": 1}, LE, 4), ({"a": 3, "c": 1}, LE, 5), ({"b": 1, "c": 2}, LE, 3),
            ({"a": 1, "b": 1, "c": 1}, LE, 3)]
    base = solve_lp(lp_of({"a": 2, "b": 3, "c": 4}, rows)).objective_value
    for _ in range(10):
        rng.shuffle(rows)
        assert solve_lp(lp_of({"a": 2, "b": 3, "c": 4}, rows)).objective_value == base


def test_duplicate_variable_rejected():
    lp = LinearProgram()
    lp.add_variable("x")
    with pytest.raises(ValueError):
        lp.add_variable("x")


def test_dump_lists_rows():
    lp = lp_of({"x": 1}, [({"x": 1, "y": -1}, LE, 5)])
    text = lp.dump()
    assert "max x" in text
    assert "r0: x - y <= 5" in text


small = st.integers(min_value=0, max_value=4)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(small, min_size=n, max_size=n),
    st.lists(st.tuples(st.lists(small, min_size=n, max_size=n), small), min_size=1, max_size=4))))
def test_strong_duality(data):
    """max c.x, Ax <= b, x >= 0 against min b.y, A'y >= c, y >= 0."""
    c, rows = data
    n = len(c)
    primal = LinearProgram()
    for j in range(n):
        primal.add_variable(f"x{j}", c[j])
    for a, b in rows:
        primal.add_constraint({f"x{j}": a[j] for j in range(n)}, LE, b)
    dual = LinearProgram(sense="min")
    for i, (_, b) in enumerate(rows):
        dual.add_variable(f"y{i}", b)
    for j in range(n):
        dual.add_constraint({f"y{i}": a[j] for i, (a, _) in enumerate(rows)}, GE, c[j])
    p, d = solve_lp(primal), solve_lp(dual)
    if p.status == OPTIMAL:
        assert check_solution(primal, p) == []
        assert d.status == OPTIMAL
        assert check_solution(dual, d) == []
        assert p.objective_value == d.objective_value
    else:
        assert p.status == UNBOUNDED
        assert d.status == INFEASIBLE

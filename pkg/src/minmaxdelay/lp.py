"""Exact rational linear programming.

A two-phase primal simplex on a sparse tableau.  Every number is a
``gmpy2.mpq`` internally and a :class:`fractions.Fraction` at the API
boundary, so optimal values and solutions are exact.

Pivoting uses Dantzig's most-positive reduced cost while the objective keeps
improving and switches to Bland's smallest-index rule after a run of
degenerate pivots; with Bland in force the method cannot cycle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from gmpy2 import mpq

LE, EQ, GE = "<=", "=", ">="
OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"

_ZERO = mpq(0)

# Consecutive degenerate pivots tolerated before Bland's rule takes over.
DEGENERATE_STREAK = 50


@dataclass
class Constraint:
    coeffs: dict
    relation: str
    rhs: Fraction
    name: str | None = None


@dataclass
class LinearProgram:
    """``sense`` objective over non-negative variables subject to linear rows."""

    variables: list = field(default_factory=list)
    objective: dict = field(default_factory=dict)
    constraints: list = field(default_factory=list)
    sense: str = "max"

    def __post_init__(self):
        if self.sense not in ("max", "min"):
            raise ValueError(f"unknown sense {self.sense!r}")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be unique")

    def add_variable(self, name: str, cost=0) -> str:
        if name in self._index:
            raise ValueError(f"duplicate variable {name!r}")
        self._index[name] = len(self.variables)
        self.variables.append(name)
        if cost:
            self.objective[name] = Fraction(cost)
        return name

    def add_constraint(self, coeffs: Mapping, relation: str, rhs, name: str | None = None) -> Constraint:
        if relation not in (LE, EQ, GE):
            raise ValueError(f"unknown relation {relation!r}")
        row = {}
        for var, a in coeffs.items():
            if var not in self._index:
                raise KeyError(f"unknown variable {var!r} in constraint {name!r}")
            a = Fraction(a)
            if a:
                row[var] = a
        con = Constraint(row, relation, Fraction(rhs), name)
        self.constraints.append(con)
        return con

    @property
    def _index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None or len(idx) != len(self.variables):
            idx = {v: i for i, v in enumerate(self.variables)}
            self.__dict__["_idx"] = idx
        return idx

    def evaluate(self, values: Mapping) -> Fraction:
        return sum((Fraction(c) * values.get(v, 0) for v, c in self.objective.items()), Fraction(0))

    def dump(self) -> str:
        """Human-readable row listing."""

        def term(v, a):
            if a == 1:
                return v
            if a == -1:
                return f"-{v}"
            return f"{a}*{v}"

        def expr(coeffs):
            if not coeffs:
                return "0"
            return " + ".join(term(v, a) for v, a in coeffs.items()).replace("+ -", "- ")

        lines = [f"{self.sense} {expr(self.objective)}", "subject to"]
        for i, con in enumerate(self.constraints):
            label = con.name or f"r{i}"
            lines.append(f"  {label}: {expr(con.coeffs)} {con.relation} {con.rhs}")
        lines.append(f"vars ({len(self.variables)}, all >= 0): " + " ".join(self.variables))
        return "\n".join(lines)


@dataclass
class LpSolution:
    status: str
    values: dict = field(default_factory=dict)
    objective_value: Fraction | None = None
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


class _Tableau:
    """Sparse simplex tableau: one dict per row plus a column -> rows index."""

    def __init__(self, rows, rhs, basis, ncols):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.ncols = ncols
        self.colrows = [set() for _ in range(ncols)]
        for i, row in enumerate(rows):
            for j in row:
                self.colrows[j].add(i)
        self.cost = {}
        self.value = _ZERO
        self.pivots = 0

    def set_objective(self, c: Mapping):
        """Install objective ``c`` (column -> coefficient) priced against the current basis."""
        cost = {j: mpq(v) for j, v in c.items() if v}
        value = _ZERO
        for i, b in enumerate(self.basis):
            cb = c.get(b)
            if not cb:
                continue
            value += cb * self.rhs[i]
            for j, a in self.rows[i].items():
                nv = cost.get(j, _ZERO) - cb * a
                if nv:
                    cost[j] = nv
                else:
                    cost.pop(j, None)
        self.cost = cost
        self.value = value

    def pivot(self, r: int, col: int):
        rows, colrows = self.rows, self.colrows
        prow = rows[r]
        piv = prow[col]
        if piv != 1:
            inv = 1 / piv
            for j in prow:
                prow[j] *= inv
            self.rhs[r] *= inv
        prhs = self.rhs[r]
        for i in list(colrows[col]):
            if i == r:
                continue
            row = rows[i]
            f = row[col]
            for j, a in prow.items():
                nv = row.get(j, _ZERO) - f * a
                if nv:
                    if j not in row:
                        colrows[j].add(i)
                    row[j] = nv
                else:
                    if j in row:
                        del row[j]
                        colrows[j].discard(i)
            if prhs:
                self.rhs[i] -= f * prhs
        cost = self.cost
        f = cost.get(col)
        if f:
            for j, a in prow.items():
                nv = cost.get(j, _ZERO) - f * a
                if nv:
                    cost[j] = nv
                else:
                    cost.pop(j, None)
            self.value += f * prhs
        self.basis[r] = col
        self.pivots += 1

    def _ratio_row(self, col: int, bland: bool):
        """Minimum-ratio row; ties go to the smallest basic index under Bland,
        otherwise to the sparsest row to limit fill-in."""
        best = None
        best_key = None
        for i in self.colrows[col]:
            a = self.rows[i][col]
            if a > 0:
                key = (self.rhs[i] / a, self.basis[i] if bland else len(self.rows[i]))
                if best is None or key < best_key:
                    best, best_key = i, key
        return best

    def optimize(self, allowed: int) -> str:
        """Maximize the installed objective over columns ``< allowed``."""
        streak = 0
        while True:
            candidates = [(v, j) for j, v in self.cost.items() if v > 0 and j < allowed]
            if not candidates:
                return OPTIMAL
            bland = streak >= DEGENERATE_STREAK
            if bland:
                col = min(j for _, j in candidates)
            else:
                col = max(candidates, key=lambda vj: (vj[0], -vj[1]))[1]
            r = self._ratio_row(col, bland)
            if r is None:
                return UNBOUNDED
            degenerate = self.rhs[r] == 0
            self.pivot(r, col)
            streak = streak + 1 if degenerate else 0

    def drop_row(self, i: int):
        for j in self.rows[i]:
            self.colrows[j].discard(i)
        self.rows[i] = {}
        self.rhs[i] = _ZERO
        self.basis[i] = -1


def solve_lp(lp: LinearProgram) -> LpSolution:
    """Solve ``lp`` exactly; returns an optimal basic solution or a status."""
    index = lp._index
    n = len(lp.variables)
    sign = 1 if lp.sense == "max" else -1

    rows, rhs, rels = [], [], []
    for con in lp.constraints:
        row = {index[v]: mpq(a) for v, a in con.coeffs.items() if a}
        b = mpq(con.rhs)
        rel = con.relation
        if b < 0:
            row = {j: -a for j, a in row.items()}
            b = -b
            rel = {LE: GE, GE: LE, EQ: EQ}[rel]
        if not row:
            if (rel == EQ and b != 0) or (rel == GE and b > 0):
                return LpSolution(INFEASIBLE)
            continue
        rows.append(row)
        rhs.append(b)
        rels.append(rel)

    ncols = n
    basis = []
    for row, rel in zip(rows, rels):
        if rel == LE:
            row[ncols] = mpq(1)
            basis.append(ncols)
            ncols += 1
        elif rel == GE:
            row[ncols] = mpq(-1)
            ncols += 1
            basis.append(None)
        else:
            basis.append(None)
    first_artificial = ncols
    for i, row in enumerate(rows):
        if basis[i] is None:
            row[ncols] = mpq(1)
            basis[i] = ncols
            ncols += 1

    tab = _Tableau(rows, rhs, basis, ncols)

    if ncols > first_artificial:
        tab.set_objective({j: -1 for j in range(first_artificial, ncols)})
        # All artificials already at zero (typical for flow conservation rows): nothing to do.
        if tab.value < 0:
            tab.optimize(first_artificial)
        if tab.value < 0:
            return LpSolution(INFEASIBLE, pivots=tab.pivots)
        for i in range(len(tab.rows)):
            if tab.basis[i] < first_artificial:
                continue
            col = min((j for j in tab.rows[i] if j < first_artificial), default=None)
            if col is None:
                tab.drop_row(i)
            else:
                tab.pivot(i, col)
        for j in range(first_artificial, ncols):
            for i in tab.colrows[j]:
                del tab.rows[i][j]
            tab.colrows[j].clear()

    tab.set_objective({index[v]: sign * mpq(c) for v, c in lp.objective.items() if c})
    status = tab.optimize(first_artificial)
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED, pivots=tab.pivots)

    values = {v: Fraction(0) for v in lp.variables}
    for i, b in enumerate(tab.basis):
        if 0 <= b < n:
            values[lp.variables[b]] = _to_fraction(tab.rhs[i])
    return LpSolution(OPTIMAL, values, sign * _to_fraction(tab.value), tab.pivots)


def check_solution(lp: LinearProgram, solution: LpSolution) -> list:
    """Exact verification of bounds, rows and the reported objective value."""
    problems = []
    values = solution.values
    for v in lp.variables:
        if v not in values:
            problems.append(f"missing value for {v!r}")
        elif values[v] < 0:
            problems.append(f"{v} = {values[v]} violates {v} >= 0")
    if problems:
        return problems
    for i, con in enumerate(lp.constraints):
        lhs = sum((a * values[v] for v, a in con.coeffs.items()), Fraction(0))
        ok = {LE: lhs <= con.rhs, GE: lhs >= con.rhs, EQ: lhs == con.rhs}[con.relation]
        if not ok:
            problems.append(f"{con.name or f'r{i}'}: {lhs} {con.relation} {con.rhs} violated")
    if solution.objective_value is not None and lp.evaluate(values) != solution.objective_value:
        problems.append(f"objective {lp.evaluate(values)} != reported {solution.objective_value}")
    return problems

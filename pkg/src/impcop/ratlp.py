"""Exact rational linear programming.

Two-phase tableau simplex over ``fractions.Fraction`` with Bland's rule, so it
terminates on every input and is deterministic.  Problems are

    minimize  c.x   subject to  rows[i].x  (<=|=|>=)  rhs[i],   0 <= x <= upper

Rows may be dense sequences or sparse ``{column: coefficient}`` dicts.

An infeasible problem comes back with Farkas multipliers ``y`` (one per row,
plus one per finite upper bound) satisfying

    y_i <= 0 on '<=' rows, y_i >= 0 on '>=' rows, y free on '=' rows,
    sum_i y_i rows[i] <= 0 componentwise,  and  sum_i y_i rhs[i] > 0,

which no nonnegative ``x`` can satisfy.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)

LE, EQ, GE = "<=", "=", ">="


class Malformed(ValueError):
    pass


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


Row = Mapping[int, Fraction] | Sequence[Fraction]


@dataclass
class LpProblem:
    objective: list[Fraction]
    rows: list[Row] = field(default_factory=list)
    senses: list[str] = field(default_factory=list)
    rhs: list[Fraction] = field(default_factory=list)
    upper: list[Fraction | None] | None = None

    @property
    def n(self) -> int:
        return len(self.objective)

    def add(self, row: Row, sense: str, rhs) -> None:
        self.rows.append(row)
        self.senses.append(sense)
        self.rhs.append(Fraction(rhs))

    def sparse_rows(self) -> list[dict[int, Fraction]]:
        out = []
        for row in self.rows:
            items = row.items() if isinstance(row, Mapping) else enumerate(row)
            out.append({j: Fraction(v) for j, v in items if v})
        return out

    def validate(self) -> None:
        if not (len(self.rows) == len(self.senses) == len(self.rhs)):
            raise Malformed("rows, senses and rhs must have equal length")
        for s in self.senses:
            if s not in (LE, EQ, GE):
                raise Malformed(f"unknown relation {s!r}")
        n = self.n
        for row in self.rows:
            if isinstance(row, Mapping):
                if any(not 0 <= j < n for j in row):
                    raise Malformed("column index out of range")
            elif len(row) != n:
                raise Malformed("dense row length differs from objective length")
        if self.upper is not None:
            if len(self.upper) != n:
                raise Malformed("upper bounds length differs from objective length")
            if any(u is not None and u < 0 for u in self.upper):
                raise Malformed("negative upper bound makes 0 <= x <= u empty")


@dataclass
class LpSolution:
    status: Status
    point: list[Fraction] | None = None
    value: Fraction | None = None
    farkas: list[Fraction] | None = None
    farkas_upper: list[Fraction] | None = None
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


class _Tableau:
    def __init__(self, rows, rhs, basis, barred):
        self.T = rows
        self.b = rhs
        self.basis = basis
        self.barred = barred
        self.pivots = 0
        self.ncols = len(rows[0]) if rows else 0

    def set_costs(self, cost):
        rc = list(cost)
        val = ZERO
        for i, bj in enumerate(self.basis):
            cb = cost[bj]
            if cb:
                row = self.T[i]
                for k, v in enumerate(row):
                    if v:
                        rc[k] -= cb * v
                val += cb * self.b[i]
        self.rc = rc
        self.val = val  # objective value of the current basis

    def pivot(self, r, c):
        T = self.T
        prow = T[r]
        piv = prow[c]
        if piv != 1:
            inv = 1 / piv
            for k, v in enumerate(prow):
                if v:
                    prow[k] = v * inv
            self.b[r] *= inv
        nz = [k for k, v in enumerate(prow) if v]
        br = self.b[r]
        for i, row in enumerate(T):
            if i != r:
                f = row[c]
                if f:
                    for k in nz:
                        row[k] -= f * prow[k]
                    self.b[i] -= f * br
        f = self.rc[c]
        if f:
            for k in nz:
                self.rc[k] -= f * prow[k]
            self.val += f * br
        self.basis[r] = c
        self.pivots += 1

    def run(self) -> bool:
        """Bland-rule simplex; returns False if unbounded."""
        T, b, rc = self.T, self.b, self.rc
        while True:
            enter = -1
            for j, v in enumerate(rc):
                if v < 0 and not self.barred[j]:
                    enter = j
                    break
            if enter < 0:
                return True
            leave, best = -1, None
            for i, row in enumerate(T):
                a = row[enter]
                if a > 0:
                    ratio = b[i] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        leave, best = i, ratio
            if leave < 0:
                return False
            self.pivot(leave, enter)


def solve(prob: LpProblem, check: bool = True) -> LpSolution:
    prob.validate()
    n = prob.n
    rows = prob.sparse_rows()
    senses = list(prob.senses)
    rhs = list(prob.rhs)
    nrow_orig = len(rows)
    if prob.upper is not None:
        for j, u in enumerate(prob.upper):
            if u is not None:
                rows.append({j: ONE})
                senses.append(LE)
                rhs.append(Fraction(u))
    m = len(rows)

    # columns: structural | slack/surplus | artificial
    slack_col = {}
    k = n
    for i, s in enumerate(senses):
        if s != EQ:
            slack_col[i] = k
            k += 1
    art_start = k
    flip = [ONE] * m
    init_col = [0] * m
    art_rows = []
    for i in range(m):
        sign = -ONE if rhs[i] < 0 else ONE
        flip[i] = sign
        slack_coef = (ONE if senses[i] == LE else -ONE) * sign if i in slack_col else ZERO
        if slack_coef == 1:
            init_col[i] = slack_col[i]
        else:
            init_col[i] = art_start + len(art_rows)
            art_rows.append(i)
    ncols = art_start + len(art_rows)

    T = []
    b = []
    for i in range(m):
        row = [ZERO] * ncols
        sign = flip[i]
        for j, v in rows[i].items():
            row[j] = v * sign
        if i in slack_col:
            row[slack_col[i]] = (ONE if senses[i] == LE else -ONE) * sign
        if init_col[i] >= art_start:
            row[init_col[i]] = ONE
        T.append(row)
        b.append(rhs[i] * sign)

    barred = [False] * ncols
    tab = _Tableau(T, b, list(init_col), barred)

    # phase 1
    cost1 = [ZERO] * ncols
    for j in range(art_start, ncols):
        cost1[j] = ONE
    tab.set_costs(cost1)
    tab.run()
    if tab.val > 0:
        y_std = [cost1[init_col[i]] - tab.rc[init_col[i]] for i in range(m)]
        y = [y_std[i] * flip[i] for i in range(m)]
        sol = LpSolution(Status.INFEASIBLE, farkas=y[:nrow_orig], pivots=tab.pivots)
        if prob.upper is not None:
            it = iter(y[nrow_orig:])
            sol.farkas_upper = [next(it) if u is not None else ZERO for u in prob.upper]
        if check:
            verify_farkas(prob, sol)
        return sol

    # drive zero-level artificials out of the basis, dropping redundant rows
    for j in range(art_start, ncols):
        barred[j] = True
    i = 0
    while i < len(tab.T):
        if tab.basis[i] >= art_start:
            row = tab.T[i]
            col = next((j for j in range(art_start) if row[j]), None)
            if col is None:
                del tab.T[i], tab.b[i], tab.basis[i]
                continue
            tab.pivot(i, col)
        i += 1

    cost2 = [ZERO] * ncols
    for j, c in enumerate(prob.objective):
        cost2[j] = Fraction(c)
    tab.set_costs(cost2)
    if not tab.run():
        return LpSolution(Status.UNBOUNDED, pivots=tab.pivots)
    x = [ZERO] * n
    for i, bj in enumerate(tab.basis):
        if bj < n:
            x[bj] = tab.b[i]
    value = sum((Fraction(c) * v for c, v in zip(prob.objective, x) if c and v), ZERO)
    sol = LpSolution(Status.OPTIMAL, point=x, value=value, pivots=tab.pivots)
    if check:
        verify_point(prob, x)
        assert value == tab.val, (value, tab.val)
    return sol


def row_dot(row: Row, x: Sequence[Fraction]) -> Fraction:
    items = row.items() if isinstance(row, Mapping) else enumerate(row)
    return sum((Fraction(v) * x[j] for j, v in items if v), ZERO)


def verify_point(prob: LpProblem, x: Sequence[Fraction]) -> None:
    """Raise AssertionError unless ``x`` satisfies every constraint exactly."""
    assert len(x) == prob.n
    assert all(v >= 0 for v in x), "negative variable"
    if prob.upper is not None:
        assert all(u is None or v <= u for v, u in zip(x, prob.upper)), "upper bound violated"
    for row, s, r in zip(prob.rows, prob.senses, prob.rhs):
        lhs = row_dot(row, x)
        ok = lhs <= r if s == LE else lhs >= r if s == GE else lhs == r
        assert ok, f"constraint violated: {lhs} {s} {r}"


def verify_farkas(prob: LpProblem, sol: LpSolution) -> None:
    y = sol.farkas
    yu = sol.farkas_upper or [ZERO] * prob.n
    for yi, s in zip(y, prob.senses):
        assert (s != LE or yi <= 0) and (s != GE or yi >= 0), "multiplier sign"
    assert all(v <= 0 for v in yu), "upper-bound multiplier sign"
    comb = [ZERO] * prob.n
    for yi, row in zip(y, prob.sparse_rows()):
        if yi:
            for j, v in row.items():
                comb[j] += yi * v
    for j, u in enumerate(yu):
        comb[j] += u
    assert all(v <= 0 for v in comb), "combination has a positive coefficient"
    total = sum((yi * r for yi, r in zip(y, prob.rhs)), ZERO)
    if prob.upper is not None:
        total += sum((u * Fraction(ub) for u, ub in zip(yu, prob.upper) if ub is not None), ZERO)
    assert total > 0, "combination is not contradictory"

"""Deciding whether a copula fits between A and B, with certificates.

For a rectangle multiset R with multiplicity field m,

    L(R) = sum_{m(y) > 0} B(y) m(y) + sum_{m(y) < 0} A(y) m(y)
         = V_B(R) + sum_y (B - A)(y) * max(0, -m(y)).

A copula C with A <= C <= B exists iff L(R) >= 0 for every R.  The infima
P_M(x), P_O(x) of L(R)/|m_R(x)| over R with m_R(x) > 0 (resp. < 0) are
computed as rational LPs over the cone spanned by rectangle patterns.  Every
rectangle pattern is the sum of the patterns of its elementary cells, so the
cells already span that cone; ``basis="rects"`` uses every grid rectangle
instead and gives the same optima on a larger LP.

LP columns are generator counts ``c_k >= 0`` plus, for each point y with
``B(y) > A(y)``, a slack ``s_y >= max(0, -m(y))`` charged at ``(B - A)(y)``.
At an optimum ``s_y = max(0, -m(y))`` exactly, so the LP value is ``L``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm

from . import ratlp
from .axioms import validate_function
from .grid import (
    GridFunction,
    MultiplicityField,
    Point,
    Rect,
    RectUnion,
    field_volume,
    multiplicity_field,
    same_mesh,
    volume,
)

INF = math.inf


class OrderViolated(ValueError):
    pass


class NotGroundedNeutral(ValueError):
    pass


class EmptyInterval(ValueError):
    pass


class ConditionFails(ValueError):
    pass


class TooLarge(ValueError):
    pass


def check_order(A: GridFunction, B: GridFunction) -> None:
    same_mesh(A, B)
    if not A <= B:
        raise OrderViolated("A <= B fails at some grid point")


def check_grounded_neutral(*fs: GridFunction) -> None:
    for f in fs:
        rep = validate_function(f, cap=1)
        if not (rep.grounded and rep.neutral):
            raise NotGroundedNeutral("inputs must be grounded with neutral element 1")


def l_functional(A: GridFunction, B: GridFunction, m: MultiplicityField) -> Fraction:
    check_order(A, B)
    same_mesh(A, m)
    total = Fraction(0)
    for pt, k in m.support():
        total += (B[pt] if k > 0 else A[pt]) * k
    return total


def union_l(A: GridFunction, B: GridFunction, u: RectUnion) -> Fraction:
    return l_functional(A, B, multiplicity_field(u, A.mesh))


@dataclass(frozen=True)
class Witness:
    union: RectUnion
    field: MultiplicityField
    l_value: Fraction

    @classmethod
    def build(cls, A: GridFunction, B: GridFunction, union: RectUnion) -> "Witness":
        m = multiplicity_field(union, A.mesh)
        return cls(union, m, l_functional(A, B, m))

    def holds_for(self, A: GridFunction, B: GridFunction) -> bool:
        return (
            self.l_value < 0
            and len(self.union) > 0
            and all(isinstance(n, int) and n > 0 for _, n in self.union)
            and multiplicity_field(self.union, A.mesh) == self.field
            and l_functional(A, B, self.field) == self.l_value
        )

    def as_dict(self) -> dict:
        from .gridio import fmt

        return {
            "rects": [dict(r.as_dict(), count=n) for r, n in self.union],
            "l_value": fmt(self.l_value),
        }


def _generators(mesh, basis: str) -> list[Rect]:
    if basis == "cells":
        return list(mesh.cells())
    if basis == "rects":
        return list(mesh.rects())
    raise ValueError(f"unknown basis {basis!r}")


def _pattern(r: Rect) -> tuple[tuple[Point, int], ...]:
    return ((r.a, 1), (r.c, 1), (r.b, -1), (r.d, -1))


class _ConeLP:
    """Column layout shared by the P-value and witness LPs."""

    def __init__(self, A: GridFunction, B: GridFunction, basis: str):
        self.A, self.B = A, B
        self.mesh = A.mesh
        self.gens = _generators(self.mesh, basis)
        self.gap_points = [pt for pt in self.mesh.points() if B[pt] > A[pt]]
        k = len(self.gens)
        self.slack_col = {pt: k + t for t, pt in enumerate(self.gap_points)}
        self.n = k + len(self.gap_points)

    def problem(self) -> ratlp.LpProblem:
        A, B = self.A, self.B
        obj = [volume(B, r) for r in self.gens]
        obj += [B[pt] - A[pt] for pt in self.gap_points]
        prob = ratlp.LpProblem(obj)
        rows = {pt: {} for pt in self.gap_points}
        for k, r in enumerate(self.gens):
            for pt, s in _pattern(r):
                if pt in rows:
                    rows[pt][k] = rows[pt].get(k, 0) + s
        for pt in self.gap_points:
            row = {k: Fraction(v) for k, v in rows[pt].items() if v}
            row[self.slack_col[pt]] = Fraction(1)
            prob.add(row, ratlp.GE, 0)
        return prob

    def point_row(self, x: Point) -> dict[int, Fraction]:
        row = {}
        for k, r in enumerate(self.gens):
            for pt, s in _pattern(r):
                if pt == x:
                    row[k] = row.get(k, 0) + Fraction(s)
        return {k: v for k, v in row.items() if v}

    def union_from(self, point: list[Fraction]) -> tuple[RectUnion, int]:
        """Scale the generator part of an LP point to integer counts."""
        counts = point[: len(self.gens)]
        den = 1
        for v in counts:
            den = lcm(den, v.denominator)
        u = RectUnion.of({r: int(v * den) for r, v in zip(self.gens, counts) if v})
        return u, den


@dataclass(frozen=True)
class PValue:
    """An infimum of L/|m(x)|; ``union`` is the optimal scaled LP vertex when finite."""

    value: Fraction | float
    union: RectUnion | None = None
    multiplicity: int = 0


def p_value(A: GridFunction, B: GridFunction, x: Point, anchor: str,
            basis: str = "cells") -> PValue:
    check_order(A, B)
    if anchor not in ("main", "opposite"):
        raise ValueError("anchor must be 'main' or 'opposite'")
    lp = _ConeLP(A, B, basis)
    row = lp.point_row(x)
    want = 1 if anchor == "main" else -1
    if not any(v * want > 0 for v in row.values()):
        return PValue(INF)
    prob = lp.problem()
    prob.add(row, ratlp.EQ, want)
    sol = ratlp.solve(prob)
    if sol.status is ratlp.Status.UNBOUNDED:
        return PValue(-INF)
    assert sol.optimal, sol.status
    u, den = lp.union_from(sol.point)
    assert union_l(A, B, u) == sol.value * den
    return PValue(sol.value, u, den)


def p_opposite(A: GridFunction, B: GridFunction, x: Point, basis: str = "cells"):
    return p_value(A, B, x, "opposite", basis).value


def p_main(A: GridFunction, B: GridFunction, x: Point, basis: str = "cells"):
    return p_value(A, B, x, "main", basis).value


def gamma(A: GridFunction, B: GridFunction, x: Point):
    return min(p_opposite(A, B, x), B[x] - A[x])


def negative_witness(A: GridFunction, B: GridFunction, basis: str = "cells") -> Witness | None:
    """Minimize L over the normalized cone; a negative optimum yields a witness."""
    check_order(A, B)
    lp = _ConeLP(A, B, basis)
    prob = lp.problem()
    prob.add({k: Fraction(1) for k in range(len(lp.gens))}, ratlp.EQ, 1)
    sol = ratlp.solve(prob)
    assert sol.optimal, sol.status
    if sol.value >= 0:
        return None
    u, _ = lp.union_from(sol.point)
    w = Witness.build(A, B, u)
    assert w.holds_for(A, B)
    return w


@dataclass
class SandwichResult:
    method: str
    copula: GridFunction | None = None
    witness: Witness | None = None
    lifts: list[tuple[Point, Fraction]] = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return self.copula is not None

    def as_dict(self) -> dict:
        from .gridio import fmt, to_json_obj

        d = {"method": self.method, "feasible": self.feasible}
        if self.copula is not None:
            d["copula"] = to_json_obj(self.copula)
            d["lifts"] = [{"point": list(pt), "amount": fmt(t)} for pt, t in self.lifts]
        if self.witness is not None:
            d["witness"] = self.witness.as_dict()
        return d


def _is_copula_between(C, A, B) -> bool:
    return A <= C <= B and validate_function(C, cap=1).is_discrete_copula


def _greedy_sweep(A: GridFunction, B: GridFunction, method: str) -> SandwichResult:
    mesh = A.mesh
    cur = A
    lifts = []
    for x in mesh.points():
        if cur[x] == B[x]:
            continue
        pv = p_value(cur, B, x, "opposite")
        t0 = min(pv.value, B[x] - cur[x])
        if t0 < 0:
            # L < 0 somewhere: the P_O vertex itself is a certificate when finite
            if pv.union is not None:
                w = Witness.build(cur, B, pv.union)
                w = Witness.build(A, B, w.union)
                if w.l_value < 0:
                    return SandwichResult(method, witness=w, lifts=lifts)
            return _infeasible(A, B, method, lifts)
        if t0 > 0:
            cur = cur.replace({x: cur[x] + t0})
            lifts.append((x, t0))

    # every untouched gap must now have P_O = 0
    for x in mesh.points():
        if cur[x] < B[x]:
            g = min(p_opposite(cur, B, x), B[x] - cur[x])
            if g < 0:
                return _infeasible(A, B, method, lifts)
            if g > 0:
                raise RuntimeError(f"greedy sweep left gamma={g} > 0 at {x}")

    if validate_function(cur, cap=1).increasing2:
        assert _is_copula_between(cur, A, B)
        return SandwichResult(method, copula=cur, lifts=lifts)
    return _infeasible(A, B, method, lifts)


def _infeasible(A, B, method, lifts) -> SandwichResult:
    w = negative_witness(A, B)
    if w is None:
        raise RuntimeError("no copula was produced yet L >= 0 holds; inconsistent state")
    return SandwichResult(method, witness=w, lifts=lifts)


def sandwich_greedy(A: GridFunction, B: GridFunction) -> SandwichResult:
    """Raise A point by point (row-major) by gamma until it is a copula or L < 0 shows up."""
    check_grounded_neutral(A, B)
    check_order(A, B)
    return _greedy_sweep(A, B, "greedy")


def sandwich_lp_oracle(A: GridFunction, B: GridFunction) -> SandwichResult:
    """Direct feasibility LP for C = A + z, 0 <= z <= B - A, all cell volumes >= 0.

    On infeasibility the Farkas multipliers of the cell rows are themselves
    cell counts with L < 0, which is returned as the witness.
    """
    check_grounded_neutral(A, B)
    check_order(A, B)
    mesh = A.mesh
    p, q = mesh.p, mesh.q
    free = [pt for pt in mesh.points()
            if 0 < pt[0] < p and 0 < pt[1] < q and B[pt] > A[pt]]
    col = {pt: k for k, pt in enumerate(free)}
    prob = ratlp.LpProblem([Fraction(0)] * len(free),
                           upper=[B[pt] - A[pt] for pt in free])
    cells = list(mesh.cells())
    for r in cells:
        row = {}
        for pt, s in _pattern(r):
            if pt in col:
                row[col[pt]] = row.get(col[pt], 0) + Fraction(s)
        prob.add(row, ratlp.GE, -volume(A, r))
    sol = ratlp.solve(prob)
    if sol.optimal:
        C = A.replace({pt: A[pt] + sol.point[k] for pt, k in col.items()})
        assert _is_copula_between(C, A, B)
        return SandwichResult("lp-oracle", copula=C)
    assert sol.status is ratlp.Status.INFEASIBLE
    y = sol.farkas
    den = 1
    for v in y:
        den = lcm(den, v.denominator)
    u = RectUnion.of({r: int(v * den) for r, v in zip(cells, y) if v})
    w = Witness.build(A, B, u)
    assert w.holds_for(A, B), "Farkas multipliers did not give L < 0"
    return SandwichResult("lp-oracle", witness=w)


def brute_force_p(A: GridFunction, B: GridFunction, x: Point, anchor: str,
                  max_total_count: int = 3, limit: int = 3_000_000):
    """Exhaustive min of L/|m(x)| over rectangle multisets of total count <= max_total_count."""
    return brute_force_table(A, B, [x], anchor, max_total_count, limit)[x]


def brute_force_table(A: GridFunction, B: GridFunction, points, anchor: str,
                      max_total_count: int = 3, limit: int = 3_000_000) -> dict:
    import numpy as np

    check_order(A, B)
    mesh = A.mesh
    rects = list(mesh.rects())
    R = len(rects)
    total = sum(comb(R + k - 1, k) for k in range(1, max_total_count + 1))
    if total > limit:
        raise TooLarge(f"{total} multisets exceed the limit {limit}")
    pts = list(mesh.points())
    index = {pt: t for t, pt in enumerate(pts)}
    P = np.zeros((R, len(pts)), dtype=np.int64)
    for k, r in enumerate(rects):
        for pt, s in _pattern(r):
            P[k, index[pt]] += s
    den = lcm(A.common_denominator(), B.common_denominator())
    Ai = np.array([int(A[pt] * den) for pt in pts], dtype=np.int64)
    Bi = np.array([int(B[pt] * den) for pt in pts], dtype=np.int64)
    sign = 1 if anchor == "main" else -1

    best = {x: INF for x in points}
    for k in range(1, max_total_count + 1):
        idx = np.array(list(itertools.combinations_with_replacement(range(R), k)), dtype=np.int64)
        M = P[idx].sum(axis=1)
        L = (np.clip(M, 0, None) * Bi).sum(axis=1) - (np.clip(-M, 0, None) * Ai).sum(axis=1)
        for x in points:
            mx = M[:, index[x]] * sign
            for mult in np.unique(mx[mx > 0]):
                cand = Fraction(int(L[mx == mult].min()), den * int(mult))
                if cand < best[x]:
                    best[x] = cand
    return best


@dataclass
class ExtremalityReport:
    upper_extremal: bool
    lower_extremal: bool
    upper_failing: list[tuple[Point, Fraction, Fraction]] = field(default_factory=list)
    lower_failing: list[tuple[Point, Fraction, Fraction]] = field(default_factory=list)

    @property
    def failing_points(self):
        return self.upper_failing + self.lower_failing

    def as_dict(self) -> dict:
        from .gridio import fmt

        def rows(items):
            return [{"point": list(pt), "gap": fmt(g), "p": fmt(v)} for pt, g, v in items]

        return {
            "upper_extremal": self.upper_extremal,
            "lower_extremal": self.lower_extremal,
            "upper_failing": rows(self.upper_failing),
            "lower_failing": rows(self.lower_failing),
        }


def check_extremality(A: GridFunction, B: GridFunction) -> ExtremalityReport:
    """B is the pointwise sup of the copulas in [A, B] iff B - A <= P_O everywhere;
    A is their inf iff B - A <= P_M everywhere."""
    if not sandwich_lp_oracle(A, B).feasible:
        raise EmptyInterval("no copula lies between A and B")
    upper, lower = [], []
    for x in A.mesh.points():
        gap = B[x] - A[x]
        if gap == 0:
            continue
        po = p_opposite(A, B, x)
        if gap > po:
            upper.append((x, gap, po))
        pm = p_main(A, B, x)
        if gap > pm:
            lower.append((x, gap, pm))
    return ExtremalityReport(not upper, not lower, upper, lower)


def construct_through_point(A: GridFunction, B: GridFunction, x: Point) -> GridFunction:
    """A copula C in [A, B] with C(x) = B(x), when B(x) - A(x) <= P_O(x)."""
    check_grounded_neutral(A, B)
    check_order(A, B)
    if not sandwich_lp_oracle(A, B).feasible:
        raise EmptyInterval("no copula lies between A and B")
    gap = B[x] - A[x]
    if gap > p_opposite(A, B, x):
        raise ConditionFails(f"B - A = {gap} exceeds P_O at {x}")
    res = _greedy_sweep(A.replace({x: B[x]}), B, "greedy")
    if not res.feasible:
        raise RuntimeError("lifting to B(x) should preserve L >= 0")
    assert _is_copula_between(res.copula, A, B) and res.copula[x] == B[x]
    return res.copula

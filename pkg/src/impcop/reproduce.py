"""Recompute every published matrix and claim of the two worked examples."""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import fixtures as fx
from .axioms import validate_function, validate_imprecise_pair
from .defects import corner_defects, drop_O, iterate_pair, lift_M
from .feasibility import negative_witness, sandwich_greedy, sandwich_lp_oracle, union_l
from .grid import cell_volume_matrix


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0


def _run(name, fn) -> Check:
    t = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # reported, not raised: this is a report card
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return Check(name, bool(ok), detail, time.perf_counter() - t)


def checks() -> list[Check]:
    A7, B7 = fx.ex7_A(), fx.ex7_B()
    A10, B10 = fx.ex10_A(), fx.ex10_B()

    def ex7_trace():
        tr = iterate_pair(A7, B7)
        return tr.converged and tr.steps == 0 and tr.stalled, f"steps={tr.steps}"

    def ex7_contains_copula():
        g, o = sandwich_greedy(A7, B7), sandwich_lp_oracle(A7, B7)
        return g.feasible == o.feasible, f"greedy={g.feasible} lp={o.feasible}"

    def ex10_pair():
        r = validate_imprecise_pair(A10, B10)
        return r.is_imprecise_copula, f"ic1..4={r.ic1, r.ic2, r.ic3, r.ic4}"

    def ex10_quasi():
        r = validate_function(A10)
        return r.is_discrete_quasi_copula and not r.is_discrete_copula, f"failures={r.failures}"

    def infeasible():
        g, o = sandwich_greedy(A10, B10), sandwich_lp_oracle(A10, B10)
        ok = not g.feasible and not o.feasible
        ok = ok and g.witness.holds_for(A10, B10) and o.witness.holds_for(A10, B10)
        return ok, f"greedy L={g.witness.l_value} lp L={o.witness.l_value}"

    def witness():
        w = negative_witness(A10, B10)
        return w is not None and w.l_value < 0, f"L={w.l_value if w else None}"

    def region():
        v = union_l(A10, B10, fx.depression_region())
        return v < 0, f"L={v}"

    return [
        _run("ex7: A_M == B", lambda: (lift_M(A7) == B7, "")),
        _run("ex7: B_O == A", lambda: (drop_O(B7) == A7, "")),
        _run("ex7: iteration stationary with A != B", ex7_trace),
        _run("ex7: greedy and LP agree on existence", ex7_contains_copula),
        _run("ex10: D_M matrix", lambda: (corner_defects(A10).d_M == fx.ex10_DM(), "")),
        _run("ex10: B = A - D_M", lambda: (lift_M(A10) == B10, "")),
        _run("ex10: cell volume matrix V", lambda: (cell_volume_matrix(A10) == fx.ex10_V(), "")),
        _run("ex10: A quasi-copula, not copula", ex10_quasi),
        _run("ex10: (A, B) imprecise copula", ex10_pair),
        _run("ex10: no copula in [A, B]", infeasible),
        _run("ex10: LP witness with L < 0", witness),
        _run("ex10: 21-cell region has L < 0", region),
    ]

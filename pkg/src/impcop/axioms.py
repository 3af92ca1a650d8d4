"""Axiom checks for discrete (quasi-)copulas and imprecise pairs.

Every check enumerates all grid rectangles; nothing is sampled.  Witness
lists are capped (``cap``) but counting continues past the cap.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .grid import GridFunction, Point, Rect, same_mesh, volume
from .gridio import fmt

DEFAULT_CAP = 16


@dataclass
class Failure:
    tag: str
    where: Rect | Point
    value: Fraction

    def as_dict(self) -> dict:
        where = self.where.as_dict() if isinstance(self.where, Rect) else list(self.where)
        return {"tag": self.tag, "where": where, "value": fmt(self.value)}


@dataclass
class ValidationReport:
    grounded: bool = True
    neutral: bool = True
    increasing1: bool = True
    increasing2: bool = True
    quasi_increasing2: bool = True
    failures: dict[str, int] = field(default_factory=dict)
    witnesses: list[Failure] = field(default_factory=list)

    @property
    def is_discrete_copula(self) -> bool:
        return self.grounded and self.neutral and self.increasing2

    @property
    def is_discrete_quasi_copula(self) -> bool:
        return self.grounded and self.neutral and self.quasi_increasing2

    def as_dict(self) -> dict:
        d = {k: v for k, v in asdict(self).items() if k not in ("witnesses",)}
        d["is_discrete_copula"] = self.is_discrete_copula
        d["is_discrete_quasi_copula"] = self.is_discrete_quasi_copula
        d["witnesses"] = [w.as_dict() for w in self.witnesses]
        return d


class _Collector:
    def __init__(self, cap: int):
        self.cap = cap
        self.counts: dict[str, int] = {}
        self.witnesses: list[Failure] = []

    def add(self, tag, where, value):
        self.counts[tag] = self.counts.get(tag, 0) + 1
        if len(self.witnesses) < self.cap:
            self.witnesses.append(Failure(tag, where, value))


def validate_function(F: GridFunction, cap: int = DEFAULT_CAP) -> ValidationReport:
    mesh = F.mesh
    p, q = mesh.p, mesh.q
    col = _Collector(cap)

    for i in range(p + 1):
        if F[i, 0] != 0:
            col.add("grounded", (i, 0), F[i, 0])
        if F[i, q] != mesh.xs[i]:
            col.add("neutral", (i, q), F[i, q])
    for j in range(q + 1):
        if F[0, j] != 0:
            col.add("grounded", (0, j), F[0, j])
        if F[p, j] != mesh.ys[j]:
            col.add("neutral", (p, j), F[p, j])

    for i in range(p + 1):
        for j in range(q + 1):
            if i < p and F[i + 1, j] < F[i, j]:
                col.add("increasing1", (i, j), F[i + 1, j] - F[i, j])
            if j < q and F[i, j + 1] < F[i, j]:
                col.add("increasing1", (i, j), F[i, j + 1] - F[i, j])

    for r in mesh.rects():
        v = volume(F, r)
        if v < 0:
            tag = "quasi_increasing2" if r.touches_boundary(mesh) else "increasing2"
            col.add(tag, r, v)

    c = col.counts
    return ValidationReport(
        grounded="grounded" not in c,
        neutral="neutral" not in c,
        increasing1="increasing1" not in c,
        increasing2="increasing2" not in c and "quasi_increasing2" not in c,
        quasi_increasing2="quasi_increasing2" not in c,
        failures=dict(c),
        witnesses=col.witnesses,
    )


# Coefficient pattern (a, c, b, d) -> which function supplies each corner.
IC_FORMS = {
    "ic1": ("A", "B", "A", "A"),
    "ic2": ("B", "A", "A", "A"),
    "ic3": ("B", "B", "B", "A"),
    "ic4": ("B", "B", "A", "B"),
}


def ic_value(tag: str, A: GridFunction, B: GridFunction, r: Rect) -> Fraction:
    src = {"A": A, "B": B}
    fa, fc, fb, fd = (src[k] for k in IC_FORMS[tag])
    return fa[r.a] + fc[r.c] - fb[r.b] - fd[r.d]


@dataclass
class PairReport:
    ic1: bool = True
    ic2: bool = True
    ic3: bool = True
    ic4: bool = True
    order_ok: bool = True
    a_report: ValidationReport | None = None
    b_report: ValidationReport | None = None
    failures: dict[str, int] = field(default_factory=dict)
    witnesses: list[Failure] = field(default_factory=list)

    @property
    def boundary_ok(self) -> bool:
        return all(r.grounded and r.neutral for r in (self.a_report, self.b_report))

    @property
    def is_imprecise_copula(self) -> bool:
        return self.ic1 and self.ic2 and self.ic3 and self.ic4 and self.boundary_ok

    @property
    def components_quasi_copulas(self) -> bool:
        return self.a_report.is_discrete_quasi_copula and self.b_report.is_discrete_quasi_copula

    def as_dict(self) -> dict:
        return {
            "ic1": self.ic1, "ic2": self.ic2, "ic3": self.ic3, "ic4": self.ic4,
            "order_ok": self.order_ok,
            "boundary_ok": self.boundary_ok,
            "is_imprecise_copula": self.is_imprecise_copula,
            "components_quasi_copulas": self.components_quasi_copulas,
            "A": self.a_report.as_dict(),
            "B": self.b_report.as_dict(),
            "failures": self.failures,
            "witnesses": [w.as_dict() for w in self.witnesses],
        }


def validate_imprecise_pair(A: GridFunction, B: GridFunction, cap: int = DEFAULT_CAP) -> PairReport:
    mesh = same_mesh(A, B)
    col = _Collector(cap)
    for pt in mesh.points():
        if A[pt] > B[pt]:
            col.add("order", pt, B[pt] - A[pt])
    for r in mesh.rects():
        for tag in IC_FORMS:
            v = ic_value(tag, A, B, r)
            if v < 0:
                col.add(tag, r, v)
    c = col.counts
    return PairReport(
        ic1="ic1" not in c, ic2="ic2" not in c, ic3="ic3" not in c, ic4="ic4" not in c,
        order_ok="order" not in c,
        a_report=validate_function(A, cap),
        b_report=validate_function(B, cap),
        failures=dict(c),
        witnesses=col.witnesses,
    )

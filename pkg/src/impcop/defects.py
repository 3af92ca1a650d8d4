"""Corner defects, the raising/lowering transforms and their alternating iteration.

For a grid point x the four anchored defects are

    d_ne(x)  min volume over rectangles whose SW corner is x   (x main)
    d_sw(x)  ... whose NE corner is x                          (x main)
    d_nw(x)  ... whose NW corner is x                          (x opposite)
    d_se(x)  ... whose SE corner is x                          (x opposite)

each clamped at 0 from above, so points with no anchored rectangle get 0.
``d_M = min(d_ne, d_sw)`` and ``d_O = min(d_nw, d_se)``.  The raising
transform is ``F_M = F - d_M`` and the lowering one is ``F_O = F + d_O``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .axioms import validate_function, validate_imprecise_pair
from .grid import GridFunction


class NotImprecisePair(ValueError):
    pass


@dataclass(frozen=True)
class DefectBundle:
    d_ne: GridFunction
    d_sw: GridFunction
    d_nw: GridFunction
    d_se: GridFunction
    d_M: GridFunction
    d_O: GridFunction


def corner_defects(F: GridFunction) -> DefectBundle:
    mesh = F.mesh
    p, q = mesh.p, mesh.q
    v = F.values
    zero = Fraction(0)
    ne = [[zero] * (q + 1) for _ in range(p + 1)]
    sw = [[zero] * (q + 1) for _ in range(p + 1)]
    nw = [[zero] * (q + 1) for _ in range(p + 1)]
    se = [[zero] * (q + 1) for _ in range(p + 1)]
    # each rectangle updates the four anchors it belongs to
    for i1 in range(p):
        for i2 in range(i1 + 1, p + 1):
            for j1 in range(q):
                for j2 in range(j1 + 1, q + 1):
                    vol = v[i1][j1] + v[i2][j2] - v[i2][j1] - v[i1][j2]
                    if vol < 0:
                        if vol < ne[i1][j1]:
                            ne[i1][j1] = vol
                        if vol < sw[i2][j2]:
                            sw[i2][j2] = vol
                        if vol < nw[i1][j2]:
                            nw[i1][j2] = vol
                        if vol < se[i2][j1]:
                            se[i2][j1] = vol

    def gf(rows):
        return GridFunction(mesh, tuple(tuple(r) for r in rows))

    d_ne, d_sw, d_nw, d_se = gf(ne), gf(sw), gf(nw), gf(se)
    return DefectBundle(d_ne, d_sw, d_nw, d_se, d_ne.meet(d_sw), d_nw.meet(d_se))


def lift_M(F: GridFunction) -> GridFunction:
    return F - corner_defects(F).d_M


def drop_O(F: GridFunction) -> GridFunction:
    return F + corner_defects(F).d_O


DEFAULT_MAX_STEPS = 64


@dataclass
class IterationTrace:
    pairs: list[tuple[GridFunction, GridFunction]] = field(default_factory=list)
    converged: bool = False
    steps: int = 0

    @property
    def limit(self) -> tuple[GridFunction, GridFunction]:
        return self.pairs[-1]

    @property
    def collapsed(self) -> bool:
        """The stationary pair has equal components, i.e. is a copula."""
        a, b = self.limit
        return self.converged and a == b

    @property
    def stalled(self) -> bool:
        a, b = self.limit
        return self.converged and a != b

    def limit_is_copula(self) -> bool:
        return self.collapsed and validate_function(self.limit[0]).is_discrete_copula


def iterate_pair(A: GridFunction, B: GridFunction, max_steps: int = DEFAULT_MAX_STEPS,
                 check: bool = True) -> IterationTrace:
    """Alternate ``B' = A_M``, ``A' = (B')_O`` until exactly stationary.

    A pair is stationary when one more step reproduces it; ``steps`` counts the
    steps that changed something.
    """
    if check and not validate_imprecise_pair(A, B).is_imprecise_copula:
        raise NotImprecisePair("input is not a discrete imprecise copula")
    trace = IterationTrace(pairs=[(A, B)])
    for _ in range(max_steps + 1):
        a, b = trace.pairs[-1]
        nb = lift_M(a)
        na = drop_O(nb)
        if (na, nb) == (a, b):
            trace.converged = True
            break
        if trace.steps == max_steps:
            break
        trace.pairs.append((na, nb))
        trace.steps += 1
    return trace

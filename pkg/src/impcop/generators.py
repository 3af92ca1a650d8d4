"""Random discrete copulas and imprecise pairs for cross-checks.

A discrete copula on a mesh is the cumulative sum of a transportation plan
whose row masses are the x-cell widths and column masses the y-cell widths.
Plans are rational convex combinations of north-west-corner vertices taken
under random row/column orders.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .axioms import validate_imprecise_pair
from .defects import drop_O, lift_M
from .grid import GridFunction, Mesh, make_mesh, uniform_mesh


def random_mesh(rng: random.Random, p: int, q: int, uniform: bool | None = None) -> Mesh:
    if uniform is None:
        uniform = rng.random() < 0.5
    if uniform:
        return uniform_mesh(p, q)

    def axis(n):
        den = rng.choice([2 * n, 3 * n, 12])
        while True:
            inner = sorted(rng.sample(range(1, den), n - 1)) if den > n else []
            if len(inner) == n - 1:
                return [Fraction(0)] + [Fraction(k, den) for k in inner] + [Fraction(1)]
            den += n

    return make_mesh(axis(p), axis(q))


def _nw_corner(rows: list[Fraction], cols: list[Fraction], rng: random.Random):
    ri = list(range(len(rows)))
    ci = list(range(len(cols)))
    rng.shuffle(ri)
    rng.shuffle(ci)
    r = {i: rows[i] for i in ri}
    c = {j: cols[j] for j in ci}
    plan = [[Fraction(0)] * len(cols) for _ in rows]
    a = b = 0
    while a < len(ri) and b < len(ci):
        i, j = ri[a], ci[b]
        t = min(r[i], c[j])
        plan[i][j] += t
        r[i] -= t
        c[j] -= t
        if r[i] == 0:
            a += 1
        if c[j] == 0:
            b += 1
    return plan


def random_mass(mesh: Mesh, rng: random.Random, vertices: int = 3) -> list[list[Fraction]]:
    rows = [v - u for u, v in zip(mesh.xs, mesh.xs[1:])]
    cols = [v - u for u, v in zip(mesh.ys, mesh.ys[1:])]
    weights = [rng.randint(1, 4) for _ in range(vertices)]
    tot = sum(weights)
    mass = [[Fraction(0)] * len(cols) for _ in rows]
    for w in weights:
        plan = _nw_corner(rows, cols, rng)
        for i, row in enumerate(plan):
            for j, v in enumerate(row):
                mass[i][j] += v * Fraction(w, tot)
    return mass


def copula_from_mass(mesh: Mesh, mass: list[list[Fraction]]) -> GridFunction:
    p, q = mesh.p, mesh.q
    vals = [[Fraction(0)] * (q + 1) for _ in range(p + 1)]
    for i in range(1, p + 1):
        for j in range(1, q + 1):
            vals[i][j] = vals[i - 1][j] + vals[i][j - 1] - vals[i - 1][j - 1] + mass[i - 1][j - 1]
    return GridFunction.from_rows(mesh, vals)


def random_copula(mesh: Mesh, rng: random.Random, vertices: int | None = None) -> GridFunction:
    return copula_from_mass(mesh, random_mass(mesh, rng, vertices or rng.randint(1, 4)))


KINDS = ("envelope", "lift", "drop", "lift-of-join", "squeeze")


def random_pair(mesh: Mesh, rng: random.Random, kind: str | None = None,
                max_tries: int = 50) -> tuple[GridFunction, GridFunction, str]:
    """A random discrete imprecise copula on ``mesh``.

    envelope      (min, max) of a few random copulas; always contains a copula
    lift          (Q, Q_M) for Q the max of random copulas
    drop          (Q_O, Q) for Q the min of random copulas
    lift-of-join  (Q, Q_M) for Q the max of a min-pair and a copula
    squeeze       an envelope whose lower end is pushed up at random points
    """
    for _ in range(max_tries):
        k = kind or rng.choice(KINDS)
        cs = [random_copula(mesh, rng) for _ in range(rng.randint(2, 4))]
        lo, hi = cs[0], cs[0]
        for c in cs[1:]:
            lo, hi = lo.meet(c), hi.join(c)
        if k == "envelope":
            A, B = lo, hi
        elif k == "lift":
            A, B = hi, lift_M(hi)
        elif k == "drop":
            A, B = drop_O(lo), lo
        elif k == "lift-of-join":
            Q = cs[0].meet(cs[1]).join(cs[-1] if len(cs) > 2 else random_copula(mesh, rng))
            A, B = Q, lift_M(Q)
        elif k == "squeeze":
            upd = {}
            for pt in mesh.points():
                if hi[pt] > lo[pt] and rng.random() < 0.4:
                    upd[pt] = lo[pt] + (hi[pt] - lo[pt]) * Fraction(rng.randint(1, 3), 4)
            A, B = lo.replace(upd), hi
        else:
            raise ValueError(f"unknown kind {k!r}")
        if validate_imprecise_pair(A, B, cap=0).is_imprecise_copula:
            return A, B, k
    raise RuntimeError(f"no imprecise pair of kind {kind!r} after {max_tries} tries")


def random_quasi_pair(mesh: Mesh, rng: random.Random) -> tuple[GridFunction, GridFunction]:
    """Quasi-copulas A <= B around a random lattice polynomial of copulas.

    Not necessarily an imprecise pair; the interval may or may not hold a copula.
    """
    cs = [random_copula(mesh, rng, 1) for _ in range(4)]
    Q = cs[0].meet(cs[1]).join(cs[2].meet(cs[3]))
    lo = Q.meet(random_copula(mesh, rng)) if rng.random() < 0.5 else Q
    hi = Q.join(random_copula(mesh, rng)) if rng.random() < 0.5 else Q
    return lo, hi


def symmetric_variants(A: GridFunction, B: GridFunction):
    """The pair under the eight symmetries of the square (reflections and transpose)."""
    from .transform import reflect_pair, transpose

    pairs = [(A, B)]
    for axis in ("x", "y"):
        pairs += [reflect_pair(a, b, axis) for a, b in pairs]
    pairs += [(transpose(a), transpose(b)) for a, b in pairs]
    return pairs


def counterexample_family() -> list[tuple[GridFunction, GridFunction]]:
    """Infeasible imprecise pairs: every iterate of the 10x10 example, under all symmetries."""
    from .defects import iterate_pair
    from .fixtures import ex10_A, ex10_B

    trace = iterate_pair(ex10_A(), ex10_B())
    out = []
    for a, b in trace.pairs:
        out.extend(symmetric_variants(a, b))
    return out

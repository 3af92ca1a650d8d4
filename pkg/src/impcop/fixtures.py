"""Embedded example data and the standard copula generators.

``ex7-*`` matrices are in units of 1/7 on the mesh k/7, ``ex10-*`` in units
of 1/50 on the mesh k/10.  Rows index x.
"""

from __future__ import annotations

from fractions import Fraction

from .grid import GridFunction, Mesh, Rect, RectUnion, uniform_mesh

EX7_A = [
    [0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 1],
    [0, 0, 0, 0, 0, 1, 2, 2],
    [0, 0, 0, 0, 1, 2, 2, 3],
    [0, 0, 0, 1, 2, 2, 3, 4],
    [0, 0, 1, 2, 2, 3, 4, 5],
    [0, 1, 2, 2, 3, 4, 5, 6],
    [0, 1, 2, 3, 4, 5, 6, 7],
]

EX7_B = [
    [0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 1, 1],
    [0, 0, 0, 0, 1, 2, 2, 2],
    [0, 0, 0, 1, 2, 2, 3, 3],
    [0, 0, 1, 2, 2, 3, 4, 4],
    [0, 1, 2, 2, 3, 4, 4, 5],
    [0, 1, 2, 3, 4, 4, 5, 6],
    [0, 1, 2, 3, 4, 5, 6, 7],
]

EX10_A = [
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 2, 3, 4, 5, 5, 5, 5, 5],
    [0, 1, 2, 3, 3, 4, 5, 10, 10, 10, 10],
    [0, 2, 2, 5, 7, 7, 8, 13, 15, 15, 15],
    [0, 3, 3, 6, 7, 7, 8, 13, 18, 20, 20],
    [0, 4, 4, 6, 9, 11, 11, 16, 21, 25, 25],
    [0, 5, 5, 7, 9, 11, 11, 16, 21, 26, 30],
    [0, 5, 10, 12, 14, 16, 16, 21, 26, 31, 35],
    [0, 5, 10, 15, 19, 21, 21, 26, 31, 36, 40],
    [0, 5, 10, 15, 20, 25, 26, 31, 36, 41, 45],
    [0, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50],
]

EX10_DM = [
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, -1, -1, -1, -1, -1, 0, 0, 0, 0, 0],
    [0, -1, 0, 0, -1, -1, -1, 0, 0, 0, 0],
    [0, -1, -1, -1, 0, -1, -1, -1, 0, 0, 0],
    [0, -1, -1, 0, -1, -1, -1, -1, 0, 0, 0],
    [0, -1, -1, -1, 0, 0, -1, -1, -1, 0, 0],
    [0, 0, -1, -1, -1, -1, -1, -1, -1, 0, 0],
    [0, 0, 0, -1, -1, -1, -1, -1, -1, 0, 0],
    [0, 0, 0, 0, 0, 0, -1, -1, -1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
]

EX10_B = [
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 2, 3, 4, 5, 5, 5, 5, 5, 5],
    [0, 2, 2, 3, 4, 5, 6, 10, 10, 10, 10],
    [0, 3, 3, 6, 7, 8, 9, 14, 15, 15, 15],
    [0, 4, 4, 6, 8, 8, 9, 14, 18, 20, 20],
    [0, 5, 5, 7, 9, 11, 12, 17, 22, 25, 25],
    [0, 5, 6, 8, 10, 12, 12, 17, 22, 26, 30],
    [0, 5, 10, 13, 15, 17, 17, 22, 27, 31, 35],
    [0, 5, 10, 15, 19, 21, 22, 27, 32, 36, 40],
    [0, 5, 10, 15, 20, 25, 26, 31, 36, 41, 45],
    [0, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50],
]

# cell volumes of ex10-A; entry [i-1][j-1] is the cell [x_{i-1},x_i] x [y_{j-1},y_j]
EX10_V = [
    [0, 1, 1, 1, 1, 1, 0, 0, 0, 0],
    [1, 0, 0, -1, 0, 0, 5, 0, 0, 0],
    [1, -1, 2, 2, -1, 0, 0, 2, 0, 0],
    [1, 0, 0, -1, 0, 0, 0, 3, 2, 0],
    [1, 0, -1, 2, 2, -1, 0, 0, 2, 0],
    [1, 0, 0, -1, 0, 0, 0, 0, 1, 4],
    [0, 5, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 3, 2, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 3, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 4, 0, 0, 0, 1],
]

# 1-indexed (row, col) of the two 2-cell "hills" in EX10_V
EX10_HILLS = [(3, 3), (3, 4), (5, 4), (5, 5)]

MESH7 = uniform_mesh(7)
MESH10 = uniform_mesh(10)


def ex7_A() -> GridFunction:
    return GridFunction.from_rows(MESH7, EX7_A, Fraction(1, 7))


def ex7_B() -> GridFunction:
    return GridFunction.from_rows(MESH7, EX7_B, Fraction(1, 7))


def ex10_A() -> GridFunction:
    return GridFunction.from_rows(MESH10, EX10_A, Fraction(1, 50))


def ex10_DM() -> GridFunction:
    return GridFunction.from_rows(MESH10, EX10_DM, Fraction(1, 50))


def ex10_B() -> GridFunction:
    return GridFunction.from_rows(MESH10, EX10_B, Fraction(1, 50))


def ex10_V() -> list[list[Fraction]]:
    return [[Fraction(v, 50) for v in row] for row in EX10_V]


def depression_region() -> RectUnion:
    """The 21 cells in rows/cols 2..6 of ``EX10_V`` except the four hill cells."""
    cells = [Rect(i - 1, i, j - 1, j)
             for i in range(2, 7) for j in range(2, 7) if (i, j) not in EX10_HILLS]
    return RectUnion.of(cells)


def product(mesh: Mesh) -> GridFunction:
    return GridFunction.from_callable(mesh, lambda x, y: x * y)


def upper_bound(mesh: Mesh) -> GridFunction:
    """Frechet-Hoeffding upper bound min(x, y)."""
    return GridFunction.from_callable(mesh, min)


def lower_bound(mesh: Mesh) -> GridFunction:
    """Frechet-Hoeffding lower bound max(x + y - 1, 0)."""
    return GridFunction.from_callable(mesh, lambda x, y: max(x + y - 1, Fraction(0)))


STATIC = {
    "ex7-A": ex7_A,
    "ex7-B": ex7_B,
    "ex10-A": ex10_A,
    "ex10-DM": ex10_DM,
    "ex10-B": ex10_B,
}

GENERATORS = {
    "pi": product,
    "min": upper_bound,
    "wbound": lower_bound,
}

# display denominators for the static fixtures
DENOMS = {"ex7-A": 7, "ex7-B": 7, "ex10-A": 50, "ex10-DM": 50, "ex10-B": 50}


def names() -> list[str]:
    return sorted(STATIC) + ["ex10-V"] + [f"{g}@n" for g in sorted(GENERATORS)]


def get(name: str) -> GridFunction:
    """Resolve ``ex10-A`` style names and ``pi@5`` / ``min@3x4`` generator names."""
    if name in STATIC:
        return STATIC[name]()
    gen, _, size = name.partition("@")
    if gen in GENERATORS and size:
        n, _, m = size.partition("x")
        return GENERATORS[gen](uniform_mesh(int(n), int(m) if m else None))
    raise KeyError(f"unknown fixture {name!r}; known: {', '.join(names())}")

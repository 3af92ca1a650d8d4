"""Exact-rational meshes, grid functions, rectangles and multiplicity fields.

Conventions
-----------
A mesh is ``xs x ys`` with ``xs[0] = ys[0] = 0`` and ``xs[-1] = ys[-1] = 1``.
Grid values are stored row-major with rows indexing x:
``values[i][j] = F(xs[i], ys[j])``.  A rectangle is stored by mesh indices
``(i1, i2, j1, j2)`` with ``i1 < i2`` and ``j1 < j2``; its corners are

    a = (i1, j1)  southwest, main
    b = (i2, j1)  southeast, opposite
    c = (i2, j2)  northeast, main
    d = (i1, j2)  northwest, opposite

so that ``V_F(R) = F(a) + F(c) - F(b) - F(d)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Iterable, Iterator, Sequence

Point = tuple[int, int]


class GridError(ValueError):
    """Base class for malformed grid input."""


class NonMonotone(GridError):
    pass


class BadEndpoints(GridError):
    pass


class IndexOutOfRange(GridError):
    pass


class MeshMismatch(GridError):
    pass


def as_fraction(v) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are rejected."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool) or isinstance(v, float):
        raise TypeError(f"refusing inexact value {v!r}")
    if isinstance(v, (int, str)):
        return Fraction(v)
    raise TypeError(f"cannot interpret {v!r} as a rational")


@dataclass(frozen=True)
class Mesh:
    xs: tuple[Fraction, ...]
    ys: tuple[Fraction, ...]

    def __post_init__(self):
        for name, axis in (("xs", self.xs), ("ys", self.ys)):
            if len(axis) < 2:
                raise BadEndpoints(f"{name} needs at least two breakpoints")
            if axis[0] != 0 or axis[-1] != 1:
                raise BadEndpoints(f"{name} must start at 0 and end at 1")
            for u, v in zip(axis, axis[1:]):
                if not u < v:
                    raise NonMonotone(f"{name} not strictly increasing at {u}, {v}")

    @property
    def p(self) -> int:
        return len(self.xs) - 1

    @property
    def q(self) -> int:
        return len(self.ys) - 1

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.xs), len(self.ys)

    def points(self) -> Iterator[Point]:
        """Grid points in row-major order."""
        for i in range(self.p + 1):
            for j in range(self.q + 1):
                yield (i, j)

    def coords(self, pt: Point) -> tuple[Fraction, Fraction]:
        return self.xs[pt[0]], self.ys[pt[1]]

    def rects(self) -> Iterator["Rect"]:
        """All nondegenerate grid rectangles, ordered by index tuple."""
        p, q = self.p, self.q
        for i1 in range(p):
            for i2 in range(i1 + 1, p + 1):
                for j1 in range(q):
                    for j2 in range(j1 + 1, q + 1):
                        yield Rect(i1, i2, j1, j2)

    def cells(self) -> Iterator["Rect"]:
        for i in range(1, self.p + 1):
            for j in range(1, self.q + 1):
                yield Rect(i - 1, i, j - 1, j)

    def check_rect(self, r: "Rect") -> None:
        if r.i2 > self.p or r.j2 > self.q:
            raise IndexOutOfRange(f"{r} does not fit a {self.p}x{self.q}-cell mesh")

    def is_symmetric(self, axis: str) -> bool:
        pts = self.xs if axis == "x" else self.ys
        return all(pts[k] == 1 - pts[-1 - k] for k in range(len(pts)))


def make_mesh(xs: Iterable, ys: Iterable) -> Mesh:
    return Mesh(tuple(as_fraction(v) for v in xs), tuple(as_fraction(v) for v in ys))


def uniform_mesh(n: int, m: int | None = None) -> Mesh:
    """Mesh with ``n`` equal cells along x and ``m`` (default ``n``) along y."""
    m = n if m is None else m
    return make_mesh([Fraction(k, n) for k in range(n + 1)],
                     [Fraction(k, m) for k in range(m + 1)])


@dataclass(frozen=True, order=True)
class Rect:
    i1: int
    i2: int
    j1: int
    j2: int

    def __post_init__(self):
        if min(self.i1, self.j1) < 0:
            raise IndexOutOfRange(f"negative index in {self}")
        if not (self.i1 < self.i2 and self.j1 < self.j2):
            raise IndexOutOfRange(f"degenerate rectangle {self}")

    @property
    def a(self) -> Point:
        return (self.i1, self.j1)

    @property
    def b(self) -> Point:
        return (self.i2, self.j1)

    @property
    def c(self) -> Point:
        return (self.i2, self.j2)

    @property
    def d(self) -> Point:
        return (self.i1, self.j2)

    def touches_boundary(self, mesh: Mesh) -> bool:
        return self.i1 == 0 or self.j1 == 0 or self.i2 == mesh.p or self.j2 == mesh.q

    def cells(self) -> Iterator["Rect"]:
        for i in range(self.i1 + 1, self.i2 + 1):
            for j in range(self.j1 + 1, self.j2 + 1):
                yield Rect(i - 1, i, j - 1, j)

    def as_dict(self) -> dict:
        return {"i1": self.i1, "i2": self.i2, "j1": self.j1, "j2": self.j2}


@dataclass(frozen=True)
class GridFunction:
    mesh: Mesh
    values: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows, cols = self.mesh.shape
        if len(self.values) != rows or any(len(r) != cols for r in self.values):
            raise MeshMismatch(
                f"values must be {rows}x{cols} for this mesh, got "
                f"{len(self.values)}x{len(self.values[0]) if self.values else 0}"
            )

    @classmethod
    def from_rows(cls, mesh: Mesh, rows: Sequence[Sequence], scale=1) -> "GridFunction":
        scale = as_fraction(scale)
        return cls(mesh, tuple(tuple(as_fraction(v) * scale for v in r) for r in rows))

    @classmethod
    def from_callable(cls, mesh: Mesh, f: Callable[[Fraction, Fraction], Fraction]) -> "GridFunction":
        return cls(mesh, tuple(tuple(as_fraction(f(x, y)) for y in mesh.ys) for x in mesh.xs))

    def __getitem__(self, pt: Point) -> Fraction:
        return self.values[pt[0]][pt[1]]

    def replace(self, updates: dict[Point, Fraction]) -> "GridFunction":
        rows = [list(r) for r in self.values]
        for (i, j), v in updates.items():
            rows[i][j] = as_fraction(v)
        return GridFunction(self.mesh, tuple(tuple(r) for r in rows))

    def map2(self, other: "GridFunction", op) -> "GridFunction":
        same_mesh(self, other)
        return GridFunction(self.mesh, tuple(
            tuple(op(u, v) for u, v in zip(r, s)) for r, s in zip(self.values, other.values)
        ))

    def __add__(self, other: "GridFunction") -> "GridFunction":
        return self.map2(other, lambda u, v: u + v)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        return self.map2(other, lambda u, v: u - v)

    def __le__(self, other: "GridFunction") -> bool:
        same_mesh(self, other)
        return all(u <= v for r, s in zip(self.values, other.values) for u, v in zip(r, s))

    def __ge__(self, other: "GridFunction") -> bool:
        return other <= self

    def meet(self, other: "GridFunction") -> "GridFunction":
        return self.map2(other, min)

    def join(self, other: "GridFunction") -> "GridFunction":
        return self.map2(other, max)

    def scaled_rows(self, denom: int) -> list[list[int]]:
        """Values times ``denom`` as integers; raises if any is not integral."""
        out = []
        for r in self.values:
            row = []
            for v in r:
                w = v * denom
                if w.denominator != 1:
                    raise ValueError(f"{v} is not a multiple of 1/{denom}")
                row.append(w.numerator)
            out.append(row)
        return out

    def common_denominator(self) -> int:
        den = 1
        for r in self.values:
            for v in r:
                den = lcm(den, v.denominator)
        return den


def same_mesh(*fs) -> Mesh:
    mesh = fs[0].mesh
    for f in fs[1:]:
        if f.mesh != mesh:
            raise MeshMismatch("grid objects live on different meshes")
    return mesh


def zero_function(mesh: Mesh) -> GridFunction:
    return GridFunction(mesh, tuple(tuple(Fraction(0) for _ in mesh.ys) for _ in mesh.xs))


def volume(F: GridFunction, r: Rect) -> Fraction:
    F.mesh.check_rect(r)
    v = F.values
    return v[r.i1][r.j1] + v[r.i2][r.j2] - v[r.i2][r.j1] - v[r.i1][r.j2]


def cell_volume_matrix(F: GridFunction) -> list[list[Fraction]]:
    """``out[i-1][j-1]`` is the volume of ``[x_{i-1}, x_i] x [y_{j-1}, y_j]``."""
    v = F.values
    p, q = F.mesh.p, F.mesh.q
    return [[v[i - 1][j - 1] + v[i][j] - v[i][j - 1] - v[i - 1][j] for j in range(1, q + 1)]
            for i in range(1, p + 1)]


@dataclass(frozen=True)
class RectUnion:
    """A multiset of grid rectangles, stored as sorted ``(rect, count)`` pairs."""

    items: tuple[tuple[Rect, int], ...] = ()

    def __post_init__(self):
        for r, n in self.items:
            if not isinstance(n, int) or n < 1:
                raise ValueError(f"rectangle count must be a positive integer, got {n!r}")

    @classmethod
    def of(cls, rects: Iterable[Rect] | dict[Rect, int]) -> "RectUnion":
        counts = Counter(rects)
        return cls(tuple(sorted((r, int(n)) for r, n in counts.items() if n)))

    def __add__(self, other: "RectUnion") -> "RectUnion":
        counts = Counter(dict(self.items))
        counts.update(dict(other.items))
        return RectUnion.of(counts)

    def times(self, k: int) -> "RectUnion":
        return RectUnion(tuple((r, n * k) for r, n in self.items))

    @property
    def total_count(self) -> int:
        return sum(n for _, n in self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


@dataclass(frozen=True)
class MultiplicityField:
    mesh: Mesh
    m: tuple[tuple[int, ...], ...]

    def __getitem__(self, pt: Point) -> int:
        return self.m[pt[0]][pt[1]]

    def support(self) -> list[tuple[Point, int]]:
        return [((i, j), v) for i, row in enumerate(self.m) for j, v in enumerate(row) if v]

    def total(self) -> int:
        return sum(sum(r) for r in self.m)


def multiplicity_field(u: RectUnion, mesh: Mesh) -> MultiplicityField:
    m = [[0] * (mesh.q + 1) for _ in range(mesh.p + 1)]
    for r, n in u:
        try:
            mesh.check_rect(r)
        except IndexOutOfRange as exc:
            raise MeshMismatch(str(exc)) from None
        m[r.i1][r.j1] += n
        m[r.i2][r.j2] += n
        m[r.i2][r.j1] -= n
        m[r.i1][r.j2] -= n
    return MultiplicityField(mesh, tuple(tuple(r) for r in m))


def field_volume(F: GridFunction, m: MultiplicityField) -> Fraction:
    same_mesh(F, m)
    return sum((F[pt] * k for pt, k in m.support()), Fraction(0))


def union_volume(F: GridFunction, u: RectUnion, check: bool = __debug__) -> Fraction:
    """``sum_x F(x) m_u(x)``; with ``check`` also summed per rectangle and compared."""
    total = field_volume(F, multiplicity_field(u, F.mesh))
    if check:
        direct = sum((n * volume(F, r) for r, n in u), Fraction(0))
        assert direct == total, (direct, total)
    return total

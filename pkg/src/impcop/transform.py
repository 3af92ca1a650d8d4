"""Bilinear extension, restriction to other meshes, and the sigma reflections."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .grid import GridError, GridFunction, Mesh, as_fraction


class OutOfDomain(ValueError):
    pass


class AsymmetricMesh(GridError):
    pass


def _locate(axis: tuple[Fraction, ...], t: Fraction) -> int:
    """Index k of the cell [axis[k], axis[k+1]] containing t (last cell for t=1)."""
    k = bisect_right(axis, t) - 1
    return min(k, len(axis) - 2)


@dataclass(frozen=True)
class BilinearRep:
    """Piecewise-bilinear extension of a grid function to the unit square."""

    base: GridFunction

    def __call__(self, x, y) -> Fraction:
        return bilinear_eval(self, x, y)


def extend(F: GridFunction) -> BilinearRep:
    return BilinearRep(F)


def bilinear_eval(rep: BilinearRep, x, y) -> Fraction:
    x, y = as_fraction(x), as_fraction(y)
    if not (0 <= x <= 1 and 0 <= y <= 1):
        raise OutOfDomain(f"({x}, {y}) is outside the unit square")
    F = rep.base
    xs, ys = F.mesh.xs, F.mesh.ys
    i, j = _locate(xs, x), _locate(ys, y)
    s = (x - xs[i]) / (xs[i + 1] - xs[i])
    t = (y - ys[j]) / (ys[j + 1] - ys[j])
    fa, fb = F[i, j], F[i + 1, j]
    fd, fc = F[i, j + 1], F[i + 1, j + 1]
    return (1 - s) * (1 - t) * fa + s * (1 - t) * fb + (1 - s) * t * fd + s * t * fc


def restrict(rep: BilinearRep, sub: Mesh) -> GridFunction:
    return GridFunction.from_callable(sub, lambda x, y: bilinear_eval(rep, x, y))


def refine(mesh: Mesh, k: int) -> Mesh:
    """Split every cell of ``mesh`` into ``k`` equal parts along each axis."""
    def split(axis):
        out = []
        for u, v in zip(axis, axis[1:]):
            out.extend(u + (v - u) * Fraction(r, k) for r in range(k))
        out.append(axis[-1])
        return tuple(out)

    return Mesh(split(mesh.xs), split(mesh.ys))


def reflect_sigma(F: GridFunction, axis: str = "x") -> GridFunction:
    """``y - F(1-x, y)`` for ``axis='x'``, ``x - F(x, 1-y)`` for ``axis='y'``."""
    mesh = F.mesh
    if axis not in ("x", "y"):
        raise ValueError("axis must be 'x' or 'y'")
    if not mesh.is_symmetric(axis):
        raise AsymmetricMesh(f"mesh is not symmetric under the {axis}-reflection")
    p, q = mesh.p, mesh.q
    if axis == "x":
        rows = [[mesh.ys[j] - F[p - i, j] for j in range(q + 1)] for i in range(p + 1)]
    else:
        rows = [[mesh.xs[i] - F[i, q - j] for j in range(q + 1)] for i in range(p + 1)]
    return GridFunction.from_rows(mesh, rows)


def transpose(F: GridFunction) -> GridFunction:
    """``F(y, x)`` on the swapped mesh."""
    mesh = Mesh(F.mesh.ys, F.mesh.xs)
    return GridFunction(mesh, tuple(zip(*F.values)))


def reflect_pair(A: GridFunction, B: GridFunction, axis: str) -> tuple[GridFunction, GridFunction]:
    """Reflections reverse the order, so the pair comes back as (B^s, A^s)."""
    return reflect_sigma(B, axis), reflect_sigma(A, axis)

"""Text and JSON serialization of grid functions and witnesses.

Text format::

    [denom: 50]
    0 1/10 2/10 ... 1          <- x breakpoints
    0 1/10 2/10 ... 1          <- y breakpoints
    v00 v01 ...                <- p+1 rows of q+1 values, row i is x_i

With a ``denom:`` header the matrix entries are integers scaled by that
denominator.  Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .grid import GridError, GridFunction, Mesh, make_mesh


def fmt(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def parse_text(text: str) -> GridFunction:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    denom = None
    if lines and lines[0].lower().startswith("denom:"):
        denom = int(lines.pop(0).split(":", 1)[1])
        if denom <= 0:
            raise GridError("denom must be positive")
    if len(lines) < 2:
        raise GridError("grid file needs x and y breakpoint lines")
    try:
        mesh = make_mesh(lines[0].split(), lines[1].split())
        rows = [[Fraction(tok) for tok in line.split()] for line in lines[2:]]
    except (ValueError, ZeroDivisionError) as exc:
        raise GridError(f"bad rational in grid file: {exc}") from None
    if denom is not None:
        if any(v.denominator != 1 for r in rows for v in r):
            raise GridError("entries must be integers when denom: is given")
        return GridFunction.from_rows(mesh, rows, Fraction(1, denom))
    return GridFunction.from_rows(mesh, rows)


def to_text(F: GridFunction, denom: int | None = None) -> str:
    out = []
    if denom is not None:
        out.append(f"denom: {denom}")
    out.append(" ".join(fmt(x) for x in F.mesh.xs))
    out.append(" ".join(fmt(y) for y in F.mesh.ys))
    if denom is not None:
        rows = [[str(v) for v in r] for r in F.scaled_rows(denom)]
    else:
        rows = [[fmt(v) for v in r] for r in F.values]
    width = max(len(s) for r in rows for s in r)
    out.extend(" ".join(s.rjust(width) for s in r) for r in rows)
    return "\n".join(out) + "\n"


def to_json_obj(F: GridFunction, denom: int | None = None) -> dict:
    obj = {"xs": [fmt(x) for x in F.mesh.xs], "ys": [fmt(y) for y in F.mesh.ys]}
    if denom is not None:
        obj["denom"] = denom
        obj["values"] = F.scaled_rows(denom)
    else:
        obj["values"] = [[fmt(v) for v in r] for r in F.values]
    return obj


def from_json_obj(obj: dict) -> GridFunction:
    try:
        mesh = make_mesh([str(v) for v in obj["xs"]], [str(v) for v in obj["ys"]])
        rows = [[Fraction(str(v)) for v in r] for r in obj["values"]]
    except KeyError as exc:
        raise GridError(f"missing field {exc}") from None
    except (ValueError, ZeroDivisionError) as exc:
        raise GridError(f"bad rational: {exc}") from None
    denom = obj.get("denom")
    return GridFunction.from_rows(mesh, rows, Fraction(1, int(denom)) if denom else 1)


def loads(text: str) -> GridFunction:
    if text.lstrip().startswith("{"):
        try:
            return from_json_obj(json.loads(text))
        except json.JSONDecodeError as exc:
            raise GridError(f"bad JSON: {exc}") from None
    return parse_text(text)


def load(path: str | Path) -> GridFunction:
    return loads(Path(path).read_text())


def load_mesh(path: str | Path) -> Mesh:
    """Read just the two breakpoint lines (or ``xs``/``ys`` of a JSON file)."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        obj = json.loads(text)
        return make_mesh([str(v) for v in obj["xs"]], [str(v) for v in obj["ys"]])
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.lower().startswith("denom:")]
    if len(lines) < 2:
        raise GridError("mesh file needs x and y breakpoint lines")
    return make_mesh(lines[0].split(), lines[1].split())

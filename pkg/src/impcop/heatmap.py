"""Plain PGM/PPM heatmaps of grid functions, for documentation only."""

from __future__ import annotations

from pathlib import Path

from .grid import GridFunction, cell_volume_matrix


def _scale(rows, lo, hi):
    span = (hi - lo) or 1
    return [[int(255 * (v - lo) / span) for v in r] for r in rows]


def _blow_up(rows, k):
    out = []
    for r in rows:
        line = [v for v in r for _ in range(k)]
        out.extend([line] * k)
    return out


def values_pgm(F: GridFunction, k: int = 16) -> bytes:
    """Grayscale image of the node values, x to the right and y upwards."""
    grid = [list(col) for col in zip(*F.values)][::-1]
    lo = min(min(r) for r in grid)
    hi = max(max(r) for r in grid)
    img = _blow_up(_scale(grid, lo, hi), k)
    h, w = len(img), len(img[0])
    return f"P5 {w} {h} 255\n".encode() + bytes(v for r in img for v in r)


def volumes_ppm(F: GridFunction, k: int = 16) -> bytes:
    """Cell volumes: red for negative, green for positive, black for zero."""
    vols = cell_volume_matrix(F)
    grid = [list(col) for col in zip(*vols)][::-1]
    peak = max(abs(v) for r in grid for v in r) or 1
    pix = []
    for r in grid:
        line = []
        for v in r:
            t = int(255 * abs(v) / peak)
            line.append((t, 0, 0) if v < 0 else (0, t, 0))
        pix.append(line)
    img = _blow_up(pix, k)
    h, w = len(img), len(img[0])
    return f"P6 {w} {h} 255\n".encode() + bytes(c for r in img for px in r for c in px)


def write_heatmap(F: GridFunction, path: str | Path, k: int = 16) -> Path:
    """``.pgm`` writes node values; anything else gets the cell-volume ``.ppm``."""
    path = Path(path)
    data = values_pgm(F, k) if path.suffix == ".pgm" else volumes_ppm(F, k)
    path.write_bytes(data)
    return path

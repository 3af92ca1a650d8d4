import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from impcop.generators import random_copula, random_mesh
from impcop.grid import GridFunction, Mesh, uniform_mesh

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def axes(draw, max_cells=4):
    n = draw(st.integers(1, max_cells))
    den = draw(st.sampled_from([n, 2 * n, 3 * n, 12]))
    inner = draw(st.lists(st.integers(1, den - 1), min_size=n - 1, max_size=n - 1, unique=True)
                 if den > n else st.just([]))
    if len(inner) != n - 1:
        return tuple(Fraction(k, n) for k in range(n + 1))
    return (Fraction(0),) + tuple(Fraction(k, den) for k in sorted(inner)) + (Fraction(1),)


@st.composite
def meshes(draw, max_cells=4):
    return Mesh(draw(axes(max_cells)), draw(axes(max_cells)))


@st.composite
def symmetric_meshes(draw, max_cells=4):
    """Meshes mapped to themselves by x -> 1 - x and y -> 1 - y."""
    def sym(ax):
        return tuple(sorted(set(ax) | {1 - t for t in ax}))
    return Mesh(sym(draw(axes(max_cells))), sym(draw(axes(max_cells))))


@st.composite
def grounded_functions(draw, mesh_strategy=None):
    """Grounded, neutral, otherwise arbitrary values in [0, 1]."""
    mesh = draw(meshes() if mesh_strategy is None else mesh_strategy)
    p, q = mesh.p, mesh.q
    frac = st.fractions(min_value=0, max_value=1, max_denominator=12)
    rows = []
    for i in range(p + 1):
        row = []
        for j in range(q + 1):
            if i == 0 or j == 0:
                row.append(Fraction(0))
            elif i == p:
                row.append(mesh.ys[j])
            elif j == q:
                row.append(mesh.xs[i])
            else:
                row.append(draw(frac))
        rows.append(row)
    return GridFunction.from_rows(mesh, rows)


@st.composite
def copulas(draw, mesh_strategy=None):
    mesh = draw(meshes() if mesh_strategy is None else mesh_strategy)
    return random_copula(mesh, draw(st.randoms(use_true_random=False)))


@st.composite
def quasi_copulas(draw, mesh_strategy=None):
    """Lattice polynomials of copulas; max(min(C1, C2), min(C3, C4)) need not be a copula."""
    mesh = draw(meshes() if mesh_strategy is None else mesh_strategy)
    rng = draw(st.randoms(use_true_random=False))
    cs = [random_copula(mesh, rng, 1) for _ in range(4)]
    return cs[0].meet(cs[1]).join(cs[2].meet(cs[3]))


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def mesh3():
    return uniform_mesh(3)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])

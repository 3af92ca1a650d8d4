from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from impcop import fixtures as fx
from impcop.axioms import ic_value, validate_function, validate_imprecise_pair
from impcop.generators import random_pair
from impcop.grid import GridFunction, Rect, make_mesh, uniform_mesh, volume
from impcop.transform import (
    AsymmetricMesh,
    OutOfDomain,
    extend,
    refine,
    reflect_pair,
    reflect_sigma,
    restrict,
    transpose,
)

from conftest import grounded_functions, meshes, quasi_copulas, symmetric_meshes

FLAGS = ("grounded", "neutral", "increasing1", "increasing2", "quasi_increasing2")


def flags(F):
    rep = validate_function(F, cap=0)
    return {k: getattr(rep, k) for k in FLAGS}


def unit_cell(a, b, d, c):
    m = uniform_mesh(1)
    return GridFunction.from_rows(m, [[a, d], [b, c]])


def test_bilinear_formula_on_unit_cell():
    q = Fraction(1, 4)
    F = unit_cell(0, q, q, 1)
    assert extend(F)(Fraction(1, 2), Fraction(1, 2)) == Fraction(3, 8)
    # alpha x + beta y + (1 - alpha - beta) x y with alpha = beta = 1/4
    x, y = Fraction(1, 3), Fraction(2, 5)
    assert extend(F)(x, y) == q * x + q * y + (1 - 2 * q) * x * y
    assert extend(unit_cell(0, 0, 0, 1))(Fraction(1, 2), Fraction(1, 2)) == Fraction(1, 4)


@given(grounded_functions())
def test_extension_interpolates(F):
    rep = extend(F)
    for i, x in enumerate(F.mesh.xs):
        for j, y in enumerate(F.mesh.ys):
            assert rep(x, y) == F[i, j]
    assert restrict(rep, F.mesh) == F


@given(meshes(), meshes())
def test_product_is_bilinear_everywhere(m1, m2):
    assert restrict(extend(fx.product(m1)), m2) == fx.product(m2)


def test_out_of_domain():
    with pytest.raises(OutOfDomain):
        extend(fx.product(uniform_mesh(2)))(Fraction(3, 2), 0)
    with pytest.raises(TypeError):
        extend(fx.product(uniform_mesh(2)))(0.5, 0.5)


def test_ex10_on_halved_mesh_stays_quasi():
    A = fx.ex10_A()
    fine = restrict(extend(A), refine(A.mesh, 2))
    assert fine.mesh == uniform_mesh(20)
    rep = validate_function(fine, cap=0)
    assert rep.is_discrete_quasi_copula and not rep.is_discrete_copula


@given(grounded_functions(), st.integers(2, 3))
def test_property_transfer_to_refinements(F, k):
    assert flags(restrict(extend(F), refine(F.mesh, k))) == flags(F)


@given(grounded_functions(), meshes())
def test_properties_survive_restriction_to_any_mesh(F, sub):
    before, after = flags(F), flags(restrict(extend(F), sub))
    for name in FLAGS:
        if before[name]:
            assert after[name], name


@given(grounded_functions(), st.data())
def test_volume_sign_transfers_to_subrectangles(F, data):
    mesh = F.mesh
    i = data.draw(st.integers(0, mesh.p - 1))
    j = data.draw(st.integers(0, mesh.q - 1))
    cell_v = volume(F, Rect(i, i + 1, j, j + 1))
    unit = st.fractions(min_value=0, max_value=1, max_denominator=9)
    s1, s2 = sorted(data.draw(st.lists(unit, min_size=2, max_size=2, unique=True)))
    t1, t2 = sorted(data.draw(st.lists(unit, min_size=2, max_size=2, unique=True)))
    xs = [mesh.xs[i] + s * (mesh.xs[i + 1] - mesh.xs[i]) for s in (s1, s2)]
    ys = [mesh.ys[j] + t * (mesh.ys[j + 1] - mesh.ys[j]) for t in (t1, t2)]
    rep = extend(F)
    sub_v = rep(xs[1], ys[1]) + rep(xs[0], ys[0]) - rep(xs[1], ys[0]) - rep(xs[0], ys[1])
    assert sub_v == cell_v * (s2 - s1) * (t2 - t1)
    assert (sub_v > 0) == (cell_v > 0) and (sub_v < 0) == (cell_v < 0)


def test_reflection_examples():
    m = uniform_mesh(4)
    assert reflect_sigma(fx.product(m), "x") == fx.product(m)
    assert reflect_sigma(fx.product(m), "y") == fx.product(m)
    assert reflect_sigma(fx.upper_bound(m), "x") == fx.lower_bound(m)
    assert reflect_sigma(fx.upper_bound(m), "y") == fx.lower_bound(m)
    A = fx.ex7_A()
    assert reflect_sigma(reflect_sigma(A, "x"), "x") == A


def test_reflection_needs_symmetric_mesh():
    m = make_mesh([0, Fraction(1, 3), 1], [0, Fraction(1, 2), 1])
    with pytest.raises(AsymmetricMesh):
        reflect_sigma(fx.product(m), "x")
    assert reflect_sigma(fx.product(m), "y") == fx.product(m)


@given(grounded_functions(symmetric_meshes()), st.sampled_from("xy"))
def test_reflection_is_an_involution_preserving_volumes(F, axis):
    G = reflect_sigma(F, axis)
    assert reflect_sigma(G, axis) == F
    p, q = F.mesh.p, F.mesh.q
    for r in F.mesh.rects():
        rr = (Rect(p - r.i2, p - r.i1, r.j1, r.j2) if axis == "x"
              else Rect(r.i1, r.i2, q - r.j2, q - r.j1))
        assert volume(G, rr) == volume(F, r)


@given(quasi_copulas(symmetric_meshes()), st.sampled_from("xy"))
def test_reflection_preserves_quasi_copulas(Q, axis):
    assert flags(reflect_sigma(Q, axis)) == flags(Q)


# IC tag on (B^s, A^s) at the mirrored rectangle -> IC tag on (A, B) at the original
IC_UNDER_REFLECTION = {
    "x": {"ic1": "ic3", "ic2": "ic4", "ic3": "ic1", "ic4": "ic2"},
    "y": {"ic1": "ic4", "ic2": "ic3", "ic3": "ic2", "ic4": "ic1"},
}


@settings(max_examples=25)
@given(symmetric_meshes(3), st.randoms(use_true_random=False), st.sampled_from("xy"))
def test_reflection_maps_imprecise_pairs_and_permutes_ic(mesh, rnd, axis):
    A, B, _ = random_pair(mesh, rnd)
    A2, B2 = reflect_pair(A, B, axis)
    assert A2 <= B2
    assert validate_imprecise_pair(A2, B2, cap=0).is_imprecise_copula
    p, q = mesh.p, mesh.q
    for r in mesh.rects():
        rr = (Rect(p - r.i2, p - r.i1, r.j1, r.j2) if axis == "x"
              else Rect(r.i1, r.i2, q - r.j2, q - r.j1))
        for new, old in IC_UNDER_REFLECTION[axis].items():
            assert ic_value(new, A2, B2, rr) == ic_value(old, A, B, r)


@given(grounded_functions())
def test_transpose(F):
    T = transpose(F)
    assert transpose(T) == F
    assert flags(T) == flags(F)

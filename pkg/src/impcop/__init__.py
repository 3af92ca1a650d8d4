"""Exact discrete copulas, quasi-copulas and imprecise copulas on rectangular meshes."""

from .axioms import validate_function, validate_imprecise_pair
from .defects import corner_defects, drop_O, iterate_pair, lift_M
from .feasibility import (
    check_extremality,
    construct_through_point,
    gamma,
    l_functional,
    negative_witness,
    p_main,
    p_opposite,
    sandwich_greedy,
    sandwich_lp_oracle,
)
from .grid import GridFunction, Mesh, Rect, RectUnion, make_mesh, uniform_mesh, volume
from .transform import extend, reflect_sigma, restrict

__version__ = "0.1.0"

__all__ = [
    "GridFunction", "Mesh", "Rect", "RectUnion", "make_mesh", "uniform_mesh", "volume",
    "validate_function", "validate_imprecise_pair",
    "extend", "restrict", "reflect_sigma",
    "corner_defects", "lift_M", "drop_O", "iterate_pair",
    "l_functional", "p_main", "p_opposite", "gamma", "negative_witness",
    "sandwich_greedy", "sandwich_lp_oracle", "check_extremality", "construct_through_point",
]

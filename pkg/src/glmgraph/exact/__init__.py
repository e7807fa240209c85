"""Exact arithmetic over Q: matrices, lattices, polynomials."""

from .lattice import (
    Lattice,
    dual_lattice,
    hnf,
    lattice_contains,
    lattice_image,
    lattice_index,
    lattice_intersect,
    lattice_sum,
)
from .matrix import (
    MatQ,
    Rat,
    SymQ,
    as_sym,
    candidate_orders,
    char_poly,
    invariance_constraints,
    is_positive_definite,
    order_of,
    rat,
    rat_str,
    solve_linear_subspace,
    sym_from_coords,
    sym_index,
)
from .poly import (
    Poly,
    count_real_roots,
    has_all_roots_on_unit_circle,
    has_root_outside_unit_circle,
    poly_gcd,
    schur_cohn_matrix,
)

__all__ = [
    "Lattice",
    "dual_lattice",
    "hnf",
    "lattice_contains",
    "lattice_image",
    "lattice_index",
    "lattice_intersect",
    "lattice_sum",
    "MatQ",
    "Rat",
    "SymQ",
    "as_sym",
    "candidate_orders",
    "char_poly",
    "invariance_constraints",
    "is_positive_definite",
    "order_of",
    "rat",
    "rat_str",
    "solve_linear_subspace",
    "sym_from_coords",
    "sym_index",
    "Poly",
    "count_real_roots",
    "has_all_roots_on_unit_circle",
    "has_root_outside_unit_circle",
    "poly_gcd",
    "schur_cohn_matrix",
]

"""Biautomaticity, CAT(0) and residual finiteness of GLM groups.

A GLM (rank-n generalised Baumslag-Solitar) group is the fundamental group of
a finite graph of groups whose vertex and edge groups are all Z^n.
"""

__version__ = "0.1.0"

from .graph import (  # noqa: E402
    GLMGraph,
    OrientedEdge,
    SpanningTree,
    build,
    classify_edge,
    collapse_move,
    parse,
    reduce,
    serialize,
    spanning_tree,
    standard_presentation,
    tree_ball,
)
from .modular import delta_affine, evaluate_word, modular_generators, verify_presentation  # noqa: E402
from .matgroups import (  # noqa: E402
    MatGroupGens,
    decide_conjugate_into_GLnZ,
    decide_conjugate_into_On,
    decide_finite,
    finite_group_invariant_lattice,
    invariant_form_space,
    verify_certificate,
)
from .classifier import AnalysisReport, Config, analyze, cat0_action_data  # noqa: E402

__all__ = [
    "GLMGraph",
    "OrientedEdge",
    "SpanningTree",
    "build",
    "classify_edge",
    "collapse_move",
    "parse",
    "reduce",
    "serialize",
    "spanning_tree",
    "standard_presentation",
    "tree_ball",
    "delta_affine",
    "evaluate_word",
    "modular_generators",
    "verify_presentation",
    "MatGroupGens",
    "decide_conjugate_into_GLnZ",
    "decide_conjugate_into_On",
    "decide_finite",
    "finite_group_invariant_lattice",
    "invariant_form_space",
    "verify_certificate",
    "AnalysisReport",
    "Config",
    "analyze",
    "cat0_action_data",
]

"""Orthogonal inner product graphs over odd-characteristic finite fields."""

__version__ = "0.1.0"

from .autsearch import full_aut_order, is_automorphism, search_result
from .geometry import classify_type, space_make, subspace_make, subspace_span
from .gf import GF, parse_field
from .graph import (
    BudgetExceeded,
    OiGraph,
    adjacent,
    build_graph,
    graph_from_json,
    graph_to_dot,
    graph_to_json,
    max_clique_dim1,
    recover_parameters,
)
from .linalg import Mat
from .symmetry import (
    PermGroup,
    aut_order_formula,
    e_subgroup_generators,
    e_subgroup_order,
    edge_orbits,
    group_order,
    orthogonal_generators,
    po_e_generators,
    reflection,
    vertex_orbits,
)
from .verify import run_suite

__all__ = [
    "GF",
    "Mat",
    "OiGraph",
    "BudgetExceeded",
    "PermGroup",
    "adjacent",
    "aut_order_formula",
    "build_graph",
    "classify_type",
    "e_subgroup_generators",
    "e_subgroup_order",
    "edge_orbits",
    "full_aut_order",
    "graph_from_json",
    "graph_to_dot",
    "graph_to_json",
    "group_order",
    "is_automorphism",
    "max_clique_dim1",
    "orthogonal_generators",
    "parse_field",
    "po_e_generators",
    "recover_parameters",
    "reflection",
    "run_suite",
    "search_result",
    "space_make",
    "subspace_make",
    "subspace_span",
    "vertex_orbits",
]

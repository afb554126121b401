"""Exact-arithmetic construction, enumeration and analysis of metric-like cones.

The package covers the cone families MET (semi-metrics), CUT, QMET
(quasi-semi-metrics), OMCUT (oriented multicuts), HMET (hemi-metrics), HCUT
(partition hemi-metrics), SMET (super-metrics) and SCUT, over small point sets.
Everything is computed in exact rational arithmetic: facet and extreme-ray
enumeration (double description and adjacency decomposition under symmetry),
orbit decompositions, skeleton and ridge graphs with their diameters, and the
face-graph statistics used to cross-check the bundled census of known values.
"""

from .adm import AdmRun, adjacency_decomposition, initial_facet, ridge_rotation, subcone
from .cones import (ConeSpec, IndexScheme, Representation, build_generators,
                    build_h, delta_vector, index_scheme, is_member,
                    redundancy_filter, smet_closed_form, vertex_splitting,
                    zero_extension)
from .dd import DDState, dd_adjacency, dual_description, facet_enumeration
from .exact import LpOutcome, conic_combination_exists, kernel_basis, normalize_ray, rank, solve_lp
from .graphs import (FaceGraph, NamedGraph, build_face_graph, classify_graph,
                     complete, complete_minus_matching, complete_multipartite,
                     conjecture_predicates, cube3, cycle,
                     disjoint_cycles_complement, facets_adjacent_lp,
                     graph_to_text, incidence_number, is_group_invariant,
                     isomorphic, johnson, nabla, orbit_table_text, petersen,
                     prism3, rays_adjacent, representation_graph_G,
                     representation_graph_H, zero_one_ray_stats)
from .groups import CoordPermGroup, canonical_rep, group_for, orbit_decompose

__all__ = [
    "ConeSpec", "IndexScheme", "Representation", "build_generators", "build_h",
    "delta_vector", "index_scheme", "is_member", "redundancy_filter",
    "smet_closed_form", "vertex_splitting", "zero_extension",
    "DDState", "dd_adjacency", "dual_description", "facet_enumeration",
    "conic_combination_exists", "kernel_basis", "normalize_ray", "rank",
    "CoordPermGroup", "canonical_rep", "group_for", "orbit_decompose",
    "LpOutcome", "solve_lp",
    "AdmRun", "adjacency_decomposition", "initial_facet", "ridge_rotation",
    "subcone",
    "FaceGraph", "NamedGraph", "build_face_graph", "classify_graph",
    "complete", "complete_minus_matching", "complete_multipartite",
    "conjecture_predicates", "cube3", "cycle", "disjoint_cycles_complement",
    "facets_adjacent_lp", "graph_to_text", "incidence_number",
    "is_group_invariant", "isomorphic", "johnson", "nabla",
    "orbit_table_text", "petersen", "prism3", "rays_adjacent",
    "representation_graph_G", "representation_graph_H", "zero_one_ray_stats",
]

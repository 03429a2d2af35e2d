"""Minimum perfect protection sets (relaxed connected dominating sets).

A set ``D`` of buses protects a power network against undetectable data
attacks exactly when the lines touching ``D`` connect every bus.  This
package checks that property, builds attacks when it fails, and computes
minimum protection sets with brute force, branch-and-bound, or a dynamic
program over sphere-cut decompositions of planar graphs.
"""
from .bench import BenchRecord, bench_suite, load_bundled, render_table
from .dp import dp_recursion, leaf_table, merge_compatible, solve_planar_rcds, traceback
from .exact import (
    Infeasible,
    SizeGuardError,
    SolveResult,
    bnb_min_rcds,
    brute_force_min_rcds,
    min_connected_dominating_set,
    min_dominating_set,
)
from .graph import (
    DomainError,
    Graph,
    GraphError,
    ParseError,
    SelfLoopError,
    connected_components,
    incident_edges,
    load_graph,
    parse_edge_list,
)
from .milp import MilpModel, build_milp, export_lp, witness
from .planar import PlaneEmbedding, is_planar, planarity_embed, planarize, radial_graph
from .protection import (
    Attack,
    construct_stealth_attack,
    is_perfect_protection,
    is_rcds,
    verify_attack,
)
from .scd import (
    DecompositionError,
    ScDecomposition,
    heuristic_sphere_cut,
    import_decomposition,
    merge_context,
    root_decomposition,
    validate,
)

__all__ = [
    "Attack", "BenchRecord", "DecompositionError", "DomainError", "Graph", "GraphError",
    "Infeasible", "MilpModel", "ParseError", "PlaneEmbedding", "ScDecomposition",
    "SelfLoopError", "SizeGuardError", "SolveResult", "bench_suite", "bnb_min_rcds",
    "brute_force_min_rcds", "build_milp", "connected_components", "construct_stealth_attack",
    "dp_recursion", "export_lp", "heuristic_sphere_cut", "import_decomposition",
    "incident_edges", "is_perfect_protection", "is_planar", "is_rcds", "leaf_table",
    "load_bundled", "load_graph", "merge_compatible", "merge_context",
    "min_connected_dominating_set", "min_dominating_set", "parse_edge_list",
    "planarity_embed", "planarize", "radial_graph", "render_table", "root_decomposition",
    "solve_planar_rcds", "traceback", "validate", "verify_attack", "witness",
]

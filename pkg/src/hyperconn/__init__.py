"""Analytic connectivity of k-uniform hypergraphs and the bounds around it."""

from .hypergraph import (
    DegreeProfile,
    DesignParams,
    Hypergraph,
    HypergraphError,
    check_two_design,
    components,
    degree_profile,
    diameter,
    gen_complete,
    gen_fano,
    gen_random,
    is_connected,
    parse_khg,
    remove_vertices,
    serialize_khg,
    validate,
)
from .invariants import (
    CutWitness,
    boundary_edges,
    edge_connectivity,
    isoperimetric_number,
    vertex_connectivity,
)
from .laplacian import (
    agm_bounds,
    edge_term,
    gradient_y,
    laplacian_apply,
    laplacian_form,
    objective_y,
)
from .solver import (
    AlphaResult,
    SolveOutcome,
    SolverConfig,
    alpha_oracle,
    analytic_connectivity,
    certify_upper,
    grid_oracle,
    kkt_residual,
    solve_subproblem,
)

__version__ = "0.1.0"

"""k-set packing laboratory: local search, exact oracles, LP gaps, SDP export."""

from .exact import ORACLE_CAP, max_independent_set_exact, max_packing_exact, max_packing_value
from .instance import (
    NEIGHBORHOOD_GUARD,
    ConflictGraph,
    Instance,
    Packing,
    Violation,
    conflict_graph,
    gen_projective_plane,
    gen_random,
    instance_from_graph,
    is_packing,
    max_independent_in_neighborhood,
    packing_value,
    parse_graph,
    parse_instance,
    serialize_instance,
    validate,
)
from .local_search import (
    ImprovingSet,
    apply_improving_set,
    build_auxiliary_multigraph,
    find_improving_set,
    hs_bound,
    log_improvement_search,
    log_local_search,
    t_local_search,
)
from .lp import Constraint, LinearProgram, LpSolution, certify_optimal, serialize_lp, solve_lp
from .multigraph import (
    EXHAUSTIVE_GUARD,
    Multigraph,
    find_dense_subgraph,
    find_dense_subgraph_min_deg3,
    has_small_dense_subgraph,
    induced_edge_count,
    is_connected_induced,
)
from .relaxation import (
    CLIQUE_CAP,
    GapReport,
    build_intersecting_family_lp,
    build_standard_lp,
    enumerate_maximal_cliques,
    export_theta3_sdp,
    gap_report,
    integrality_gap,
    parse_sdpa,
)
from .util import CapExceededError, ParseError, SearchStats, WorkBudget
from .weighted import (
    Claw,
    apply_claw,
    charge,
    find_nice_claw,
    greedy_weighted,
    heaviest_solution_neighbor,
    power_local_search,
    rescaled_run,
    square_imp,
    squared_weight,
    total_weight,
    wishful_thinking,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceededError",
    "Claw",
    "CLIQUE_CAP",
    "ConflictGraph",
    "Constraint",
    "GapReport",
    "ImprovingSet",
    "Instance",
    "LinearProgram",
    "LpSolution",
    "Multigraph",
    "EXHAUSTIVE_GUARD",
    "NEIGHBORHOOD_GUARD",
    "ORACLE_CAP",
    "Packing",
    "ParseError",
    "SearchStats",
    "Violation",
    "WorkBudget",
    "apply_claw",
    "apply_improving_set",
    "build_auxiliary_multigraph",
    "build_intersecting_family_lp",
    "build_standard_lp",
    "certify_optimal",
    "charge",
    "conflict_graph",
    "enumerate_maximal_cliques",
    "export_theta3_sdp",
    "find_dense_subgraph",
    "find_dense_subgraph_min_deg3",
    "find_improving_set",
    "find_nice_claw",
    "gap_report",
    "gen_projective_plane",
    "gen_random",
    "greedy_weighted",
    "has_small_dense_subgraph",
    "heaviest_solution_neighbor",
    "hs_bound",
    "induced_edge_count",
    "instance_from_graph",
    "integrality_gap",
    "is_connected_induced",
    "is_packing",
    "log_improvement_search",
    "log_local_search",
    "max_independent_in_neighborhood",
    "max_independent_set_exact",
    "max_packing_exact",
    "max_packing_value",
    "packing_value",
    "parse_graph",
    "parse_instance",
    "parse_sdpa",
    "power_local_search",
    "rescaled_run",
    "serialize_instance",
    "serialize_lp",
    "solve_lp",
    "square_imp",
    "squared_weight",
    "t_local_search",
    "total_weight",
    "validate",
    "wishful_thinking",
]

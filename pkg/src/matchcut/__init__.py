"""Matching cuts, perfect matching cuts, disconnected perfect matchings and d-cuts
via red-blue colourings: polynomial solvers for bipartite graphs of small radius
or diameter, exact oracles, and hardness-reduction generators."""
from .colouring import (
    BLUE,
    RED,
    CutCertificate,
    PartialColouring,
    apply_rules_r1_r2,
    apply_rules_r1_r4,
    colouring_from_cut,
    colouring_value,
    cut_from_colouring,
    is_perfect_colouring,
    is_perfect_extendable,
    is_valid_colouring,
    is_valid_d_colouring,
)
from .errors import (
    BudgetExceeded,
    ClassViolation,
    GraphError,
    PreconditionError,
    SearchTimeout,
    UnsupportedGraphClass,
)
from .graph import Bipartition, Graph, StructuralReport, build_graph, load_graph, parse_graph, structural_report
from .matching import has_perfect_matching, max_bipartite_matching
from .oracles import OracleReport, oracle_blocks, oracle_enumerate, oracle_search
from .reductions import (
    LabelledGraph,
    NaeSatInstance,
    X3cInstance,
    assignment_colouring,
    nae_brute_force,
    nae_check,
    reduce_nae_to_dcut,
    reduce_nae_to_pmc,
    reduce_x3c_to_maxmc,
    x3c_brute_force,
)
from .solvers import (
    SolveResult,
    dcut_bipartite_diam3,
    dcut_bipartite_rad2,
    maxdpm_bipartite_diam3,
    maxdpm_bipartite_rad2,
    maxmc_bipartite_diam3,
    maxmc_bipartite_rad2,
    pmc_bipartite_diam3,
)
from .subroutines import max_extendable_independent_z, max_valid_independent_z, perfect_mono_components

__version__ = "0.1.0"

"""Chain complexes of multigraphs twisted by unit edge phases.

The package builds the phase-twisted boundary operator of a finite connected
multigraph, enumerates spanning unicyclic subgraphs whose circuits carry
nontrivial holonomy, and checks the resulting forest-sum identities (metric
projection onto the cycle space, weighted network solutions, determinant of
the twisted Laplacian) against direct linear algebra.
"""

from .errors import (
    AssumptionViolatedError,
    BasisMismatchError,
    ConditioningWarning,
    DisconnectedError,
    DuplicateIdError,
    ForeignCircuitError,
    GraphSemanticError,
    GraphSyntaxError,
    HolotreeError,
    InvalidWError,
    MissingGaugeValueError,
    MissingPhaseError,
    NoForestsError,
    NonSquareError,
    NotEulerZeroError,
    NotUnicyclicError,
    SingularTreeSystemError,
    StaleCorrespondenceError,
    UnknownEdgeError,
    UnknownEndpointError,
)
from .graphs import (
    Edge,
    Graph,
    OrientedCircuit,
    Subcomplex,
    SubdivisionRecord,
    build_graph,
    circuit_of_unicyclic,
    components,
    euler_characteristic,
    full_subcomplex,
    spanning_subcomplex,
    subdivide_edge,
)
from .bundle import (
    DEFAULT_EPS_HOL,
    Gauge,
    H0Report,
    LineBundle,
    attach_phases,
    gauge_transform,
    h0_trivial,
    holonomy,
    rho_hat,
    split_phase,
)
from .chains import (
    ChainVector,
    DeterminantValue,
    LinearOperator,
    ResistanceMap,
    adjoint_R,
    boundary_operator,
    determinant,
    edge_basis,
    homology_dims,
    kernel_basis,
    laplacian,
    modified_ip,
    numerical_rank,
    standard_ip,
    unit_chain,
    vertex_basis,
    zero_chain,
)
from .forests import (
    ForestComponent,
    ForestRecord,
    enumerate_forests,
    exchange,
    forest_record,
    is_tree_combinatorial,
    is_tree_homological,
    tbar_chain,
    tbar_operator,
)
from .theorems import (
    GaugeCheckReport,
    LowTempReport,
    MatrixTreeReport,
    NetworkSolution,
    ProjectionReport,
    TreeLaplacianCheck,
    auto_weight_exponents,
    gauge_invariance_check,
    kirchhoff_projection,
    low_temp_demo,
    matrix_tree_report,
    oracle_projection,
    solve_network,
    tree_laplacian_identity,
)
from .fileformat import (
    emit_graph_text,
    parse_chain_text,
    parse_complex,
    parse_graph_text,
)

__version__ = "0.1.0"

__all__ = [
    "AssumptionViolatedError",
    "BasisMismatchError",
    "ChainVector",
    "ConditioningWarning",
    "DEFAULT_EPS_HOL",
    "DeterminantValue",
    "DisconnectedError",
    "DuplicateIdError",
    "Edge",
    "ForeignCircuitError",
    "ForestComponent",
    "ForestRecord",
    "Gauge",
    "GaugeCheckReport",
    "Graph",
    "GraphSemanticError",
    "GraphSyntaxError",
    "H0Report",
    "HolotreeError",
    "InvalidWError",
    "LineBundle",
    "LinearOperator",
    "LowTempReport",
    "MatrixTreeReport",
    "MissingGaugeValueError",
    "MissingPhaseError",
    "NetworkSolution",
    "NoForestsError",
    "NonSquareError",
    "NotEulerZeroError",
    "NotUnicyclicError",
    "OrientedCircuit",
    "ProjectionReport",
    "ResistanceMap",
    "SingularTreeSystemError",
    "StaleCorrespondenceError",
    "Subcomplex",
    "SubdivisionRecord",
    "TreeLaplacianCheck",
    "UnknownEdgeError",
    "UnknownEndpointError",
    "adjoint_R",
    "attach_phases",
    "auto_weight_exponents",
    "boundary_operator",
    "build_graph",
    "circuit_of_unicyclic",
    "components",
    "determinant",
    "edge_basis",
    "emit_graph_text",
    "enumerate_forests",
    "euler_characteristic",
    "exchange",
    "forest_record",
    "full_subcomplex",
    "gauge_invariance_check",
    "gauge_transform",
    "h0_trivial",
    "holonomy",
    "homology_dims",
    "is_tree_combinatorial",
    "is_tree_homological",
    "kernel_basis",
    "kirchhoff_projection",
    "laplacian",
    "low_temp_demo",
    "matrix_tree_report",
    "modified_ip",
    "numerical_rank",
    "oracle_projection",
    "parse_chain_text",
    "parse_complex",
    "parse_graph_text",
    "rho_hat",
    "solve_network",
    "spanning_subcomplex",
    "split_phase",
    "standard_ip",
    "subdivide_edge",
    "tbar_chain",
    "tbar_operator",
    "tree_laplacian_identity",
    "unit_chain",
    "vertex_basis",
    "zero_chain",
]

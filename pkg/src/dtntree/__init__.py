"""Dirichlet-to-Neumann matrices of metric graphs and metric-tree reconstruction.

Forward: :func:`dtn_matrix` reduces the weighted Laplacian of a metric graph
onto its degree-one vertices.  Inverse: :func:`invert_dtn` reads the boundary
distances off one DtN matrix and rebuilds the tree (up to degree-two vertices).
"""

from .errors import *  # noqa: F401,F403
from .forward import DtnMatrix, HarmonicExtension, dtn_matrix, harmonic_extension, partial_dtn
from .formats import format_graph, format_matrix, parse_graph, parse_matrix
from .graph import (
    DEFAULT_TOL,
    BoundaryIndexing,
    Edge,
    MetricGraph,
    ReconstructedTree,
    equal_up_to_degree_two,
    is_tree,
    suppress_degree_two,
    tree_distance,
    tree_distances,
    validate,
)
from .inverse import (
    DistanceMatrix,
    SiblingGroup,
    TreeMetricReport,
    boundary_distances,
    check_tree_metric,
    detect_sibling_group,
    invert_dtn,
    pin_matrix,
    reconstruct_tree,
    solve_star,
)
from .laplacian import (
    LaplacianBlocks,
    LaplacianMatrix,
    block_decompose,
    discrete_laplacian,
    kirkland_entry_oracle,
    kirkland_matrix,
    kron_reduce,
    reduced_laplacian,
    schur_complement,
)

__version__ = "0.1.0"

"""Dominant-set clustering with replicator-type game dynamics."""

from .affinity import (
    AffinityDiagnostics,
    check_affinity,
    gaussian_kernel,
    pairwise_distances,
    read_affinity_csv,
    read_points_csv,
    sigma_heuristic,
    validate_affinity,
)
from .clustering import (
    ClusteringResult,
    DominantSet,
    assign_labels,
    cohesiveness,
    extract_dominant_set,
    peel_clusters,
)
from .dynamics import (
    DynamicsConfig,
    DynamicsResult,
    exp_rd_step,
    inimdyn_step,
    nash_gap,
    rd_step,
    run_dynamics,
)
from .estimator import DominantSetClustering
from .exceptions import (
    BudgetExceededError,
    ConsistencyError,
    DegenerateStateError,
    DSError,
    DynamicsError,
    InsufficientDataError,
    InvalidInputError,
    NumericOverflowError,
    ZeroPayoffError,
)
from .oracle import GridSolution, grid_simplex_maximizer, maximal_cliques
from .simplex import Support, barycenter, renormalize, support

__version__ = "0.1.0"

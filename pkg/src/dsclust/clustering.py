"""Peel dominant sets off a graph until every node belongs to a cluster."""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .dynamics import DynamicsConfig, run_dynamics
from .exceptions import ConsistencyError, InvalidInputError, ZeroPayoffError
from .simplex import DEFAULT_THETA, EmptySupportWarning, barycenter, support


@dataclass
class DominantSet:
    """One extracted cluster.

    ``members`` and ``centroid`` use the numbering of the matrix the set was
    extracted from (the original graph once :func:`peel_clusters` maps them back).
    ``char_vector`` is the converged state restricted to ``members`` and
    renormalized. ``degenerate`` marks a singleton emitted because the dynamics had
    nothing to select (empty support or an edgeless residual).
    """

    members: np.ndarray
    char_vector: np.ndarray
    cohesiveness: float
    centroid: int
    extraction_order: int = 0
    iterations: int = 0
    converged: bool = True
    degenerate: bool = False
    nash_gap: float = 0.0

    @property
    def size(self):
        return int(self.members.size)

    @property
    def is_outlier(self):
        return self.size == 1 and self.cohesiveness == 0


@dataclass
class ClusteringResult:
    labels: np.ndarray
    outliers: np.ndarray
    clusters: list
    params: dict = field(default_factory=dict)

    @property
    def n_clusters(self):
        return len(self.clusters)


def cohesiveness(A, x):
    """x'Ax, the quality score of a cluster's characteristic vector."""
    A = np.asarray(A, dtype=float)
    x = np.asarray(x, dtype=float)
    if A.shape != (x.size, x.size):
        raise InvalidInputError(f"state of size {x.size} does not match matrix of shape {A.shape}")
    return float(x @ (A @ x))


def _singleton(x, iterations=0, converged=True):
    node = int(np.argmax(x))
    return DominantSet(
        members=np.array([node]),
        char_vector=np.array([1.0]),
        cohesiveness=0.0,
        centroid=node,
        iterations=iterations,
        converged=converged,
        degenerate=True,
    )


def extract_dominant_set(A, cfg=None, theta=DEFAULT_THETA):
    """Run the dynamics from the barycenter of ``A`` and threshold the result.

    Never raises on dynamics degeneracies: an empty support, a zero payoff, or an
    edgeless graph yields the heaviest node as a degenerate singleton. A run that
    hits ``max_iters`` still returns its thresholded state with ``converged=False``.
    """
    cfg = cfg or DynamicsConfig()
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise InvalidInputError(f"expected a nonempty square matrix, got shape {A.shape}")
    x0 = barycenter(A.shape[0])
    try:
        res = run_dynamics(A, x0, cfg)
    except ZeroPayoffError as err:
        return _singleton(err.state if err.state is not None else x0, iterations=err.iteration or 0)
    if res.payoff == 0:
        # exprd and inimdyn sit still on an edgeless graph instead of raising.
        return _singleton(res.x, iterations=res.iterations, converged=res.converged)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", EmptySupportWarning)
        supp = support(res.x, theta)
    if supp.empty:
        return _singleton(res.x, iterations=res.iterations, converged=res.converged)
    members = supp.indices
    char = res.x[members] / res.x[members].sum()
    return DominantSet(
        members=members,
        char_vector=char,
        cohesiveness=res.payoff,
        centroid=int(members[np.argmax(char)]),
        iterations=res.iterations,
        converged=res.converged,
        nash_gap=res.nash_gap,
    )


def assign_labels(clusters, n):
    """Label vector (cluster extraction order per node) and outlier mask.

    Raises :class:`ConsistencyError` unless ``clusters`` partition ``range(n)``.
    """
    labels = np.full(n, -1, dtype=int)
    outliers = np.zeros(n, dtype=bool)
    for ds in clusters:
        m = np.asarray(ds.members)
        if m.size == 0 or m.min() < 0 or m.max() >= n:
            raise ConsistencyError(f"cluster {ds.extraction_order} has members outside 0..{n - 1}")
        if (labels[m] != -1).any() or np.unique(m).size != m.size:
            raise ConsistencyError(f"cluster {ds.extraction_order} overlaps an earlier cluster")
        labels[m] = ds.extraction_order
        outliers[m] = ds.is_outlier
    missing = np.flatnonzero(labels == -1)
    if missing.size:
        raise ConsistencyError(f"nodes {missing[:10].tolist()} are not assigned to any cluster")
    return labels, outliers


def peel_clusters(A, cfg=None, theta=DEFAULT_THETA):
    """Extract dominant sets one at a time until all nodes are grouped.

    Every peel restarts from the barycenter of the residual graph. ``A`` is not
    modified.
    """
    cfg = cfg or DynamicsConfig()
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise InvalidInputError(f"expected a nonempty square matrix, got shape {A.shape}")
    if not theta >= 0:
        raise InvalidInputError(f"theta must be >= 0, got {theta!r}")
    n = A.shape[0]
    remaining = np.arange(n)
    clusters = []
    while remaining.size:
        sub = A[np.ix_(remaining, remaining)]
        ds = extract_dominant_set(sub, cfg, theta)
        ds.members = remaining[ds.members]
        ds.centroid = int(remaining[ds.centroid])
        ds.extraction_order = len(clusters)
        clusters.append(ds)
        remaining = np.setdiff1d(remaining, ds.members, assume_unique=True)
    labels, outliers = assign_labels(clusters, n)
    params = {
        "theta": float(theta),
        "dynamics": cfg.kind,
        "precision": float(cfg.precision),
        "max_iters": int(cfg.max_iters),
        "kappa": float(cfg.kappa),
        "criterion": cfg.criterion,
    }
    return ClusteringResult(labels=labels, outliers=outliers, clusters=clusters, params=params)

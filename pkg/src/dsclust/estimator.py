"""scikit-learn compatible front end for dominant-set clustering."""

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from .affinity import check_affinity, check_points, gaussian_kernel, pairwise_distances, sigma_heuristic
from .clustering import peel_clusters
from .dynamics import DynamicsConfig
from .exceptions import InvalidInputError


class DominantSetClustering(ClusterMixin, BaseEstimator):
    """Cluster by iteratively peeling dominant sets off an affinity graph.

    The number of clusters is not a parameter: clusters are extracted until every
    sample is grouped. Singletons with zero cohesiveness are marked in
    ``outliers_``.

    Parameters
    ----------
    affinity : {"gaussian", "precomputed"}, default="gaussian"
        ``"gaussian"`` builds ``exp(-d/sigma)`` from Euclidean distances between
        the rows of ``X``; ``"precomputed"`` takes ``X`` as the affinity matrix.
    sigma : "auto" or float, default="auto"
        Kernel scale. ``"auto"`` uses three times the sample variance of the
        pairwise distances.
    dynamics : {"rd", "exprd", "inimdyn"}, default="rd"
    theta : float, default=1e-5
        Support threshold on the converged state.
    precision : float, default=1e-6
    max_iters : int, default=1000
    kappa : float, default=1.0
        Selection strength of ``exprd``.
    criterion : {"step", "payoff"}, default="step"
    repair_diagonal : bool, default=False
        Zero a nonzero diagonal of a precomputed affinity instead of rejecting it.

    Attributes
    ----------
    labels_ : ndarray of shape (n_samples,)
        Extraction order of each sample's cluster.
    outliers_ : ndarray of bool
    clusters_ : list of DominantSet
    n_clusters_ : int
    cohesiveness_ : ndarray of shape (n_clusters_,)
    centroid_indices_ : ndarray of shape (n_clusters_,)
    affinity_matrix_ : ndarray of shape (n_samples, n_samples)
    sigma_ : float or None
    """

    def __init__(
        self,
        affinity="gaussian",
        sigma="auto",
        dynamics="rd",
        theta=1e-5,
        precision=1e-6,
        max_iters=1000,
        kappa=1.0,
        criterion="step",
        repair_diagonal=False,
    ):
        self.affinity = affinity
        self.sigma = sigma
        self.dynamics = dynamics
        self.theta = theta
        self.precision = precision
        self.max_iters = max_iters
        self.kappa = kappa
        self.criterion = criterion
        self.repair_diagonal = repair_diagonal

    def _build_affinity(self, X):
        if self.affinity == "precomputed":
            self.sigma_ = None
            return check_affinity(X, repair_diagonal=self.repair_diagonal)
        if self.affinity != "gaussian":
            raise InvalidInputError(f"unknown affinity {self.affinity!r}")
        X = check_points(X)
        D = pairwise_distances(X)
        if X.shape[0] == 1:
            self.sigma_ = None
            return np.zeros((1, 1))
        if self.sigma == "auto":
            sigma = sigma_heuristic(D)
            if sigma <= 0:
                raise InvalidInputError(
                    "all pairwise distances are equal; the automatic sigma is 0, pass sigma explicitly"
                )
        else:
            sigma = float(self.sigma)
        self.sigma_ = sigma
        return gaussian_kernel(D, sigma)

    def fit(self, X, y=None):
        if not self.theta >= 0:
            raise InvalidInputError(f"theta must be >= 0, got {self.theta!r}")
        cfg = DynamicsConfig(
            kind=self.dynamics,
            precision=self.precision,
            max_iters=self.max_iters,
            kappa=self.kappa,
            criterion=self.criterion,
        )
        A = self._build_affinity(X)
        result = peel_clusters(A, cfg, self.theta)
        result.params["sigma"] = self.sigma_
        self.affinity_matrix_ = A
        self.result_ = result
        self.labels_ = result.labels
        self.outliers_ = result.outliers
        self.clusters_ = result.clusters
        self.n_clusters_ = result.n_clusters
        self.cohesiveness_ = np.array([c.cohesiveness for c in result.clusters])
        self.centroid_indices_ = np.array([c.centroid for c in result.clusters], dtype=int)
        self.n_features_in_ = np.asarray(X).shape[1]
        return self

    def dominant_sets(self):
        """Member indices of every cluster, in extraction order."""
        check_is_fitted(self, "clusters_")
        return [c.members.copy() for c in self.clusters_]

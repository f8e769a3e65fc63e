"""Brute-force references: simplex grid search and maximal-clique enumeration.

Both are exponential and meant for tiny graphs, to check the dynamics against.
"""

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .exceptions import BudgetExceededError, InvalidInputError

MAX_GRID_NODES = 8
GRID_BUDGET = 10**7
MAX_CLIQUE_NODES = 20


@dataclass
class GridSolution:
    x: np.ndarray
    payoff: float
    resolution: int


def grid_size(n, k):
    """Number of points of the simplex grid with denominator ``k`` in ``n`` dims."""
    return comb(k + n - 1, n - 1)


def _compositions(n, k):
    # Stars and bars; bar positions in lexicographic order give compositions in
    # lexicographic order.
    if n == 1:
        return np.array([[k]], dtype=np.int64)
    bars = np.array(list(itertools.combinations(range(k + n - 1), n - 1)), dtype=np.int64)
    edges = np.hstack(
        [np.full((bars.shape[0], 1), -1), bars, np.full((bars.shape[0], 1), k + n - 1)]
    )
    return np.diff(edges, axis=1) - 1


def grid_simplex_maximizer(A, k=20):
    """Maximize x'Ax over the grid ``{x in simplex : k x integer}`` exhaustively.

    Ties (within 1e-12 relative) go to the lexicographically smallest grid point.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise InvalidInputError(f"expected a nonempty square matrix, got shape {A.shape}")
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise InvalidInputError(f"grid resolution must be a positive integer, got {k!r}")
    n = A.shape[0]
    if n > MAX_GRID_NODES:
        raise BudgetExceededError(f"grid oracle supports n <= {MAX_GRID_NODES} nodes, got n={n}")
    size = grid_size(n, k)
    if size > GRID_BUDGET:
        raise BudgetExceededError(
            f"grid with n={n}, k={k} has {size} points, over the budget of {GRID_BUDGET}"
        )
    C = _compositions(n, int(k)).astype(float)
    values = np.einsum("ij,jk,ik->i", C, A, C) / float(k * k)
    best = values.max()
    i = int(np.argmax(values >= best - 1e-12 * max(1.0, abs(best))))
    x = C[i] / k
    return GridSolution(x=x, payoff=float(x @ A @ x), resolution=int(k))


def check_adjacency(adj):
    adj = np.asarray(adj)
    if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
        raise InvalidInputError(f"expected a square adjacency matrix, got shape {adj.shape}")
    if not np.isin(adj, (0, 1)).all():
        raise InvalidInputError("adjacency matrix must be 0/1")
    if not np.array_equal(adj, adj.T):
        raise InvalidInputError("adjacency matrix must be symmetric")
    if np.diag(adj).any():
        raise InvalidInputError("adjacency matrix must have a zero diagonal")
    return adj.astype(bool)


def maximal_cliques(adj):
    """All maximal cliques of a 0/1 graph, each sorted, list sorted lexicographically.

    Bron-Kerbosch with Tomita pivoting. Isolated nodes are maximal cliques of size 1.
    """
    adj = check_adjacency(adj)
    n = adj.shape[0]
    if n > MAX_CLIQUE_NODES:
        raise BudgetExceededError(f"clique oracle supports n <= {MAX_CLIQUE_NODES}, got n={n}")
    nbrs = [set(np.flatnonzero(adj[i]).tolist()) for i in range(n)]
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(sorted(r))
            return
        pivot = max(p | x, key=lambda u: len(p & nbrs[u]))
        for v in sorted(p - nbrs[pivot]):
            expand(r | {v}, p & nbrs[v], x & nbrs[v])
            p = p - {v}
            x = x | {v}

    if n:
        expand(set(), set(range(n)), set())
    return sorted(out)


def is_clique(adj, nodes):
    adj = np.asarray(adj, dtype=bool)
    nodes = list(nodes)
    sub = adj[np.ix_(nodes, nodes)]
    return bool(sub.sum() == len(nodes) * (len(nodes) - 1))


def is_maximal_clique(adj, nodes):
    """True when ``nodes`` is a clique no other node of ``adj`` is fully adjacent to."""
    adj = np.asarray(adj, dtype=bool)
    nodes = list(nodes)
    if not nodes or not is_clique(adj, nodes):
        return False
    others = np.setdiff1d(np.arange(adj.shape[0]), nodes)
    return not adj[np.ix_(others, nodes)].all(axis=1).any()

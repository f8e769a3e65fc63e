"""Evolutionary game dynamics that locally maximize x'Ax over the simplex.

Three discrete-time dynamics are provided:

* ``rd``: replicator dynamics, ``x_i <- x_i (Ax)_i / x'Ax``.
* ``exprd``: exponential replicator dynamics, ``x_i <- x_i exp(k (Ax)_i)`` normalized.
* ``inimdyn``: infection-immunization dynamics. At each step the state is invaded by
  the pure strategy (or co-strategy) with the largest payoff excess, mixed in at
  the share that maximizes the payoff along that direction. The selection scheme
  and invasion share follow Rota Bulo, Pelillo & Bomze (2011), "Graph-based
  quadratic optimization: a fast evolutionary approach".

Payoff is nondecreasing under ``rd`` and ``inimdyn`` for symmetric nonnegative
``A``; nothing is guaranteed for asymmetric matrices.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import DynamicsError, InvalidInputError, NumericOverflowError, ZeroPayoffError
from .simplex import renormalize

DYNAMICS = ("rd", "exprd", "inimdyn")
CRITERIA = ("step", "payoff")


@dataclass(frozen=True)
class DynamicsConfig:
    """How to iterate a dynamics.

    ``criterion="step"`` stops once the Euclidean distance between successive
    iterates drops below ``precision``; ``criterion="payoff"`` uses the absolute
    change of x'Ax instead. ``kappa`` is only read by ``exprd``.
    """

    kind: str = "rd"
    precision: float = 1e-6
    max_iters: int = 1000
    kappa: float = 1.0
    criterion: str = "step"

    def __post_init__(self):
        if self.kind not in DYNAMICS:
            raise InvalidInputError(f"unknown dynamics {self.kind!r}; choose from {DYNAMICS}")
        if self.criterion not in CRITERIA:
            raise InvalidInputError(f"unknown criterion {self.criterion!r}; choose from {CRITERIA}")
        if not (np.isfinite(self.precision) and self.precision > 0):
            raise InvalidInputError(f"precision must be positive, got {self.precision!r}")
        if isinstance(self.max_iters, bool) or int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise InvalidInputError(f"max_iters must be a positive integer, got {self.max_iters!r}")
        if not (np.isfinite(self.kappa) and self.kappa > 0):
            raise InvalidInputError(f"kappa must be positive, got {self.kappa!r}")


@dataclass
class DynamicsResult:
    x: np.ndarray
    iterations: int
    payoff: float
    converged: bool
    nash_gap: float


def payoff(A, x):
    """x'Ax."""
    return float(x @ (A @ x))


def nash_gap(A, x):
    """``max_i (Ax)_i - x'Ax``; zero exactly at equilibria of the clustering game."""
    A = np.asarray(A, dtype=float)
    x = np.asarray(x, dtype=float)
    Ax = A @ x
    return float(Ax.max() - x @ Ax)


def rd_step(A, x):
    """One replicator-dynamics update."""
    Ax = A @ x
    value = float(x @ Ax)
    if not value > 0:
        raise ZeroPayoffError("x'Ax is zero: the support induces an edgeless subgraph")
    return renormalize(x * Ax / value)


def exp_rd_step(A, x, kappa=1.0):
    """One exponential replicator update with a max-shift against overflow."""
    if not kappa > 0:
        raise InvalidInputError(f"kappa must be positive, got {kappa!r}")
    alive = x > 0
    with np.errstate(over="ignore", invalid="ignore"):
        z = kappa * (A @ x)
        # Shifting by the max over the support keeps at least one weight equal to x_i.
        z = z - z[alive].max()
        w = np.where(alive, x * np.exp(z), 0.0)
    if not np.all(np.isfinite(w)):
        raise NumericOverflowError("non-finite weights in exponential replicator step")
    return renormalize(w)


def inimdyn_step(A, x, tol=0.0):
    """One infection-immunization update.

    Strategies whose payoff excess does not exceed ``tol`` in magnitude are not
    infective. If none is infective, ``x`` is an equilibrium and is returned
    unchanged.
    """
    Ax = A @ x
    excess = Ax - x @ Ax
    infective = (excess > tol) | ((x > 0) & (x < 1) & (excess < -tol))
    if not infective.any():
        return x
    strength = np.where(infective, np.abs(excess), -np.inf)
    i = int(np.argmax(strength))
    if excess[i] > 0:
        y = np.zeros_like(x)
        y[i] = 1.0
    else:
        y = x.copy()
        y[i] = 0.0
        y /= 1.0 - x[i]
    d = y - x
    gain = float(d @ Ax)
    curvature = float(d @ (A @ d))
    delta = 1.0
    if curvature < 0:
        delta = min(gain / -curvature, 1.0)
    if delta >= 1.0:
        # Exact at the endpoint; avoids leaving rounding residue on a vanished strategy.
        return renormalize(y)
    return renormalize((1.0 - delta) * x + delta * y)


def step(A, x, cfg):
    if cfg.kind == "rd":
        return rd_step(A, x)
    if cfg.kind == "exprd":
        return exp_rd_step(A, x, cfg.kappa)
    return inimdyn_step(A, x, tol=cfg.precision)


def run_dynamics(A, x0, cfg=None):
    """Iterate the configured dynamics from ``x0`` until convergence or ``max_iters``.

    Step errors propagate with ``iteration`` (1-based) and ``state`` (the last
    valid iterate) attached.
    """
    cfg = cfg or DynamicsConfig()
    A = np.asarray(A, dtype=float)
    x = renormalize(x0)
    if A.ndim != 2 or A.shape != (x.size, x.size):
        raise InvalidInputError(f"state of size {x.size} does not match matrix of shape {A.shape}")
    converged = False
    prev_value = payoff(A, x)
    t = 0
    while t < cfg.max_iters:
        t += 1
        try:
            x_new = step(A, x, cfg)
        except DynamicsError as err:
            err.iteration, err.state = t, x
            raise
        value = payoff(A, x_new)
        if cfg.criterion == "step":
            done = float(np.linalg.norm(x_new - x)) < cfg.precision
        else:
            done = abs(value - prev_value) < cfg.precision
        x, prev_value = x_new, value
        if done:
            converged = True
            break
    return DynamicsResult(
        x=x, iterations=t, payoff=prev_value, converged=converged, nash_gap=nash_gap(A, x)
    )

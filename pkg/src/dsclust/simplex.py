"""Probability-vector primitives for states of the game dynamics."""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateStateError, InvalidInputError

#: Negative entries down to this value are treated as rounding noise and clamped.
NEGATIVE_TOLERANCE = 1e-14

#: Support threshold used when none is given.
DEFAULT_THETA = 1e-5

# Sums this close to one are left undivided, which makes renormalize idempotent.
_SUM_SLACK = 1e-15


class EmptySupportWarning(RuntimeWarning):
    """No entry of the state exceeds the support threshold."""


@dataclass(frozen=True)
class Support:
    """Indices of the entries of a state that strictly exceed ``theta``."""

    indices: np.ndarray
    theta: float

    @property
    def empty(self):
        return self.indices.size == 0

    def __len__(self):
        return int(self.indices.size)

    def __iter__(self):
        return iter(self.indices.tolist())

    def __contains__(self, i):
        return i in self.indices.tolist()


def barycenter(n):
    """Uniform distribution on ``n`` nodes, the default starting state."""
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise InvalidInputError(f"barycenter needs a positive integer dimension, got {n!r}")
    return np.full(int(n), 1.0 / n)


def support(x, theta=DEFAULT_THETA):
    """Return ``{i : x[i] > theta}``.

    An empty result is not an error: an :class:`EmptySupportWarning` is emitted and
    the caller decides what to do with it.
    """
    if not theta >= 0:
        raise InvalidInputError(f"theta must be >= 0, got {theta!r}")
    x = np.asarray(x, dtype=float)
    idx = np.flatnonzero(x > theta)
    if idx.size == 0:
        warnings.warn(
            f"empty support: no entry exceeds theta={theta:g} (max entry {x.max(initial=0.0):g})",
            EmptySupportWarning,
            stacklevel=2,
        )
    return Support(indices=idx, theta=float(theta))


def renormalize(v):
    """Project a nearly-stochastic raw vector back onto the simplex.

    Entries in ``[-1e-14, 0)`` are clamped to zero, then the vector is divided by
    its sum. Anything more negative than that, non-finite, or with no positive
    mass raises :class:`DegenerateStateError`. The operation is idempotent bit for
    bit.
    """
    v = np.array(v, dtype=float)
    if v.ndim != 1:
        raise DegenerateStateError(f"expected a 1-d vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise DegenerateStateError("state has non-finite entries")
    if v.size and v.min() < -NEGATIVE_TOLERANCE:
        raise DegenerateStateError(f"state has a negative entry {v.min():g}")
    v[v <= 0] = 0.0
    total = math.fsum(v)
    if total <= 0:
        raise DegenerateStateError("state has no positive mass")
    if abs(total - 1.0) <= _SUM_SLACK:
        return v
    return v / total


def is_simplex_vector(x, atol=1e-12):
    x = np.asarray(x, dtype=float)
    return bool(x.ndim == 1 and x.size > 0 and x.min() >= 0 and abs(math.fsum(x) - 1.0) <= atol)

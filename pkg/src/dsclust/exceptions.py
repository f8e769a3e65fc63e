"""Exception hierarchy shared by every dsclust module."""


class DSError(Exception):
    """Base class for all dsclust errors."""


class InvalidInputError(DSError, ValueError):
    """Input data or parameters violate a documented precondition."""


class InsufficientDataError(InvalidInputError):
    """Too few samples to compute the requested quantity."""


class BudgetExceededError(InvalidInputError):
    """An exhaustive oracle would exceed its enumeration budget."""


class DynamicsError(DSError, ArithmeticError):
    """A dynamics step could not produce a valid simplex state.

    ``iteration`` and ``state`` are filled in by :func:`dsclust.dynamics.run_dynamics`
    when the error escapes an iterated run: the 1-based index of the failing step
    and the last valid state before it.
    """

    def __init__(self, message, iteration=None, state=None):
        super().__init__(message)
        self.iteration = iteration
        self.state = state

    def __str__(self):
        msg = super().__str__()
        if self.iteration is not None:
            msg = f"{msg} (at iteration {self.iteration})"
        return msg


class ZeroPayoffError(DynamicsError):
    """x'Ax is zero: the current support induces an edgeless subgraph."""


class DegenerateStateError(DynamicsError):
    """A raw vector cannot be normalized onto the simplex."""


class NumericOverflowError(DynamicsError):
    """Exponentiation produced non-finite values despite the max-shift."""


class ConsistencyError(DSError, RuntimeError):
    """Internal bookkeeping is inconsistent (overlapping or missing nodes)."""

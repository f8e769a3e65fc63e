import numpy as np
import pytest

_ACCEPTANCE = []


@pytest.fixture
def record():
    """Register one acceptance-criterion outcome for the terminal summary."""

    def _record(name, passed, detail=""):
        _ACCEPTANCE.append((name, bool(passed), detail))

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")


def random_symmetric(rng, n, low=0.0, high=1.0):
    """Symmetric matrix, U[low, high] off the diagonal, zero diagonal."""
    A = np.triu(rng.uniform(low, high, (n, n)), 1)
    return A + A.T


def planted_triangle(rng, n=6):
    """Weights >= 0.9 inside a random triangle, <= 0.1 elsewhere. Returns (A, triangle)."""
    A = rng.uniform(0.0, 0.1, (n, n))
    tri = np.sort(rng.choice(n, 3, replace=False))
    A[np.ix_(tri, tri)] = rng.uniform(0.9, 1.0, (3, 3))
    A = np.triu(A, 1)
    return A + A.T, tri


def random_simplex_point(rng, n, p_zero=0.2):
    """Dirichlet draw with some coordinates knocked out to exercise faces."""
    x = rng.dirichlet(np.ones(n))
    if n > 1:
        drop = rng.random(n) < p_zero
        drop[rng.integers(n)] = False
        x[drop] = 0.0
    return x / x.sum()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


TRIANGLE = np.ones((3, 3)) - np.eye(3)
PAIR = np.array([[0.0, 1.0], [1.0, 0.0]])

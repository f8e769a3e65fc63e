import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dsclust.affinity import (
    check_affinity,
    gaussian_kernel,
    pairwise_distances,
    read_affinity_csv,
    read_points_csv,
    sigma_heuristic,
    validate_affinity,
)
from dsclust.cli import make_blobs
from dsclust.exceptions import InsufficientDataError, InvalidInputError


def test_distances_345():
    D = pairwise_distances([[0, 0], [3, 4]])
    assert D[0, 1] == 5.0 and D[1, 0] == 5.0
    assert D[0, 0] == 0.0


def test_distances_single_point():
    np.testing.assert_array_equal(pairwise_distances([[7.0]]), np.zeros((1, 1)))


def test_distances_three_blobs_positive():
    pts, _ = make_blobs([[1, 1], [5, 5], [8, 8]], 100, seed=0)
    D = pairwise_distances(pts)
    off = D[~np.eye(300, dtype=bool)]
    assert np.all(np.isfinite(off)) and np.all(off > 0)


def test_distances_reject_nonfinite():
    with pytest.raises(InvalidInputError):
        pairwise_distances([[0, np.nan], [1, 1]])


def test_distances_unknown_metric():
    with pytest.raises(InvalidInputError):
        pairwise_distances([[0, 0]], metric="cosine")


@settings(max_examples=50)
@given(st.integers(3, 12), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_euclidean_is_a_metric(m, d, seed):
    X = np.random.default_rng(seed).normal(scale=10, size=(m, d))
    D = pairwise_distances(X)
    np.testing.assert_array_equal(D, D.T)
    i, j, k = np.random.default_rng(seed + 1).choice(m, 3, replace=False)
    assert D[i, k] <= (D[i, j] + D[j, k]) * (1 + 1e-9)


def test_sigma_equidistant_is_zero():
    D = pairwise_distances([[0, 0], [1, 0], [0.5, math.sqrt(3) / 2]])
    assert sigma_heuristic(D) == pytest.approx(0.0, abs=1e-15)


def test_sigma_condensed_vector():
    # unbiased variance of {1, 3} is 2
    assert sigma_heuristic(np.array([1.0, 3.0])) == 6.0


def test_sigma_blobs_positive():
    pts, _ = make_blobs([[1, 1], [5, 5], [8, 8]], 100, seed=3)
    assert sigma_heuristic(pairwise_distances(pts)) > 0


def test_sigma_needs_two_points():
    with pytest.raises(InsufficientDataError):
        sigma_heuristic(np.zeros((1, 1)))


def test_kernel_values():
    A = gaussian_kernel(np.array([[0.0, 5.0], [5.0, 0.0]]), 5.0)
    e1 = 0.36787944117144233
    np.testing.assert_allclose(A, [[0, e1], [e1, 0]], rtol=1e-15)
    A0 = gaussian_kernel(np.zeros((2, 2)), 0.3)
    assert A0[0, 1] == 1.0 and A0[0, 0] == 0.0


@pytest.mark.parametrize("sigma", [0.0, -1.0, np.inf, np.nan])
def test_kernel_rejects_sigma(sigma):
    with pytest.raises(InvalidInputError):
        gaussian_kernel(np.zeros((2, 2)), sigma)


@given(st.integers(2, 15), st.floats(1e-3, 1e3), st.integers(0, 2**32 - 1))
def test_kernel_range_and_monotone(m, sigma, seed):
    X = np.random.default_rng(seed).normal(size=(m, 2))
    D = pairwise_distances(X)
    A = gaussian_kernel(D, sigma)
    off = ~np.eye(m, dtype=bool)
    assert np.all(np.diag(A) == 0)
    assert np.all((A[off] >= 0) & (A[off] <= 1))
    d, a = D[off], A[off]
    order = np.argsort(d, kind="stable")
    d, a = d[order], a[order]
    strictly_closer = d[:-1] < d[1:]
    assert np.all(a[:-1][strictly_closer] >= a[1:][strictly_closer])


def test_validate_identity():
    diag = validate_affinity(np.eye(3))
    assert diag.nonzero_diagonal == [0, 1, 2]
    assert not diag.valid


def test_validate_zeros_disconnected():
    diag = validate_affinity(np.zeros((4, 4)))
    assert diag.valid and diag.disconnected


def test_validate_negative():
    A = np.zeros((3, 3))
    A[1, 2] = -0.1
    diag = validate_affinity(A)
    assert diag.negative == [(1, 2)]
    assert not diag.symmetric and not diag.valid


def test_validate_nonsquare_and_nonfinite():
    assert not validate_affinity(np.zeros((2, 3))).square
    A = np.zeros((2, 2))
    A[0, 1] = np.inf
    assert validate_affinity(A).nonfinite == [(0, 1)]


def test_check_affinity_repair_is_explicit():
    A = np.ones((3, 3))
    with pytest.raises(InvalidInputError, match="diagonal"):
        check_affinity(A)
    fixed = check_affinity(A, repair_diagonal=True)
    np.testing.assert_array_equal(np.diag(fixed), 0)
    assert A[0, 0] == 1.0


def test_read_points_header_and_labels():
    text = "x0,x1,label\n1.5,2,0\n3,4.25,1\n"
    pts, labels = read_points_csv(io.StringIO(text))
    np.testing.assert_array_equal(pts, [[1.5, 2], [3, 4.25]])
    np.testing.assert_array_equal(labels, [0, 1])


def test_read_points_headerless():
    pts, labels = read_points_csv(io.StringIO("1,2\n3,4\n"))
    assert pts.shape == (2, 2) and labels is None


def test_read_points_ragged():
    with pytest.raises(InvalidInputError, match="row 2"):
        read_points_csv(io.StringIO("1,2\n3\n"))


def test_read_affinity_csv():
    A = read_affinity_csv(io.StringIO("0,0.5\n0.5,0\n"))
    np.testing.assert_array_equal(A, [[0, 0.5], [0.5, 0]])
    with pytest.raises(InvalidInputError):
        read_affinity_csv(io.StringIO("0,1,2\n1,0,2\n"))
    with pytest.raises(InvalidInputError):
        read_affinity_csv(io.StringIO("0,1,5\n1,0\n"))
    with pytest.raises(InvalidInputError):
        read_affinity_csv(io.StringIO("0,1,2\n1,0,2\n2,2,0.5\n"))

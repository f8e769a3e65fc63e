"""Build and validate affinity matrices from point clouds or files.

Affinity matrices are dense ``n x n`` arrays of nonnegative weights with a zero
diagonal (the graph has no self-loops). Symmetry is not required.
"""

import csv
import io
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import pdist, squareform
from sklearn.utils.validation import check_array

from .exceptions import InsufficientDataError, InvalidInputError

METRICS = ("euclidean",)


def check_points(points):
    """Validate a point cloud and return it as a 2-d float array."""
    try:
        return check_array(points, dtype=np.float64, ensure_2d=True, ensure_all_finite=True)
    except ValueError as exc:
        raise InvalidInputError(str(exc)) from exc


def pairwise_distances(points, metric="euclidean"):
    """Full ``m x m`` distance matrix between the rows of ``points``."""
    if metric not in METRICS:
        raise InvalidInputError(f"unsupported metric {metric!r}; choose from {METRICS}")
    X = check_points(points)
    if X.shape[0] == 1:
        return np.zeros((1, 1))
    D = squareform(pdist(X, metric=metric))
    np.fill_diagonal(D, 0.0)
    return D


def _condensed(distances):
    d = np.asarray(distances, dtype=float)
    if d.ndim == 1:
        return d
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise InvalidInputError(f"expected a square distance matrix, got shape {d.shape}")
    if d.shape[0] < 2:
        raise InsufficientDataError("sigma heuristic needs at least two points")
    return d[np.triu_indices(d.shape[0], k=1)]


def sigma_heuristic(distances):
    """Kernel scale as three times the variance of the pairwise distances.

    ``distances`` is either a square distance matrix (its strictly upper triangle is
    used) or an already condensed vector of pairwise distances. The variance is the
    unbiased sample variance (``ddof=1``); a single distance has variance 0.

    A return value of 0 means every distance is equal. The kernel is undefined
    there and :func:`gaussian_kernel` rejects it.
    """
    d = _condensed(distances)
    if d.size == 0:
        raise InsufficientDataError("sigma heuristic needs at least one pairwise distance")
    if not np.all(np.isfinite(d)):
        raise InvalidInputError("distances must be finite")
    if d.size == 1:
        return 0.0
    return 3.0 * float(np.var(d, ddof=1))


def gaussian_kernel(distances, sigma):
    """``exp(-d / sigma)`` off the diagonal, zero on it."""
    if not (np.isfinite(sigma) and sigma > 0):
        raise InvalidInputError(f"sigma must be a positive finite number, got {sigma!r}")
    D = np.asarray(distances, dtype=float)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise InvalidInputError(f"expected a square distance matrix, got shape {D.shape}")
    if not np.all(np.isfinite(D)) or (D < 0).any():
        raise InvalidInputError("distances must be finite and nonnegative")
    A = np.exp(-D / sigma)
    np.fill_diagonal(A, 0.0)
    return A


@dataclass
class AffinityDiagnostics:
    """Report produced by :func:`validate_affinity`. Never raises by itself."""

    shape: tuple
    square: bool = True
    nonfinite: list = field(default_factory=list)
    negative: list = field(default_factory=list)
    nonzero_diagonal: list = field(default_factory=list)
    symmetric: bool = True
    disconnected: bool = False

    @property
    def valid(self):
        return self.square and not (self.nonfinite or self.negative or self.nonzero_diagonal)

    def problems(self):
        out = []
        if not self.square:
            out.append(f"matrix is not square: shape {self.shape}")
        if self.nonfinite:
            out.append(f"non-finite entries at {self.nonfinite[:5]}")
        if self.negative:
            out.append(f"negative entries at {self.negative[:5]}")
        if self.nonzero_diagonal:
            out.append(f"nonzero diagonal at nodes {self.nonzero_diagonal[:5]}")
        return out


def _positions(mask):
    return [tuple(int(i) for i in p) for p in np.argwhere(mask)]


def validate_affinity(A):
    """Inspect ``A`` and report every violation of the affinity-matrix invariants.

    Asymmetry is informational only. An all-zero matrix is valid but flagged as
    fully disconnected.
    """
    A = np.asarray(A, dtype=float)
    diag = AffinityDiagnostics(shape=A.shape)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        diag.square = False
        return diag
    finite = np.isfinite(A)
    diag.nonfinite = _positions(~finite)
    with np.errstate(invalid="ignore"):
        diag.negative = _positions(finite & (A < 0))
        dvals = np.diag(A)
        diag.nonzero_diagonal = [int(i) for i in np.flatnonzero(~np.isfinite(dvals) | (dvals != 0))]
        diag.symmetric = bool(np.array_equal(A, A.T))
        diag.disconnected = bool(np.all(A == 0))
    return diag


def check_affinity(A, repair_diagonal=False):
    """Validate ``A`` and return a float copy, raising on any violation.

    A nonzero diagonal is an error unless ``repair_diagonal`` is set, in which case
    it is zeroed in the returned copy.
    """
    A = np.array(A, dtype=float)
    diag = validate_affinity(A)
    if repair_diagonal and diag.square and diag.nonzero_diagonal:
        np.fill_diagonal(A, 0.0)
        diag = validate_affinity(A)
    if not diag.valid:
        raise InvalidInputError("invalid affinity matrix: " + "; ".join(diag.problems()))
    if A.shape[0] < 1:
        raise InvalidInputError("affinity matrix is empty")
    return A


def _parse_float(tok):
    # float() ignores locale, so '.' is always the decimal separator.
    return float(tok.strip())


def _read_rows(path_or_buffer):
    if isinstance(path_or_buffer, (str, bytes)) or hasattr(path_or_buffer, "__fspath__"):
        with open(path_or_buffer, newline="", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = path_or_buffer.read()
    return [row for row in csv.reader(io.StringIO(text)) if row and any(c.strip() for c in row)]


def _is_numeric_row(row):
    try:
        [_parse_float(c) for c in row]
    except ValueError:
        return False
    return True


def read_points_csv(path_or_buffer):
    """Load a points CSV; returns ``(points, labels)``.

    A non-numeric first row is taken as a header. If the header names a column
    ``label``, that column is returned separately as integer ground-truth labels
    instead of being treated as a coordinate. ``labels`` is None otherwise.
    """
    rows = _read_rows(path_or_buffer)
    header = None
    if rows and not _is_numeric_row(rows[0]):
        header = [c.strip() for c in rows[0]]
        rows = rows[1:]
    if not rows:
        raise InvalidInputError("points file has no data rows")
    width = len(rows[0])
    label_col = header.index("label") if header and "label" in header else None
    pts, labels = [], []
    for lineno, row in enumerate(rows, start=2 if header else 1):
        if len(row) != width:
            raise InvalidInputError(f"row {lineno} has {len(row)} fields, expected {width}")
        try:
            vals = [_parse_float(c) for c in row]
        except ValueError as exc:
            raise InvalidInputError(f"row {lineno}: {exc}") from exc
        if label_col is not None:
            labels.append(int(vals.pop(label_col)))
        pts.append(vals)
    points = check_points(np.array(pts, dtype=float))
    return points, (np.array(labels, dtype=int) if label_col is not None else None)


def read_affinity_csv(path_or_buffer, repair_diagonal=False):
    """Load a square affinity CSV and validate it with :func:`check_affinity`."""
    rows = _read_rows(path_or_buffer)
    if not rows:
        raise InvalidInputError("affinity file is empty")
    try:
        A = np.array([[_parse_float(c) for c in row] for row in rows], dtype=float)
    except ValueError as exc:
        raise InvalidInputError(f"affinity file is not a numeric matrix: {exc}") from exc
    return check_affinity(A, repair_diagonal=repair_diagonal)

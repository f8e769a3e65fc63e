"""Command-line interface: ``dsclust gen-blobs | cluster | verify``.

Exit codes: 0 success, 2 invalid input, 1 internal error.
"""

import argparse
import json
import logging
import sys
import time

import numpy as np

from .affinity import gaussian_kernel, pairwise_distances, read_affinity_csv, read_points_csv, sigma_heuristic
from .clustering import peel_clusters
from .dynamics import CRITERIA, DYNAMICS, DynamicsConfig
from .exceptions import InvalidInputError
from .oracle import MAX_GRID_NODES, grid_simplex_maximizer, is_maximal_clique, maximal_cliques

logger = logging.getLogger("dsclust")

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID = 0, 1, 2


def _positive_float(s):
    try:
        v = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {s!r}")
    if not (np.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError(f"must be positive: {s!r}")
    return v


def _positive_int(s):
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {s!r}")
    return v


def _sigma(s):
    return s if s == "auto" else _positive_float(s)


def parse_centers(text):
    """``"1,1;5,5;8,8"`` -> 3x2 array."""
    try:
        rows = [[float(c) for c in part.split(",")] for part in text.split(";") if part.strip()]
    except ValueError as exc:
        raise InvalidInputError(f"bad --centers {text!r}: {exc}") from exc
    if not rows or len({len(r) for r in rows}) != 1:
        raise InvalidInputError(f"--centers needs rows of equal dimension, got {text!r}")
    return np.array(rows)


def make_blobs(centers, n_per_center, seed=0):
    """Points ``center + N(0, I)``, ``n_per_center`` per center, interleaved by center.

    Uses numpy's PCG64 generator, so output is identical across platforms for a
    given seed. Returns ``(points, labels)``.
    """
    centers = np.asarray(centers, dtype=float)
    rng = np.random.Generator(np.random.PCG64(seed))
    k, d = centers.shape
    pts = np.tile(centers, (n_per_center, 1)) + rng.standard_normal((k * n_per_center, d))
    return pts, np.tile(np.arange(k), n_per_center)


def _fmt(v):
    return repr(float(v))


def cmd_gen_blobs(args):
    centers = parse_centers(args.centers)
    pts, labels = make_blobs(centers, args.n, args.seed)
    header = [f"x{j}" for j in range(pts.shape[1])] + (["label"] if args.with_labels else [])
    lines = [",".join(header)]
    for p, lab in zip(pts, labels):
        row = [_fmt(v) for v in p] + ([str(int(lab))] if args.with_labels else [])
        lines.append(",".join(row))
    _write_text(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def _write_text(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def load_affinity(args):
    """Resolve the input into ``(A, sigma)`` per ``--input-format``."""
    if args.input_format == "affinity":
        if args.sigma is not None:
            raise InvalidInputError("--sigma only applies to --input-format points")
        return read_affinity_csv(args.input, repair_diagonal=args.repair_diagonal), None
    points, _ = read_points_csv(args.input)
    if points.shape[0] == 1:
        return np.zeros((1, 1)), None
    D = pairwise_distances(points)
    sigma = "auto" if args.sigma is None else args.sigma
    if sigma == "auto":
        sigma = sigma_heuristic(D)
        if sigma <= 0:
            raise InvalidInputError("all pairwise distances are equal; automatic sigma is 0, pass --sigma")
    return gaussian_kernel(D, sigma), float(sigma)


def _dynamics_config(args):
    return DynamicsConfig(
        kind=args.dynamics,
        precision=args.precision,
        max_iters=args.max_iters,
        kappa=args.kappa,
        criterion=args.criterion,
    )


def cmd_cluster(args):
    start = time.perf_counter()
    A, sigma = load_affinity(args)
    cfg = _dynamics_config(args)
    result = peel_clusters(A, cfg, args.theta)
    elapsed = time.perf_counter() - start

    small = [c.size < args.min_size for c in result.clusters]
    outliers = result.outliers | np.array(small)[result.labels]
    lines = ["node_index,cluster_id,is_outlier"]
    lines += [
        f"{i},{lab},{'true' if out else 'false'}"
        for i, (lab, out) in enumerate(zip(result.labels.tolist(), outliers.tolist()))
    ]
    _write_text(args.labels_out, "\n".join(lines) + "\n")

    stats = {
        "n": int(A.shape[0]),
        "K": result.n_clusters,
        "input_format": args.input_format,
        "sigma": sigma,
        "dynamics": cfg.kind,
        "kappa": cfg.kappa,
        "theta": args.theta,
        "precision": cfg.precision,
        "max_iters": cfg.max_iters,
        "criterion": cfg.criterion,
        "min_size": args.min_size,
        "n_outliers": int(outliers.sum()),
        "clusters": [
            {
                "id": c.extraction_order,
                "size": c.size,
                "cohesiveness": c.cohesiveness,
                "centroid": c.centroid,
                "iterations": c.iterations,
                "converged": c.converged,
                "degenerate": c.degenerate,
                "outlier": bool(c.is_outlier or too_small),
            }
            for c, too_small in zip(result.clusters, small)
        ],
    }
    if args.timing:
        stats["wall_time_s"] = elapsed
    if args.stats_out:
        _write_text(args.stats_out, json.dumps(stats, indent=2) + "\n")
    logger.info("clustered %d nodes into %d clusters in %.3fs", stats["n"], stats["K"], elapsed)
    return EXIT_OK


def verify_report(A, cfg, theta, k):
    """Compare the first extracted dominant set with the grid oracle on ``A``."""
    n = A.shape[0]
    if n > MAX_GRID_NODES:
        raise InvalidInputError(f"verify supports at most {MAX_GRID_NODES} nodes, input has n={n}")
    result = peel_clusters(A, cfg, theta)
    first = result.clusters[0]
    oracle = grid_simplex_maximizer(A, k)
    ratio = first.cohesiveness / oracle.payoff if oracle.payoff > 0 else 1.0
    report = {
        "n": n,
        "grid": k,
        "first_members": first.members.tolist(),
        "first_cohesiveness": first.cohesiveness,
        "oracle_payoff": oracle.payoff,
        "oracle_x": oracle.x.tolist(),
        "payoff_ratio": ratio,
        "binary": False,
        "first_is_maximal_clique": None,
    }
    if np.isin(A, (0.0, 1.0)).all() and np.array_equal(A, A.T):
        report["binary"] = True
        report["maximal_cliques"] = maximal_cliques(A.astype(int))
        report["first_is_maximal_clique"] = is_maximal_clique(A, first.members)
    return report


def cmd_verify(args):
    A, _ = load_affinity(args)
    report = verify_report(A, _dynamics_config(args), args.theta, args.grid)
    sys.stdout.write(json.dumps(report, indent=2) + "\n")
    return EXIT_OK


def _add_run_options(p):
    p.add_argument("--input", required=True, help="points or affinity CSV")
    p.add_argument("--input-format", choices=("points", "affinity"), default="affinity")
    p.add_argument("--sigma", type=_sigma, default=None,
                   help="kernel scale for points input: 'auto' (default) or a positive number")
    p.add_argument("--dynamics", choices=DYNAMICS, default="rd")
    p.add_argument("--kappa", type=_positive_float, default=1.0, help="exprd selection strength")
    p.add_argument("--theta", type=_positive_float, default=1e-5, help="support threshold")
    p.add_argument("--precision", type=_positive_float, default=1e-6, help="convergence tolerance")
    p.add_argument("--max-iters", type=_positive_int, default=1000)
    p.add_argument("--criterion", choices=CRITERIA, default="step",
                   help="stop on iterate distance (step) or payoff change (payoff)")
    p.add_argument("--repair-diagonal", action="store_true",
                   help="zero a nonzero affinity diagonal instead of rejecting the file")


def build_parser():
    parser = argparse.ArgumentParser(prog="dsclust", description="Dominant-set clustering.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-blobs", help="write Gaussian blobs as a points CSV")
    g.add_argument("--centers", default="1,1;5,5;8,8", help='e.g. "1,1;5,5;8,8"')
    g.add_argument("--n", type=_positive_int, default=100, help="points per center")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default="-")
    g.add_argument("--with-labels", action="store_true", help="append a ground-truth label column")
    g.set_defaults(func=cmd_gen_blobs)

    c = sub.add_parser("cluster", help="cluster a points or affinity CSV")
    _add_run_options(c)
    c.add_argument("--labels-out", default="-")
    c.add_argument("--stats-out", default=None)
    c.add_argument("--min-size", type=_positive_int, default=1,
                   help="flag clusters smaller than this as outliers")
    c.add_argument("--timing", action="store_true", help="record wall time in the stats JSON")
    c.set_defaults(func=cmd_cluster)

    v = sub.add_parser("verify", help="cross-check the first cluster against the grid oracle")
    _add_run_options(v)
    v.add_argument("--grid", type=_positive_int, default=20, help="grid resolution k")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except (InvalidInputError, OSError) as exc:
        print(f"dsclust: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        logger.exception("internal error")
        print(f"dsclust: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 2 argument or parse error, 3 numeric failure,
4 structural violation. Identical inputs, seed, and thread count produce
byte-identical outputs; worker results merge in input order.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .errors import ArgumentError, NumericError, StructuralViolationError
from .families import SplitMix64, verify_family
from .io import (
    collisions_obj,
    components_obj,
    eigs_obj,
    monodromy_obj,
    read_family_spec,
    read_hull,
    read_matrix,
    read_path,
    stream_scan_csv,
    write_bundle_csv,
    write_components_json,
    write_scan_csv,
)
from .linalg import BarycentricPoint, eigenvalues
from .pairgraph import build_pairing_graph, export_dot, principal_graph
from .surface import (
    SCAN_SAMPLE_CAP,
    component_separation,
    grid_size,
    k_components,
    scan,
)
from .tolerances import DEFAULT_TOLERANCES, ToleranceConfig
from .track import DEFAULT_TRACKER, MatrixPath, TrackerConfig, monodromy, track
from .util import parallel_map

__all__ = ["main"]


def _add_tolerance_flags(p: argparse.ArgumentParser):
    p.add_argument("--tol-eig", type=float, default=DEFAULT_TOLERANCES.tol_eig)
    p.add_argument(
        "--cluster-tol", type=float, default=DEFAULT_TOLERANCES.cluster_tol
    )
    p.add_argument(
        "--disc-tol", type=float, default=DEFAULT_TOLERANCES.disc_zero_tol
    )


def _add_common_flags(p: argparse.ArgumentParser):
    _add_tolerance_flags(p)
    p.add_argument("--steps", type=int, default=DEFAULT_TRACKER.initial_steps)
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--seed", type=int, default=0)


def _tolerances(args) -> ToleranceConfig:
    return ToleranceConfig(
        tol_eig=args.tol_eig,
        cluster_tol=args.cluster_tol,
        disc_zero_tol=args.disc_tol,
    )


def _tracker(args) -> TrackerConfig:
    if args.steps < 1:
        raise ArgumentError("--steps must be >= 1")
    if args.steps == DEFAULT_TRACKER.initial_steps:
        return DEFAULT_TRACKER
    return TrackerConfig(initial_steps=args.steps)


def _emit(obj):
    json.dump(obj, sys.stdout)
    sys.stdout.write("\n")


def cmd_eigs(args) -> int:
    matrix = read_matrix(args.matrix)
    _emit(eigs_obj(eigenvalues(matrix)))
    return 0


def cmd_track(args) -> int:
    path = read_path(args.path)
    bundle = track(path, _tracker(args))
    sidecar = os.path.splitext(args.out)[0] + ".collisions.json"
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        write_bundle_csv(bundle, fh)
    with open(sidecar, "w", encoding="utf-8") as fh:
        json.dump(collisions_obj(bundle), fh, indent=2)
        fh.write("\n")
    _emit(
        {
            "samples": len(bundle.parameters),
            "slots": int(bundle.values.shape[1]),
            "collisions": len(bundle.collisions),
            "out": args.out,
            "collisions_out": sidecar,
        }
    )
    return 0


def cmd_loop(args) -> int:
    path = read_path(args.path)
    perm = monodromy(path, _tracker(args), _tolerances(args))
    _emit(monodromy_obj(perm))
    return 0


def cmd_scan(args) -> int:
    hull = read_hull(args.hull)
    if args.resolution < 1:
        raise ArgumentError("--resolution must be >= 1")
    tol = _tolerances(args)
    os.makedirs(args.out, exist_ok=True)
    csv_path = os.path.join(args.out, "scan.csv")
    total = grid_size(hull.k, args.resolution)
    if total > SCAN_SAMPLE_CAP:
        with open(csv_path, "w", encoding="utf-8", newline="") as fh:
            count = stream_scan_csv(hull, args.resolution, fh, tol)
        sys.stderr.write(
            f"lattice of {count} samples exceeds the in-memory cap "
            f"({SCAN_SAMPLE_CAP}); scan.csv streamed, components skipped\n"
        )
        _emit({"samples": count, "out": csv_path, "components": None})
        return 0
    result = scan(hull, args.resolution, tol, threads=args.threads)
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        write_scan_csv(result, fh)
    comps = k_components(result, _tracker(args), tol, threads=args.threads)
    separation = component_separation(comps, result)
    comps_path = os.path.join(args.out, "components.json")
    with open(comps_path, "w", encoding="utf-8") as fh:
        write_components_json(comps, separation, fh)
    _emit(
        {
            "samples": len(result.samples),
            "out": csv_path,
            "components": comps_path,
            "component_sizes": [c.k for c in comps],
        }
    )
    return 0


def cmd_graph(args) -> int:
    hull = read_hull(args.hull)
    tol = _tolerances(args)
    cfg = _tracker(args)
    if args.principal:
        result = scan(hull, args.resolution, tol, threads=args.threads)
        graph = principal_graph(hull, result, cfg, tol, threads=args.threads)
    else:
        graph = build_pairing_graph(
            hull.generators, cfg, tol, labels=list(hull.labels), threads=args.threads
        )
    text = export_dot(graph)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    spec = read_family_spec(args.family)
    result = verify_family(spec, _tracker(args), _tolerances(args))
    _emit(result)
    return 0


def cmd_probe_random_loops(args) -> int:
    hull = read_hull(args.hull)
    if args.count < 1:
        raise ArgumentError("--count must be >= 1")
    if args.waypoints < 2:
        raise ArgumentError("--waypoints must be >= 2")
    rng = SplitMix64(args.seed)
    loops = []
    for _ in range(args.count):
        pts = []
        for _ in range(args.waypoints):
            w = np.array([rng.uniform() for _ in range(hull.k)])
            pts.append(BarycentricPoint(w / w.sum()))
        pts.append(pts[0])
        loops.append(MatrixPath.hull_polygonal(hull, pts, closed=True))
    cfg = _tracker(args)
    tol = _tolerances(args)

    def probe(loop):
        return monodromy(loop, cfg, tol).value_preserving

    flags = parallel_map(probe, loops, args.threads)
    good = sum(1 for f in flags if f)
    _emit(
        {
            "loops": args.count,
            "waypoints": args.waypoints,
            "weakly_transitive": good,
            "weakly_transitive_fraction": good / args.count,
        }
    )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eigensurface",
        description="Eigenvalue surfaces of matrix convex hulls: tracking, "
        "scans, pairing graphs, and family verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eigs", help="print a matrix's eigenvalues as JSON")
    p.add_argument("matrix")
    _add_common_flags(p)
    p.set_defaults(func=cmd_eigs)

    p = sub.add_parser("track", help="track eigenvalues along a path")
    p.add_argument("path")
    p.add_argument("--out", required=True)
    _add_common_flags(p)
    p.set_defaults(func=cmd_track)

    p = sub.add_parser("loop", help="monodromy permutation of a closed path")
    p.add_argument("path")
    _add_common_flags(p)
    p.set_defaults(func=cmd_loop)

    p = sub.add_parser("scan", help="classify a hull's barycentric lattice")
    p.add_argument("hull")
    p.add_argument("--resolution", type=int, required=True)
    p.add_argument("--out", required=True)
    _add_common_flags(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("graph", help="pairing graph of a hull as DOT")
    p.add_argument("hull")
    p.add_argument("--principal", action="store_true")
    p.add_argument("--resolution", type=int, default=10)
    p.add_argument("--out", default=None)
    _add_common_flags(p)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("verify", help="check a family against its oracle")
    p.add_argument("family")
    _add_common_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser(
        "probe-random-loops",
        help="fraction of random closed loops that preserve values",
    )
    p.add_argument("hull")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--waypoints", type=int, default=4)
    _add_common_flags(p)
    p.set_defaults(func=cmd_probe_random_loops)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ArgumentError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except StructuralViolationError as exc:
        sys.stderr.write(f"structural violation: {exc}\n")
        return 4
    except NumericError as exc:
        sys.stderr.write(f"numeric failure: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())

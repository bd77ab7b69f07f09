"""File formats: matrix/hull/path/family JSON, bundle and scan CSV, DOT.

All CSV floats use %.17g so doubles round-trip exactly; JSON floats rely on
Python's shortest round-trip repr. Readers raise ArgumentError naming the
offending field, with line/column for malformed JSON.
"""

from __future__ import annotations

import csv
import json

import numpy as np

from .errors import ArgumentError
from .families import FamilySpec
from .linalg import BarycentricPoint, ComplexMatrix, MatrixHull, lex_compare
from .tolerances import DEFAULT_TOLERANCES
from .track import MatrixPath, TrackedBundle

__all__ = [
    "read_json",
    "matrix_from_obj",
    "read_matrix",
    "hull_from_obj",
    "read_hull",
    "read_path",
    "read_family_spec",
    "eigs_obj",
    "write_bundle_csv",
    "collisions_obj",
    "write_collisions_json",
    "scan_csv_header",
    "scan_csv_row",
    "write_scan_csv",
    "stream_scan_csv",
    "components_obj",
    "write_components_json",
    "monodromy_obj",
]

_F = "%.17g"


def read_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ArgumentError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ArgumentError(
            f"malformed JSON in {path} at line {exc.lineno} column {exc.colno}: "
            f"{exc.msg}"
        ) from exc


def _entry_to_complex(value, where: str) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if (
        isinstance(value, (list, tuple))
        and len(value) == 2
        and all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in value)
    ):
        return complex(value[0], value[1])
    raise ArgumentError(
        f"field {where}: expected a number or a [re, im] pair, got {value!r}"
    )


def matrix_from_obj(obj, where: str = "matrix") -> ComplexMatrix:
    if not isinstance(obj, dict):
        raise ArgumentError(f"field {where}: expected an object with n/entries")
    if "n" not in obj:
        raise ArgumentError(f"field {where}.n: missing")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ArgumentError(f"field {where}.n: expected a positive integer")
    rows = obj.get("entries")
    if not isinstance(rows, list) or len(rows) != n:
        raise ArgumentError(f"field {where}.entries: expected {n} rows")
    out = np.empty((n, n), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ArgumentError(
                f"field {where}.entries[{i}]: expected a row of {n} entries"
            )
        for j, cell in enumerate(row):
            out[i, j] = _entry_to_complex(cell, f"{where}.entries[{i}][{j}]")
    return ComplexMatrix(out)


def read_matrix(path: str) -> ComplexMatrix:
    return matrix_from_obj(read_json(path))


def hull_from_obj(obj, where: str = "hull") -> MatrixHull:
    if not isinstance(obj, dict):
        raise ArgumentError(f"field {where}: expected an object with matrices")
    mats = obj.get("matrices")
    if not isinstance(mats, list) or not mats:
        raise ArgumentError(f"field {where}.matrices: expected a nonempty list")
    generators = tuple(
        matrix_from_obj(m, f"{where}.matrices[{i}]") for i, m in enumerate(mats)
    )
    labels = obj.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(
            isinstance(l, str) for l in labels
        ):
            raise ArgumentError(f"field {where}.labels: expected a list of strings")
        if len(labels) != len(generators):
            raise ArgumentError(
                f"field {where}.labels: {len(labels)} labels for "
                f"{len(generators)} matrices"
            )
        labels = tuple(labels)
    return MatrixHull(generators, labels=labels)


def read_hull(path: str) -> MatrixHull:
    return hull_from_obj(read_json(path))


def read_path(path: str) -> MatrixPath:
    obj = read_json(path)
    if not isinstance(obj, dict):
        raise ArgumentError("field path: expected an object")
    closed = obj.get("closed", False)
    if not isinstance(closed, bool):
        raise ArgumentError("field closed: expected true or false")
    waypoints = obj.get("waypoints")
    if not isinstance(waypoints, list) or len(waypoints) < 2:
        raise ArgumentError("field waypoints: expected a list of at least 2")
    hull_obj = obj.get("hull")
    if hull_obj is not None:
        hull = hull_from_obj(hull_obj)
        points = []
        for i, w in enumerate(waypoints):
            if not isinstance(w, list) or len(w) != hull.k:
                raise ArgumentError(
                    f"field waypoints[{i}]: expected {hull.k} barycentric weights"
                )
            try:
                points.append(BarycentricPoint(np.asarray(w, dtype=float)))
            except (ArgumentError, ValueError, TypeError) as exc:
                raise ArgumentError(f"field waypoints[{i}]: {exc}") from exc
        return MatrixPath.hull_polygonal(hull, points, closed=closed)
    mats = [
        matrix_from_obj(w, f"waypoints[{i}]") for i, w in enumerate(waypoints)
    ]
    return MatrixPath.polygonal(mats, closed=closed)


def read_family_spec(path: str) -> FamilySpec:
    obj = read_json(path)
    if not isinstance(obj, dict):
        raise ArgumentError("field family: expected an object")
    kind = obj.get("kind")
    if not isinstance(kind, str):
        raise ArgumentError("field kind: expected a string")
    n = obj.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ArgumentError("field n: expected a positive integer")
    seed = obj.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ArgumentError("field seed: expected an integer")
    params = obj.get("params", {})
    if not isinstance(params, dict):
        raise ArgumentError("field params: expected an object")
    return FamilySpec(kind=kind, n=n, seed=seed, params=params)


def eigs_obj(values: np.ndarray) -> list:
    """Eigenvalues as [[re, im], ...] sorted by (re, im)."""
    pairs = sorted((float(v.real), float(v.imag)) for v in values)
    return [[re, im] for re, im in pairs]


def write_bundle_csv(bundle: TrackedBundle, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["x", "slot", "re", "im"])
    for x, row in zip(bundle.parameters, bundle.values):
        for slot, value in enumerate(row):
            writer.writerow(
                [_F % x, str(slot), _F % value.real, _F % value.imag]
            )


def collisions_obj(bundle: TrackedBundle) -> dict:
    return {
        "collisions": [
            {
                "x": float(ev.x_location),
                "slots": [int(c) for c in ev.columns],
                "min_gap": float(ev.min_gap_attained),
            }
            for ev in bundle.collisions
        ]
    }


def write_collisions_json(bundle: TrackedBundle, fh):
    json.dump(collisions_obj(bundle), fh, indent=2)
    fh.write("\n")


def scan_csv_header(k: int) -> list:
    return [f"alpha_{i + 1}" for i in range(k)] + [
        "slot",
        "re",
        "im",
        "disc_re",
        "disc_im",
        "mult_list",
        "class",
    ]


def scan_csv_row(weights, slot, value, disc, mult_list, cls) -> list:
    return (
        [_F % w for w in weights]
        + [str(slot), _F % value.real, _F % value.imag]
        + [_F % disc.real, _F % disc.imag, mult_list.dashed(), cls]
    )


def write_scan_csv(scan_result, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(scan_csv_header(scan_result.k))
    for s in scan_result.samples:
        for slot, value in enumerate(s.eigenvalues):
            writer.writerow(
                scan_csv_row(
                    s.alpha.weights, slot, value, s.disc, s.mult_list, s.cls
                )
            )


def stream_scan_csv(hull, N, fh, tol=DEFAULT_TOLERANCES):
    """Two-pass streaming writer for lattices too large to hold in memory.

    The first pass finds the scan-wide minimal multiplicity list (the
    classification baseline), the second re-evaluates and writes rows.
    """
    from .surface import CLASS_CORE, CLASS_EXCEPTIONAL, scan_rows

    minimal = None
    for entry in scan_rows(hull, N, tol):
        mult = entry[6]
        if minimal is None or lex_compare(mult, minimal) < 0:
            minimal = mult
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(scan_csv_header(hull.k))
    count = 0
    for _idx, _counts, w, row, disc, _dz, mult in scan_rows(hull, N, tol):
        cls = CLASS_EXCEPTIONAL if lex_compare(mult, minimal) > 0 else CLASS_CORE
        for slot, value in enumerate(row):
            writer.writerow(scan_csv_row(w, slot, complex(value), complex(disc), mult, cls))
        count += 1
    return count


def components_obj(components, separation) -> dict:
    return {
        "components": [
            {
                "id": int(c.id),
                "k": int(c.k),
                "members": [[int(a), int(b)] for a, b in c.members],
            }
            for c in components
        ],
        "separation": [
            {
                "pair": [int(a), int(b)],
                "distance": float(d),
            }
            for (a, b), d in sorted(separation.items())
        ],
    }


def write_components_json(components, separation, fh):
    json.dump(components_obj(components, separation), fh, indent=2)
    fh.write("\n")


def monodromy_obj(perm) -> dict:
    return {
        "mapping": [int(i) for i in perm.mapping],
        "value_preserving": bool(perm.value_preserving),
        "weakly_transitive": bool(perm.weakly_transitive),
        "transitive": bool(perm.transitive),
        "max_value_drift": float(perm.max_value_drift),
        "collisions": [
            {
                "x": float(ev.x_location),
                "slots": [int(c) for c in ev.columns],
                "min_gap": float(ev.min_gap_attained),
            }
            for ev in perm.collisions
        ],
    }

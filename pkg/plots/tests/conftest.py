import json
import subprocess
import sys

import pytest


def run_cli(*argv, cwd=None):
    """Run the eigensurface CLI in a subprocess; the plots side only ever
    sees its file outputs, same as a user would."""
    proc = subprocess.run(
        [sys.executable, "-m", "eigensurface.cli", *argv],
        capture_output=True,
        text=True,
        cwd=cwd,
    )
    assert proc.returncode == 0, proc.stderr
    return proc


def _mat(rows):
    return {
        "n": len(rows),
        "entries": [
            [[float(z.real), float(z.imag)] for z in row] for row in rows
        ],
    }


def _quadrant_hull_obj():
    return {
        "matrices": [
            _mat([[0, 1], [1, 0]]),
            _mat([[0, 1], [1j, 0]]),
            _mat([[0, 1], [-1, 0]]),
            _mat([[0, 1], [-1j, 0]]),
        ],
        "labels": ["c1", "ci", "cm1", "cmi"],
    }


def _diag_pair_hull_obj():
    return {
        "matrices": [
            _mat([[1, 0], [0, 2]]),
            _mat([[2, 0], [0, 3]]),
        ],
        "labels": ["lo", "hi"],
    }


def _pagerank_hull_obj():
    shift = [[0.0] * 4 for _ in range(4)]
    for i in range(4):
        shift[i][(i + 1) % 4] = 1.0
    flat = [[0.25] * 4 for _ in range(4)]
    return {"matrices": [_mat(shift), _mat(flat)], "labels": ["S", "evT"]}


def _run_scan(tmp_path_factory, name, hull_obj, resolution):
    root = tmp_path_factory.mktemp(name)
    hull = root / "hull.json"
    hull.write_text(json.dumps(hull_obj))
    outdir = root / "out"
    run_cli(
        "scan",
        str(hull),
        "--resolution", str(resolution),
        "--steps", "8",
        "--out", str(outdir),
    )
    return {"csv": outdir / "scan.csv", "components": outdir / "components.json"}


@pytest.fixture(scope="session")
def quadrant_outputs(tmp_path_factory):
    return _run_scan(tmp_path_factory, "quadrant", _quadrant_hull_obj(), 10)


@pytest.fixture(scope="session")
def diag_outputs(tmp_path_factory):
    return _run_scan(tmp_path_factory, "diag", _diag_pair_hull_obj(), 10)


@pytest.fixture(scope="session")
def pagerank_dot(tmp_path_factory):
    root = tmp_path_factory.mktemp("pagerank")
    hull = root / "hull.json"
    hull.write_text(json.dumps(_pagerank_hull_obj()))
    out = root / "graph.dot"
    run_cli("graph", str(hull), "--out", str(out))
    return out


@pytest.fixture(scope="session")
def principal_dot(tmp_path_factory):
    root = tmp_path_factory.mktemp("principal")
    hull = root / "hull.json"
    hull.write_text(json.dumps(_quadrant_hull_obj()))
    out = root / "principal.dot"
    run_cli(
        "graph",
        str(hull),
        "--principal",
        "--resolution", "6",
        "--steps", "8",
        "--out", str(out),
    )
    return out


@pytest.fixture(scope="session")
def bundle_csv(tmp_path_factory):
    root = tmp_path_factory.mktemp("bundle")
    path = root / "path.json"
    path.write_text(
        json.dumps(
            {"waypoints": [_mat([[1, 0], [0, 2]]), _mat([[3, 0], [0, 5]])]}
        )
    )
    out = root / "bundle.csv"
    run_cli("track", str(path), "--out", str(out))
    return out

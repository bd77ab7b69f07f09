"""Command-line behavior: wire formats, outputs, determinism, exit codes."""

import json
import subprocess
import sys

import numpy as np
import pytest

import eigensurface.cli as cli_mod
from eigensurface.cli import main
from eigensurface.errors import (
    NumericError,
    StructuralViolationError,
    TrackingError,
)
from eigensurface.io import eigs_obj, matrix_from_obj, read_path


def mat_obj(rows):
    rows = np.asarray(rows, dtype=complex)
    return {
        "n": rows.shape[0],
        "entries": [
            [[float(z.real), float(z.imag)] for z in row] for row in rows
        ],
    }


def write_json(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj), encoding="utf-8")
    return str(p)


def quadrant_hull_obj():
    return {
        "matrices": [
            mat_obj([[0, 1], [c, 0]]) for c in (1.0, 1.0j, -1.0, -1.0j)
        ],
        "labels": ["c1", "ci", "cm1", "cmi"],
    }


def run(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestEigs:
    def test_identity(self, tmp_path, capsys):
        path = write_json(tmp_path, "m.json", mat_obj(np.eye(2)))
        rc, out, _ = run(capsys, ["eigs", path])
        assert rc == 0
        assert json.loads(out) == [[1.0, 0.0], [1.0, 0.0]]

    def test_sorted_by_real_then_imag(self, tmp_path, capsys):
        path = write_json(tmp_path, "m.json", mat_obj([[0, 1], [1, 0]]))
        rc, out, _ = run(capsys, ["eigs", path])
        assert rc == 0
        got = json.loads(out)
        assert got[0][0] == pytest.approx(-1.0)
        assert got[1][0] == pytest.approx(1.0)

    def test_plain_numbers_accepted(self, tmp_path, capsys):
        path = write_json(
            tmp_path, "m.json", {"n": 2, "entries": [[2, 0], [0, 3]]}
        )
        rc, out, _ = run(capsys, ["eigs", path])
        assert rc == 0
        assert json.loads(out) == [[2.0, 0.0], [3.0, 0.0]]

    def test_malformed_json(self, tmp_path, capsys):
        p = tmp_path / "bad.json"
        p.write_text("{ oops", encoding="utf-8")
        rc, _, err = run(capsys, ["eigs", str(p)])
        assert rc == 2
        assert "line 1" in err and "column" in err

    def test_missing_file(self, tmp_path, capsys):
        rc, _, err = run(capsys, ["eigs", str(tmp_path / "nope.json")])
        assert rc == 2
        assert "cannot read" in err

    def test_ragged_entries_named(self, tmp_path, capsys):
        path = write_json(
            tmp_path, "m.json", {"n": 2, "entries": [[1, 2], [3]]}
        )
        rc, _, err = run(capsys, ["eigs", path])
        assert rc == 2
        assert "entries[1]" in err

    def test_boolean_entry_rejected(self, tmp_path, capsys):
        path = write_json(
            tmp_path, "m.json", {"n": 1, "entries": [[True]]}
        )
        rc, _, err = run(capsys, ["eigs", path])
        assert rc == 2
        assert "entries[0][0]" in err


class TestTrack:
    def diag_path(self, tmp_path):
        return write_json(
            tmp_path,
            "path.json",
            {
                "hull": None,
                "waypoints": [mat_obj(np.diag([1, 2])), mat_obj(np.diag([2, 3]))],
                "closed": False,
            },
        )

    def test_straight_tracks(self, tmp_path, capsys):
        out_csv = str(tmp_path / "bundle.csv")
        rc, out, _ = run(
            capsys, ["track", self.diag_path(tmp_path), "--out", out_csv]
        )
        assert rc == 0
        summary = json.loads(out)
        assert summary["samples"] == 65
        assert summary["slots"] == 2
        assert summary["collisions"] == 0
        assert summary["out"] == out_csv
        lines = open(out_csv, encoding="utf-8").read().splitlines()
        assert lines[0] == "x,slot,re,im"
        assert len(lines) == 1 + 65 * 2
        assert lines[1] == "0,0,1,0"
        assert lines[2] == "0,1,2,0"
        assert lines[-2] == "1,0,2,0"
        assert lines[-1] == "1,1,3,0"
        sidecar = json.load(open(summary["collisions_out"], encoding="utf-8"))
        assert sidecar == {"collisions": []}

    def test_collision_sidecar(self, tmp_path, capsys):
        path = write_json(
            tmp_path,
            "cross.json",
            {
                "hull": None,
                "waypoints": [
                    mat_obj(np.diag([1, -1])),
                    mat_obj([[0, 1], [-1, 0]]),
                ],
                "closed": False,
            },
        )
        out_csv = str(tmp_path / "b.csv")
        rc, out, _ = run(capsys, ["track", path, "--out", out_csv])
        assert rc == 0
        summary = json.loads(out)
        assert summary["collisions"] == 1
        sidecar = json.load(open(summary["collisions_out"], encoding="utf-8"))
        (event,) = sidecar["collisions"]
        assert event["x"] == pytest.approx(0.5, abs=1e-6)
        assert event["slots"] == [0, 1]
        assert event["min_gap"] < 1e-7

    def test_closed_flag_checks_endpoints(self, tmp_path, capsys):
        path = write_json(
            tmp_path,
            "open.json",
            {
                "hull": None,
                "waypoints": [mat_obj(np.diag([1, 2])), mat_obj(np.diag([2, 3]))],
                "closed": True,
            },
        )
        rc, _, err = run(capsys, ["track", path, "--out", str(tmp_path / "x.csv")])
        assert rc == 2
        assert "closed" in err

    def test_out_flag_required(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["track", self.diag_path(tmp_path)])
        assert exc.value.code == 2


class TestLoop:
    def test_quadrant_vertex_cycle(self, tmp_path, capsys):
        path = write_json(
            tmp_path,
            "loop.json",
            {
                "hull": quadrant_hull_obj(),
                "waypoints": [
                    [1, 0, 0, 0],
                    [0, 1, 0, 0],
                    [0, 0, 1, 0],
                    [0, 0, 0, 1],
                    [1, 0, 0, 0],
                ],
                "closed": True,
            },
        )
        rc, out, _ = run(capsys, ["loop", path])
        assert rc == 0
        got = json.loads(out)
        assert got["mapping"] == [1, 0]
        assert got["value_preserving"] is False
        assert got["weakly_transitive"] is False
        assert got["transitive"] is False
        assert got["max_value_drift"] == pytest.approx(2.0, abs=1e-6)

    def test_hermitian_loop_preserves_values(self, tmp_path, capsys):
        a = mat_obj(np.diag([1, -1]))
        b = mat_obj([[0, 1], [1, 0]])
        c = mat_obj(np.diag([-1, 1]))
        path = write_json(
            tmp_path,
            "herm.json",
            {"hull": None, "waypoints": [a, b, c, a], "closed": True},
        )
        rc, out, _ = run(capsys, ["loop", path])
        assert rc == 0
        got = json.loads(out)
        assert got["value_preserving"] is True
        assert got["max_value_drift"] < 1e-8

    def test_open_path_rejected(self, tmp_path, capsys):
        path = write_json(
            tmp_path,
            "open.json",
            {
                "hull": None,
                "waypoints": [mat_obj(np.diag([1, 2])), mat_obj(np.diag([2, 3]))],
                "closed": False,
            },
        )
        rc, _, err = run(capsys, ["loop", path])
        assert rc == 2
        assert "closed" in err


class TestScan:
    def diag_hull(self, tmp_path):
        return write_json(
            tmp_path,
            "hull.json",
            {"matrices": [mat_obj(np.diag([1, 2])), mat_obj(np.diag([2, 3]))]},
        )

    def test_two_branch_hull(self, tmp_path, capsys):
        out_dir = str(tmp_path / "scan_out")
        rc, out, _ = run(
            capsys,
            ["scan", self.diag_hull(tmp_path), "--resolution", "10", "--out", out_dir],
        )
        assert rc == 0
        summary = json.loads(out)
        assert summary["samples"] == 11
        assert sorted(summary["component_sizes"]) == [1, 1]
        lines = open(summary["out"], encoding="utf-8").read().splitlines()
        assert lines[0] == "alpha_1,alpha_2,slot,re,im,disc_re,disc_im,mult_list,class"
        assert len(lines) == 1 + 11 * 2
        assert all(ln.endswith(",core") for ln in lines[1:])
        comps = json.load(open(summary["components"], encoding="utf-8"))
        assert len(comps["components"]) == 2
        (sep,) = comps["separation"]
        assert sep["pair"] == [0, 1]
        assert sep["distance"] == pytest.approx(1.0, abs=1e-9)

    def test_crossing_hull_exceptional_rows(self, tmp_path, capsys):
        hull = write_json(
            tmp_path,
            "cross.json",
            {"matrices": [mat_obj(np.diag([1, -1])), mat_obj([[0, 1], [-1, 0]])]},
        )
        out_dir = str(tmp_path / "out")
        rc, out, _ = run(
            capsys,
            ["scan", hull, "--resolution", "10", "--out", out_dir, "--steps", "8"],
        )
        assert rc == 0
        summary = json.loads(out)
        assert summary["component_sizes"] == [2]
        lines = open(summary["out"], encoding="utf-8").read().splitlines()
        bad = [ln for ln in lines if ln.endswith(",exceptional")]
        assert len(bad) == 2
        assert all(ln.startswith("0.5,0.5,") for ln in bad)
        comps = json.load(open(summary["components"], encoding="utf-8"))
        assert comps["separation"] == []

    def test_resolution_must_be_positive(self, tmp_path, capsys):
        rc, _, err = run(
            capsys,
            ["scan", self.diag_hull(tmp_path), "--resolution", "0",
             "--out", str(tmp_path / "o")],
        )
        assert rc == 2
        assert "--resolution" in err

    def test_streaming_fallback_matches_in_memory(self, tmp_path, capsys, monkeypatch):
        hull = self.diag_hull(tmp_path)
        rc, out, _ = run(
            capsys,
            ["scan", hull, "--resolution", "10", "--out", str(tmp_path / "full")],
        )
        assert rc == 0
        full_csv = open(json.loads(out)["out"], encoding="utf-8").read()

        monkeypatch.setattr(cli_mod, "SCAN_SAMPLE_CAP", 5)
        rc, out, err = run(
            capsys,
            ["scan", hull, "--resolution", "10", "--out", str(tmp_path / "streamed")],
        )
        assert rc == 0
        summary = json.loads(out)
        assert summary["components"] is None
        assert summary["samples"] == 11
        assert "streamed" in err and "components skipped" in err
        assert open(summary["out"], encoding="utf-8").read() == full_csv


class TestGraph:
    def test_stdout_and_file_agree(self, tmp_path, capsys):
        hull = write_json(
            tmp_path,
            "hull.json",
            {"matrices": [mat_obj(np.diag([1, 2])), mat_obj(np.diag([2, 3]))]},
        )
        rc, out, _ = run(capsys, ["graph", hull])
        assert rc == 0
        assert out.startswith("graph ES {\n")
        assert "(A1)" in out and "(A2)" in out

        out_file = str(tmp_path / "g.dot")
        rc, silent, _ = run(capsys, ["graph", hull, "--out", out_file])
        assert rc == 0
        assert silent == ""
        assert open(out_file, encoding="utf-8").read() == out

    def test_byte_determinism(self, tmp_path, capsys):
        hull = write_json(tmp_path, "hull.json", quadrant_hull_obj())
        rc, first, _ = run(capsys, ["graph", hull])
        assert rc == 0
        rc, second, _ = run(capsys, ["graph", hull])
        assert rc == 0
        assert first == second

    def test_principal_includes_representative(self, tmp_path, capsys):
        hull = write_json(tmp_path, "hull.json", quadrant_hull_obj())
        rc, out, _ = run(
            capsys,
            ["graph", hull, "--principal", "--resolution", "4", "--steps", "8"],
        )
        assert rc == 0
        assert "(u0)" in out
        assert "mult=2" in out
        assert "m4_s0" in out

    def test_empty_hull_rejected(self, tmp_path, capsys):
        hull = write_json(tmp_path, "empty.json", {"matrices": []})
        rc, _, err = run(capsys, ["graph", hull])
        assert rc == 2
        assert "matrices" in err


class TestVerify:
    def test_toeplitz(self, tmp_path, capsys):
        spec = write_json(
            tmp_path, "fam.json", {"kind": "toeplitz_tridiag", "n": 6}
        )
        rc, out, _ = run(capsys, ["verify", spec])
        assert rc == 0
        got = json.loads(out)
        assert got["pass"] is True
        assert got["family"] == "toeplitz_tridiag"
        assert got["max_error"] <= 1e-8

    def test_pagerank_explicit(self, tmp_path, capsys):
        spec = write_json(
            tmp_path,
            "fam.json",
            {
                "kind": "pagerank",
                "n": 3,
                "params": {
                    "S": [[0, 1, 0], [0, 0, 1], [1, 0, 0]],
                    "v": [0.25, 0.5, 0.25],
                    "alpha": 0.5,
                },
            },
        )
        rc, out, _ = run(capsys, ["verify", spec])
        assert rc == 0
        assert json.loads(out)["pass"] is True

    def test_corrupted_stochastic_rejected(self, tmp_path, capsys):
        spec = write_json(
            tmp_path,
            "fam.json",
            {
                "kind": "pagerank",
                "n": 2,
                "params": {"S": [[0.6, 0.5], [0.5, 0.5]], "v": [0.5, 0.5]},
            },
        )
        rc, _, err = run(capsys, ["verify", spec])
        assert rc == 2
        assert "stochastic" in err

    def test_unknown_kind(self, tmp_path, capsys):
        spec = write_json(tmp_path, "fam.json", {"kind": "wavelet", "n": 3})
        rc, _, err = run(capsys, ["verify", spec])
        assert rc == 2
        assert "unknown family kind" in err

    def test_missing_dimension(self, tmp_path, capsys):
        spec = write_json(tmp_path, "fam.json", {"kind": "circulant"})
        rc, _, err = run(capsys, ["verify", spec])
        assert rc == 2
        assert "field n" in err


class TestProbeRandomLoops:
    def test_runs_and_is_seed_deterministic(self, tmp_path, capsys):
        hull = write_json(tmp_path, "hull.json", quadrant_hull_obj())
        argv = [
            "probe-random-loops", hull,
            "--count", "3", "--waypoints", "3", "--steps", "16", "--seed", "5",
        ]
        rc, first, _ = run(capsys, argv)
        assert rc == 0
        got = json.loads(first)
        assert got["loops"] == 3 and got["waypoints"] == 3
        assert 0 <= got["weakly_transitive"] <= 3
        assert got["weakly_transitive_fraction"] == got["weakly_transitive"] / 3
        rc, second, _ = run(capsys, argv)
        assert rc == 0
        assert first == second

    def test_count_validated(self, tmp_path, capsys):
        hull = write_json(tmp_path, "hull.json", quadrant_hull_obj())
        rc, _, err = run(capsys, ["probe-random-loops", hull, "--count", "0"])
        assert rc == 2
        assert "--count" in err


class TestExitCodes:
    def test_numeric_failures_exit_three(self, tmp_path, capsys, monkeypatch):
        def boom(path, cfg):
            raise TrackingError("unresolvable", interval=(0.0, 1.0))

        monkeypatch.setattr(cli_mod, "track", boom)
        path = write_json(
            tmp_path,
            "p.json",
            {
                "hull": None,
                "waypoints": [mat_obj(np.diag([1, 2])), mat_obj(np.diag([2, 3]))],
                "closed": False,
            },
        )
        rc, _, err = run(capsys, ["track", path, "--out", str(tmp_path / "o.csv")])
        assert rc == 3
        assert "numeric failure" in err

    def test_plain_numeric_error_exits_three(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setattr(
            cli_mod, "eigenvalues", lambda m: (_ for _ in ()).throw(
                NumericError("solver died")
            )
        )
        path = write_json(tmp_path, "m.json", mat_obj(np.eye(2)))
        rc, _, err = run(capsys, ["eigs", path])
        assert rc == 3
        assert "solver died" in err

    def test_structural_violation_exits_four(self, tmp_path, capsys, monkeypatch):
        def broken(result, cfg, tol, threads=1):
            raise StructuralViolationError("count drifted")

        monkeypatch.setattr(cli_mod, "k_components", broken)
        hull = write_json(
            tmp_path,
            "hull.json",
            {"matrices": [mat_obj(np.diag([1, 2])), mat_obj(np.diag([2, 3]))]},
        )
        rc, _, err = run(
            capsys,
            ["scan", hull, "--resolution", "4", "--out", str(tmp_path / "o")],
        )
        assert rc == 4
        assert "structural violation" in err

    def test_unknown_command_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["polish"])
        assert exc.value.code == 2


class TestModuleEntry:
    def test_python_dash_m(self, tmp_path):
        path = write_json(tmp_path, "m.json", mat_obj(np.diag([4, 7])))
        proc = subprocess.run(
            [sys.executable, "-m", "eigensurface.cli", "eigs", str(path)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout) == [[4.0, 0.0], [7.0, 0.0]]


class TestIoHelpers:
    def test_seventeen_digit_round_trip(self):
        for v in (0.1, 1 / 3, 1e-17, 2**53 - 1.0, -0.4999999999999999):
            assert float("%.17g" % v) == v

    def test_eigs_obj_ordering(self):
        got = eigs_obj(np.array([1 + 1j, 1 - 1j, 0.5 + 0j]))
        assert got == [[0.5, 0.0], [1.0, -1.0], [1.0, 1.0]]

    def test_matrix_obj_square_enforced(self):
        with pytest.raises(Exception, match="entries"):
            matrix_from_obj({"n": 2, "entries": [[1, 0]]})

    def test_path_weights_validated(self, tmp_path):
        p = tmp_path / "p.json"
        p.write_text(
            json.dumps(
                {
                    "hull": quadrant_hull_obj(),
                    "waypoints": [[1, 0, 0, 0], [0.5, 0.5]],
                    "closed": False,
                }
            ),
            encoding="utf-8",
        )
        with pytest.raises(Exception, match=r"waypoints\[1\]"):
            read_path(str(p))

    def test_path_negative_weight_named(self, tmp_path):
        p = tmp_path / "p.json"
        p.write_text(
            json.dumps(
                {
                    "hull": quadrant_hull_obj(),
                    "waypoints": [[1, 0, 0, 0], [1.5, -0.5, 0, 0]],
                    "closed": False,
                }
            ),
            encoding="utf-8",
        )
        with pytest.raises(Exception, match=r"waypoints\[1\]"):
            read_path(str(p))

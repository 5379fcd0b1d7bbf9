import json
import math

import numpy as np
import pytest

import ifs_chisel as ic
from ifs_chisel.cli import run


def read_dir(path):
    return {p.name: p.read_bytes() for p in sorted(path.iterdir())}


class TestEllipse:
    def test_two_rotation_text(self, capsys):
        assert run(["ellipse", "--builtin", "paper-example"]) == 0
        out = capsys.readouterr().out
        assert "foci: (0, 0) (1, 0)" in out
        assert "M = 4" in out
        assert "lambda = 0.6" in out
        assert "D = 1" in out

    def test_json_output(self, capsys):
        assert run(["ellipse", "--builtin", "sierpinski", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["m_threshold"] == pytest.approx(6.0, abs=1e-12)
        assert len(doc["foci"]) == 3

    def test_ifs_file(self, tmp_path, capsys):
        path = tmp_path / "sys.json"
        path.write_bytes(ic.serialize_ifs(ic.builtin("cantor")))
        assert run(["ellipse", "--ifs", str(path)]) == 0
        assert "M = 2" in capsys.readouterr().out

    def test_requires_exactly_one_source(self, capsys):
        assert run(["ellipse"]) == 1
        assert (
            run(["ellipse", "--builtin", "cantor", "--ifs", "x.json"]) == 1
        )
        assert capsys.readouterr().err != ""


class TestVerify:
    def test_theorem_region_passes(self, capsys):
        code = run(
            ["verify", "--builtin", "paper-example", "--samples", "10000", "--seed", "1"]
        )
        assert code == 0
        assert "PASS" in capsys.readouterr().out

    def test_unit_disk_counterexample_exits_two(self, capsys):
        code = run(
            [
                "verify",
                "--builtin",
                "paper-example",
                "--samples",
                "2000",
                "--seed",
                "7",
                "--focus",
                "0,0",
                "--threshold",
                "1",
            ]
        )
        assert code == 2
        assert "FAIL" in capsys.readouterr().out

    def test_json_report(self, capsys):
        code = run(
            ["verify", "--builtin", "cantor", "--samples", "500", "--seed", "3", "--json"]
        )
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["pass"] is True
        assert doc["n"] == 500 and doc["seed"] == 3


class TestIterate:
    def test_forward_writes_expected_files(self, tmp_path, capsys):
        out = tmp_path / "fwd"
        code = run(
            [
                "iterate",
                "--builtin",
                "paper-example",
                "--mode",
                "forward",
                "--n",
                "10",
                "--seed-point",
                "1,1",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        names = sorted(p.name for p in out.iterdir())
        assert names[0] == "stage_000.csv" and "trace.csv" in names
        assert len(names) == 12
        rows = (out / "stage_010.csv").read_text().splitlines()
        assert rows[0] == "x,y"
        assert len(rows) == 1 + 1024
        pts = ic.read_points_csv(out / "stage_010.csv")
        sums = ic.distance_sum([(0.0, 0.0), (1.0, 0.0)], pts)
        assert np.all(sums <= 4.0 + 1e-9)

    def test_forward_is_deterministic(self, tmp_path):
        args = [
            "iterate",
            "--builtin",
            "sierpinski",
            "--mode",
            "forward",
            "--n",
            "5",
            "--seed-point",
            "0.25,0.25",
        ]
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert run(args + ["--out", str(out1)]) == 0
        assert run(args + ["--out", str(out2)]) == 0
        assert read_dir(out1) == read_dir(out2)

    def test_deletion_writes_pbm_stages(self, tmp_path):
        out = tmp_path / "del"
        code = run(
            [
                "iterate",
                "--builtin",
                "paper-example",
                "--mode",
                "deletion",
                "--n",
                "2",
                "--resolution",
                "96",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        stage0 = ic.parse_pbm((out / "stage_000.pbm").read_bytes())
        stage2 = ic.parse_pbm((out / "stage_002.pbm").read_bytes())
        assert stage0.marked_count > stage2.marked_count > 0
        trace = (out / "trace.csv").read_text().splitlines()
        assert len(trace) == 4
        assert trace[2].endswith(",1") and trace[3].endswith(",1")

    def test_resource_limit_exits_three(self, tmp_path, capsys):
        code = run(
            [
                "iterate",
                "--builtin",
                "paper-example",
                "--mode",
                "forward",
                "--n",
                "30",
                "--seed-point",
                "1,1",
                "--out",
                str(tmp_path / "big"),
            ]
        )
        assert code == 3
        assert capsys.readouterr().err.startswith("error:")

    def test_forward_needs_seed_point(self, tmp_path, capsys):
        code = run(
            [
                "iterate",
                "--builtin",
                "cantor",
                "--mode",
                "forward",
                "--n",
                "2",
                "--out",
                str(tmp_path / "x"),
            ]
        )
        assert code == 1


class TestHausdorff:
    def test_three_four_five(self, tmp_path, capsys):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        ic.write_points_csv([(0.0, 0.0)], a)
        ic.write_points_csv([(3.0, 4.0)], b)
        assert run(["hausdorff", "--a", str(a), "--b", str(b)]) == 0
        assert capsys.readouterr().out.strip() == "5"

    def test_missing_file(self, tmp_path, capsys):
        a = tmp_path / "a.csv"
        ic.write_points_csv([(0.0, 0.0)], a)
        assert run(["hausdorff", "--a", str(a), "--b", str(tmp_path / "nope.csv")]) == 1


class TestLocus:
    def test_triangle_question(self, tmp_path, capsys):
        foci = tmp_path / "tri.csv"
        ic.write_points_csv(
            [(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3.0) / 2.0)], foci
        )
        out = tmp_path / "locus.pbm"
        edge = tmp_path / "edge.pbm"
        code = run(
            [
                "locus",
                "--foci",
                str(foci),
                "--sum",
                "2",
                "--box=-0.45,-0.42,1.47,1.13",
                "--resolution",
                "128",
                "--out",
                str(out),
                "--boundary-out",
                str(edge),
            ]
        )
        assert code == 0
        region = ic.parse_pbm(out.read_bytes())
        contour = ic.parse_pbm(edge.read_bytes())
        assert region.marked_count > contour.marked_count > 0

    def test_bad_box(self, tmp_path, capsys):
        foci = tmp_path / "f.csv"
        ic.write_points_csv([(0.0, 0.0)], foci)
        code = run(
            [
                "locus",
                "--foci",
                str(foci),
                "--sum",
                "1",
                "--box",
                "0,0,1",
                "--resolution",
                "32",
                "--out",
                str(tmp_path / "x.pbm"),
            ]
        )
        assert code == 1


class TestAttractor:
    def test_cantor_estimate(self, tmp_path, capsys):
        out = tmp_path / "att.csv"
        code = run(
            ["attractor", "--builtin", "cantor", "--eps", "0.001", "--out", str(out)]
        )
        assert code == 0
        pts = ic.read_points_csv(out)
        assert len(pts) == 128
        assert np.all((pts[:, 0] >= -1e-9) & (pts[:, 0] <= 1.0 + 1e-9))

    def test_explicit_seed_point(self, tmp_path):
        out = tmp_path / "att.csv"
        code = run(
            [
                "attractor",
                "--builtin",
                "sierpinski",
                "--eps",
                "0.05",
                "--seed-point",
                "0,0",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        assert len(ic.read_points_csv(out)) > 0


class TestUsage:
    def test_no_subcommand(self, capsys):
        assert run([]) == 1
        assert "subcommand" in capsys.readouterr().err

    def test_unknown_builtin(self, capsys):
        assert run(["ellipse", "--builtin", "menger"]) == 1

    def test_malformed_ifs_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        assert run(["ellipse", "--ifs", str(bad)]) == 1
        assert capsys.readouterr().err.startswith("error:")

    def test_help_exits_zero(self, capsys):
        assert run(["--help"]) == 0
        assert "ellipse" in capsys.readouterr().out

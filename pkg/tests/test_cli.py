import json
import math
import re
import subprocess
import sys

import pytest

from tripwire.cli import OutputSpec, cmd_base_curve, cmd_curve, cmd_optimal_net, main
from tripwire.errors import DomainError
from tripwire.svg import NET_MARGIN, NET_UNIT


def run_main(argv):
    return main(argv)


class TestOutputSpec:
    def test_precision_bounds(self):
        with pytest.raises(DomainError):
            OutputSpec(format="csv", path="x", precision=0)
        with pytest.raises(DomainError):
            OutputSpec(format="csv", path="x", precision=18)
        with pytest.raises(DomainError):
            OutputSpec(format="png", path="x")


class TestCurveCommand:
    def test_single_sample_row(self, tmp_path):
        out = tmp_path / "c.csv"
        code = run_main(
            ["curve", "--n", "2", "--p-min", "5", "--p-max", "5.01", "--step", "0.02",
             "--format", "csv", "--out", str(out), "--precision", "6"]
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert "p,c,branch" in lines
        assert lines[-1] == "5,0.4,vertical"

    def test_csv_annotations_and_monotonicity(self, tmp_path):
        out = tmp_path / "c1.csv"
        run_main(["curve", "--n", "1", "--p-max", "4", "--step", "0.01",
                  "--format", "csv", "--out", str(out)])
        lines = out.read_text().splitlines()
        meta = dict(
            line[2:].split("=", 1) for line in lines if line.startswith("# ")
        )
        assert float(meta["plateau_end"]) == 1.0
        assert abs(float(meta["vertical_end"]) - (1 + math.sqrt(2))) < 1e-8
        rows = [line.split(",") for line in lines if not line.startswith(("#", "p,"))]
        values = [float(r[1]) for r in rows]
        assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))

    def test_byte_identical_across_runs(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["curve", "--n", "1.5", "--p-max", "3", "--step", "0.05", "--format", "csv"]
        run_main(args + ["--out", str(a)])
        run_main(args + ["--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_json_markers(self, tmp_path):
        out = tmp_path / "c.json"
        run_main(["curve", "--n", "1", "--p-max", "4", "--step", "0.5",
                  "--format", "json", "--out", str(out)])
        data = json.loads(out.read_text())
        assert data["markers"]["plateau_end"] == 1.0
        assert data["markers"]["vertical_end"] == pytest.approx(1 + math.sqrt(2), abs=1e-8)
        assert data["samples"][0] == {"p": 1.0, "c": 1.0, "branch": "horizontal-plateau"}

    def test_svg_markers_present(self, tmp_path):
        out = tmp_path / "c.svg"
        run_main(["curve", "--n", "1", "--p-max", "4", "--step", "0.05",
                  "--format", "svg", "--out", str(out)])
        doc = out.read_text()
        marks = re.findall(r'class="marker" data-p="([0-9.]+)"', doc)
        assert len(marks) == 2
        assert float(marks[0]) == pytest.approx(1.0, abs=1e-9)
        assert float(marks[1]) == pytest.approx(1 + math.sqrt(2), abs=1e-8)

    def test_empty_range_is_a_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as err:
            run_main(["curve", "--n", "1", "--p-min", "2", "--p-max", "2",
                      "--format", "csv", "--out", str(tmp_path / "x.csv")])
        assert err.value.code == 2


class TestBaseCurveCommand:
    def test_even_crossover_annotation(self, tmp_path):
        out = tmp_path / "b2.csv"
        run_main(["base-curve", "--k", "2", "--p-max", "4", "--step", "0.25",
                  "--format", "csv", "--out", str(out)])
        lines = out.read_text().splitlines()
        assert "# crossover_aspect=1.5" in lines

    def test_odd_secondary_annotation(self, tmp_path):
        out = tmp_path / "b3.json"
        run_main(["base-curve", "--k", "3", "--p-max", "4", "--step", "0.25",
                  "--format", "json", "--out", str(out)])
        data = json.loads(out.read_text())
        assert data["annotations"]["crossover_aspect"] == 2.0
        assert data["annotations"]["crossover_aspect_line_count"] == 1.0

    def test_zero_lines_is_a_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as err:
            run_main(["base-curve", "--k", "0", "--p-max", "4",
                      "--format", "csv", "--out", str(tmp_path / "x.csv")])
        assert err.value.code == 2

    def test_overlay_requires_svg(self, tmp_path):
        with pytest.raises(SystemExit) as err:
            run_main(["base-curve", "--k", "4", "--p-max", "4", "--overlay", "3,1",
                      "--format", "csv", "--out", str(tmp_path / "x.csv")])
        assert err.value.code == 2

    def test_overlay_svg_has_both_series_and_marker_abscissas(self, tmp_path):
        out = tmp_path / "b4.svg"
        run_main(["base-curve", "--k", "4", "--p-max", "12", "--step", "0.1",
                  "--format", "svg", "--out", str(out), "--overlay", "3,1"])
        doc = out.read_text()
        assert 'data-label="base-curve"' in doc
        assert 'data-label="N(3,1)"' in doc
        marks = [float(m) for m in re.findall(r'class="marker" data-p="([0-9.]+)"', doc)]
        assert marks[0] == pytest.approx(5 / 3, abs=1e-9)  # family crossover
        assert marks[1] == pytest.approx(2.0, abs=1e-9)  # competitor hole aspect
        assert marks[2] == pytest.approx(1 + math.sqrt(2), abs=1e-8)  # grid-branch switch
        # competitor branch switch w_2
        assert marks[3] == pytest.approx(5.7664354, abs=1e-6)


class TestOptimalNetCommand:
    def test_k2_wide_intruder(self, tmp_path):
        out = tmp_path / "net.json"
        run_main(["optimal-net", "--k", "2", "--p", "3", "--out", str(out)])
        data = json.loads(out.read_text())
        assert data["net"] == {"vertical": [0.5], "horizontal": [0.5]}
        assert data["scale_factor"] == pytest.approx(math.sqrt(2) / 8, abs=1e-9)
        assert data["placement"]["branch"] == "diagonal"

    def test_k2_square_intruder(self, tmp_path):
        out = tmp_path / "net.json"
        run_main(["optimal-net", "--k", "2", "--p", "1", "--out", str(out)])
        data = json.loads(out.read_text())
        assert data["net"]["horizontal"] == []
        assert len(data["net"]["vertical"]) == 2
        assert data["scale_factor"] == pytest.approx(1 / 3, abs=1e-9)

    def test_single_line(self, tmp_path):
        out = tmp_path / "net.json"
        run_main(["optimal-net", "--k", "1", "--p", "1", "--out", str(out)])
        data = json.loads(out.read_text())
        assert data["net"] == {"vertical": [0.5], "horizontal": []}
        assert data["scale_factor"] == pytest.approx(0.5, abs=1e-9)

    def test_placement_corners_inside_maximizing_hole(self):
        for k, p in [(2, 3), (4, 4), (5, 2.5), (3, 1.0)]:
            payload = cmd_optimal_net(
                k, p, OutputSpec(format="json", path="/dev/null", precision=17)
            )
            hole = payload["maximizing_hole"]
            for x, y in payload["placement"]["corners"]:
                assert hole["x0"] - 1e-9 <= x <= hole["x0"] + hole["width"] + 1e-9
                assert hole["y0"] - 1e-9 <= y <= hole["y0"] + hole["height"] + 1e-9

    def test_svg_geometry_matches_json(self, tmp_path):
        json_out = tmp_path / "net.json"
        svg_out = tmp_path / "net.svg"
        run_main(["optimal-net", "--k", "4", "--p", "4", "--out", str(json_out), "--precision", "17"])
        run_main(["optimal-net", "--k", "4", "--p", "4", "--format", "svg", "--out", str(svg_out)])
        data = json.loads(json_out.read_text())
        doc = svg_out.read_text()
        points = re.search(r'<polygon points="([^"]+)" .*class="intruder"', doc).group(1)
        corners = []
        for pair in points.split():
            px, py = (float(v) for v in pair.split(","))
            corners.append(((px - NET_MARGIN) / NET_UNIT, 1.0 - (py - NET_MARGIN) / NET_UNIT))
        hole = data["maximizing_hole"]
        for (x, y), expected in zip(corners, data["placement"]["corners"]):
            assert x == pytest.approx(expected[0], abs=1e-9)
            assert y == pytest.approx(expected[1], abs=1e-9)
            assert hole["x0"] - 1e-9 <= x <= hole["x0"] + hole["width"] + 1e-9
            assert hole["y0"] - 1e-9 <= y <= hole["y0"] + hole["height"] + 1e-9
        assert doc.count('class="net-line"') == 4

    def test_csv_format_rejected(self, tmp_path):
        with pytest.raises(SystemExit) as err:
            run_main(["optimal-net", "--k", "2", "--p", "3", "--format", "csv",
                      "--out", str(tmp_path / "x.csv")])
        assert err.value.code == 2


class TestVerifyCommand:
    def test_lagrange_suite(self, tmp_path):
        out = tmp_path / "rep.json"
        code = run_main(["verify", "lagrange", "--k", "6", "--out", str(out)])
        assert code == 0
        data = json.loads(out.read_text())
        assert data["passed"] is True
        assert data["winner"] == "N(3,3)"

    def test_theorem_even_suite(self, tmp_path):
        out = tmp_path / "rep.json"
        code = run_main(["verify", "theorem-even", "--k", "2", "--out", str(out)])
        assert code == 0
        data = json.loads(out.read_text())
        assert data["parameters"]["crossover"] == 1.5
        assert data["parameters"]["mismatches"] == []

    def test_theorem_odd_flags_formula_disagreement(self, tmp_path):
        out = tmp_path / "rep.json"
        code = run_main(["verify", "theorem-odd", "--k", "3", "--out", str(out)])
        assert code == 0
        data = json.loads(out.read_text())
        assert data["parameters"]["crossover"] == 2.0
        assert data["parameters"]["crossover_line_count_formula"] == 1.0
        assert data["parameters"]["formulas_disagree"] is True

    def test_curve_oracle_suite(self, tmp_path):
        out = tmp_path / "rep.json"
        code = run_main(["verify", "curve-oracle", "--n", "1", "--theta-res", "1e-3",
                         "--out", str(out)])
        assert code == 0
        data = json.loads(out.read_text())
        assert data["parameters"]["max_deviation"] <= data["parameters"]["tolerance"]

    def test_irregular_suite(self, tmp_path):
        out = tmp_path / "rep.json"
        code = run_main(["verify", "irregular", "--k", "3", "--p", "2", "--trials", "60",
                         "--seed", "3", "--out", str(out)])
        assert code == 0

    def test_local_optimum_suite(self, tmp_path):
        out = tmp_path / "rep.json"
        code = run_main(["verify", "local-optimum", "--k", "3", "--trials", "25",
                         "--seed", "7", "--out", str(out)])
        assert code == 0
        data = json.loads(out.read_text())
        assert data["seed"] == 7
        assert data["parameters"]["min_perturbed"] >= 0.25 - 1e-9

    def test_report_bytes_deterministic(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        args = ["verify", "irregular", "--k", "2", "--p", "3", "--trials", "40", "--seed", "9"]
        run_main(args + ["--out", str(a)])
        run_main(args + ["--out", str(b)])
        assert a.read_bytes() == b.read_bytes()


def test_module_entry_point(tmp_path):
    out = tmp_path / "c.csv"
    result = subprocess.run(
        [sys.executable, "-m", "tripwire", "curve", "--n", "2", "--p-min", "5",
         "--p-max", "5.01", "--step", "0.02", "--format", "csv", "--out", str(out),
         "--precision", "6"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0, result.stderr
    assert out.read_text().splitlines()[-1] == "5,0.4,vertical"

import json
import math

import numpy as np
import pytest

from qcmi_accel import cli
from qcmi_accel.cli import main
from qcmi_accel.infomeasures import InvariantViolation
from qcmi_accel.rindler import R_MAX
from qcmi_accel.sweep import (
    SWEEP_COLUMNS,
    SweepConfig,
    fmt_num,
    render_compare,
    render_sweep,
    run_compare,
    run_properties,
    run_sweep,
)


class TestFormatting:
    @pytest.mark.parametrize(
        "x, text",
        [
            (0.0, "0"),
            (-0.0, "0"),
            (None, ""),
            (math.nan, "nan"),
            (0.918295834054489, "0.918295834054"),
            (1.5e-5, "1.5e-05"),
            (R_MAX, "0.785398163397"),
        ],
    )
    def test_fmt_num(self, x, text):
        assert fmt_num(x) == text


class TestSweepConfig:
    def test_default_grid(self):
        g = SweepConfig("W_C").grid()
        assert len(g) == 65 and g[0] == 0.0 and g[-1] == R_MAX

    def test_single_point(self):
        cfg = SweepConfig("W_C", r_min=0.0, r_max=0.0, steps=1)
        assert cfg.grid() == [0.0]

    def test_points(self):
        assert SweepConfig("W_BC", steps=2).points()[1] == (R_MAX / 2, R_MAX / 2)
        assert len(SweepConfig("W_BC", steps=2, r2_mode="grid").points()) == 9
        assert SweepConfig("W_AB", steps=2, r2_mode="0.5").points()[0] == (0.0, 0.5)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"r_min": -0.1},
            {"r_min": 0.5, "r_max": 0.4},
            {"r_max": 1.0},
            {"steps": 0},
            {"steps": 2.5},
            {"fmt": "xml"},
            {"tolerance": 0},
            {"r2_mode": "0.3"},
            {"r2_mode": "grid"},
        ],
    )
    def test_rejects(self, kwargs):
        with pytest.raises(ValueError):
            SweepConfig("W_C", **kwargs)


class TestSweep:
    def test_rows(self):
        res = run_sweep(SweepConfig("W_C", steps=4, compare_analytic=True))
        assert len(res.rows) == 5
        assert res.status == "match"
        assert res.max_abs_diff < 1e-10
        for row in res.rows:
            assert row.qcmi == pytest.approx(row.s_ac + row.s_bc - row.s_abc - row.s_c, abs=1e-12)

    def test_csv_layout(self):
        text = render_sweep(run_sweep(SweepConfig("W_B", steps=2)))
        lines = text.split("\n")
        assert lines[0] == ",".join(SWEEP_COLUMNS)
        fields = lines[1].split(",")
        assert fields[:2] == ["0", ""] and fields[-2:] == ["", ""]
        # pure state: S_ABC is zero up to eigensolver round-off
        assert abs(float(fields[2])) < 1e-14
        assert fields[3:7] == ["0.918295834054"] * 4
        assert text.endswith("\n") and "\r" not in text
        assert len(lines) == 5

    def test_plotdata_loads(self, tmp_path):
        res = run_sweep(SweepConfig("W_AB", steps=8, fmt="plotdata", compare_analytic=True))
        path = tmp_path / "w_ab.dat"
        path.write_text(render_sweep(res))
        data = np.loadtxt(path)
        assert data.shape == (9, len(SWEEP_COLUMNS))
        assert path.read_text().startswith("# ")
        assert np.allclose(data[:, 6], data[:, 7], atol=1e-9)

    def test_plotdata_nan_for_missing(self):
        text = render_sweep(run_sweep(SweepConfig("W_C", steps=1, fmt="plotdata")))
        assert text.split("\n")[1].split()[1] == "nan"

    def test_json_structure(self):
        res = run_sweep(SweepConfig("W_BC", steps=2, fmt="json", compare_analytic=True))
        doc = json.loads(render_sweep(res))
        assert set(doc) == {"config", "rows", "summary"}
        assert set(doc["summary"]) == {"max_abs_diff", "status"}
        assert doc["summary"]["status"] == "match"
        assert list(doc["rows"][0]) == list(SWEEP_COLUMNS)
        assert doc["config"]["scenario"] == "W_BC"

    def test_json_without_comparison(self):
        doc = json.loads(render_sweep(run_sweep(SweepConfig("W_C", steps=1, fmt="json"))))
        assert doc["rows"][0]["QCMI_analytic"] is None
        assert doc["summary"] == {"max_abs_diff": None, "status": "not-compared"}


class TestCompare:
    def test_report(self):
        res = run_compare(["W_C", "BISEP1_C"], steps=8)
        assert res.eigen_ok
        by_form = {s.form: s for s in res.summaries()}
        assert by_form["W_C"].stable_divergence
        assert not by_form["BISEP1_C"].stable_divergence
        assert by_form["BISEP1_C"].match == 7

    def test_fixed_r2_uses_general_forms(self):
        res = run_compare(["W_AB"], steps=4, r2_value=0.3)
        assert {row.form for row in res.rows} == {"W_AB_general"}
        assert all(row.r2 == 0.3 for row in res.rows)

    def test_json(self):
        doc = json.loads(render_compare(run_compare(["W_B"], steps=4), "json"))
        assert doc["summary"]["status"] == "match"
        assert doc["summary"]["forms"]["W_B"]["points"] == 3
        assert all("abs_diff_printed" in row for row in doc["rows"])

    def test_needs_interior(self):
        with pytest.raises(ValueError):
            run_compare(["W_C"], steps=1)


class TestProperties:
    def test_passes(self):
        rep = run_properties(seed=7, count=20)
        assert rep.ok and rep.passed == 20
        assert rep.max_trace_defect < 1e-12
        assert rep.text().endswith("status pass\n")

    def test_deterministic(self):
        assert run_properties(3, 10).text() == run_properties(3, 10).text()

    def test_count(self):
        with pytest.raises(ValueError):
            run_properties(0, 0)


def run_cli(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCli:
    def test_sweep_stdout(self, capsys):
        code, out, _ = run_cli(["sweep", "--scenario", "w_c", "--steps", "4"], capsys)
        assert code == 0
        assert out.splitlines()[0].startswith("r,r2,S_ABC")
        assert len(out.splitlines()) == 6

    def test_sweep_compare(self, capsys):
        code, _, err = run_cli(["sweep", "--scenario", "W_AB", "--steps", "4", "--compare-analytic"], capsys)
        assert code == 0 and "match" in err

    def test_sweep_to_file(self, tmp_path, capsys):
        out = tmp_path / "s.json"
        code, stdout, _ = run_cli(["sweep", "--scenario", "W_B", "--format", "json", "--out", str(out)], capsys)
        assert code == 0 and stdout == ""
        assert len(json.loads(out.read_text())["rows"]) == 65

    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["sweep"],
            ["sweep", "--scenario", "W_XY"],
            ["sweep", "--scenario", "W_C", "--steps", "0"],
            ["sweep", "--scenario", "W_C", "--r-max", "2"],
            ["sweep", "--scenario", "W_C", "--r2", "0.3"],
            ["sweep", "--scenario", "W_C", "--format", "xml"],
            ["properties", "--count", "0"],
            ["properties", "--seed", "-1"],
            ["compare", "--steps", "1"],
            ["compare", "--scenario", "W_C", "--r2", "0.3"],
        ],
    )
    def test_usage_errors(self, argv, capsys):
        code, _, err = run_cli(argv, capsys)
        assert code == 1
        assert err

    def test_io_error(self, tmp_path, capsys):
        code, _, err = run_cli(
            ["sweep", "--scenario", "W_C", "--steps", "1", "--out", str(tmp_path / "missing" / "x.csv")], capsys
        )
        assert code == 1 and "I/O" in err

    def test_comparison_failure(self, capsys):
        # W_BC rows carry ~1e-16 round-off between the two routes; a zero-ish
        # tolerance below that must flag a mismatch somewhere on the grid
        code, _, err = run_cli(
            ["sweep", "--scenario", "W_BC", "--compare-analytic", "--tolerance", "1e-300"], capsys
        )
        assert code == 2 and "mismatch" in err

    def test_invariant_violation(self, monkeypatch, capsys):
        def broken(*args, **kwargs):
            raise InvariantViolation("forced")

        monkeypatch.setattr(cli, "run_sweep", broken)
        code, _, err = run_cli(["sweep", "--scenario", "W_C"], capsys)
        assert code == 3 and "forced" in err

    def test_properties(self, capsys):
        code, out, _ = run_cli(["properties", "--seed", "1", "--count", "5"], capsys)
        assert code == 0 and "passed 5/5" in out

    def test_compare(self, capsys):
        code, out, err = run_cli(["compare", "--scenario", "W_B", "--steps", "4"], capsys)
        assert code == 0
        assert out.startswith("scenario,form,r")
        assert "stable divergence" in err

    def test_module_entry(self):
        import subprocess
        import sys

        proc = subprocess.run(
            [sys.executable, "-m", "qcmi_accel", "sweep", "--scenario", "W_C", "--steps", "1"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.count("\n") == 3

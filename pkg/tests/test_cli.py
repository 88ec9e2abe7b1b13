import json

import pytest
from click.testing import CliRunner

from tripodkin.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


class TestIkCommand:
    def test_pure_heave(self, runner):
        result = runner.invoke(main, ["ik", "60", "0", "0"])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["l1"] == pytest.approx(60.0, abs=1e-9)
        assert data["gamma_deg"] == 0.0

    def test_geometry_flag(self, runner):
        result = runner.invoke(main, ["ik", "20", "0", "0", "--geometry", "800,400,300"])
        assert result.exit_code == 0

    def test_bad_geometry_flag_is_usage_error(self, runner):
        result = runner.invoke(main, ["ik", "20", "0", "0", "--geometry", "800,400"])
        assert result.exit_code == 2

    def test_writes_out_file(self, runner, tmp_path):
        out = tmp_path / "ik.json"
        result = runner.invoke(main, ["ik", "60", "0", "0", "--out", str(out)])
        assert result.exit_code == 0
        assert json.loads(out.read_text())["l1"] == pytest.approx(60.0, abs=1e-9)


class TestFkCommand:
    def test_round_trip_through_cli(self, runner):
        ik = json.loads(runner.invoke(main, ["ik", "60", "0", "0"]).output)
        result = runner.invoke(
            main, ["fk", str(ik["l1"]), str(ik["l2"]), str(ik["l3"])]
        )
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["z_hat"] == pytest.approx(60.0, abs=1e-6)
        assert data["alpha_hat_deg"] == pytest.approx(0.0, abs=1e-9)

    def test_trace_flag(self, runner):
        result = runner.invoke(main, ["fk", "60", "60", "60", "--trace", "--iters", "3"])
        data = json.loads(result.output)
        assert len(data["trace"]) == 3

    def test_solver_failure_exits_one(self, runner):
        result = runner.invoke(
            main, ["fk", "0.001", "60", "60", "--z-init", "60"]
        )
        assert result.exit_code == 1


class TestTrajectoryCommand:
    def test_writes_csv_and_prints_summary(self, runner, tmp_path):
        out = tmp_path / "traj.csv"
        result = runner.invoke(
            main,
            ["trajectory", "--duration", "0.5", "--rate", "10", "--out", str(out)],
        )
        assert result.exit_code == 0
        summary = json.loads(result.output)
        assert summary["samples"] == 6
        lines = out.read_text().splitlines()
        assert lines[0].startswith("t,Z_true,")
        assert len(lines) == 13

    def test_byte_identical_reruns(self, runner, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["trajectory", "--duration", "0.5", "--rate", "10"]
        out_a = runner.invoke(main, args + ["--out", str(a)])
        out_b = runner.invoke(main, args + ["--out", str(b)])
        assert out_a.exit_code == 0 and out_b.exit_code == 0
        assert a.read_bytes() == b.read_bytes()
        assert out_a.output == out_b.output

    def test_config_file_with_flag_override(self, runner, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "geometry": {"d1": 1150.0, "d2": 500.0, "d3": 390.0},
            "solver": {"eta": 0.08, "iters": 4},
            "trajectory": {"duration": 1.0, "rate": 10.0, "f_pitch": 0.2},
        }))
        out = tmp_path / "traj.csv"
        result = runner.invoke(
            main,
            ["trajectory", "--config", str(cfg), "--duration", "0.5", "--out", str(out)],
        )
        assert result.exit_code == 0
        summary = json.loads(result.output)
        assert summary["duration"] == 0.5  # flag wins over config
        first_grad = out.read_text().splitlines()[1]
        assert first_grad.split(",")[11] == "4"  # iters from config


class TestParasiticMapCommand:
    def test_writes_histogram(self, runner, tmp_path):
        out = tmp_path / "map.csv"
        result = runner.invoke(
            main, ["parasitic-map", "--grid", "6", "--bins", "8", "--out", str(out)]
        )
        assert result.exit_code == 0
        summary = json.loads(result.output)
        assert summary["points"] == 5 * 6 * 6
        assert out.read_text().splitlines()[0] == "ratio,bin_lo,bin_hi,count"


class TestVerifyBoundsCommand:
    def test_zero_samples_exits_zero(self, runner):
        result = runner.invoke(main, ["verify-bounds", "--samples", "0"])
        assert result.exit_code == 0
        assert json.loads(result.output)["checks"] == []

    def test_small_run_passes(self, runner, tmp_path):
        out = tmp_path / "report.json"
        result = runner.invoke(
            main, ["verify-bounds", "--samples", "20", "--seed", "4", "--out", str(out)]
        )
        assert result.exit_code == 0
        report = json.loads(out.read_text())
        assert report["passed"] is True

    def test_byte_identical_reports(self, runner):
        args = ["verify-bounds", "--samples", "15", "--seed", "7"]
        a = runner.invoke(main, args)
        b = runner.invoke(main, args)
        assert a.output == b.output

    def test_invalid_geometry_reported(self, runner):
        result = runner.invoke(
            main, ["verify-bounds", "--samples", "5", "--geometry", "1150,500,-390"]
        )
        assert result.exit_code == 2


class TestOpcountCommand:
    def test_prints_table_with_references(self, runner, tmp_path):
        out = tmp_path / "ops.json"
        result = runner.invoke(main, ["opcount", "--out", str(out)])
        assert result.exit_code == 0
        assert "13040" in result.output and "404" in result.output
        report = json.loads(out.read_text())
        assert report["jb_over_gradient_ratio"] >= 10.0

"""Tests for the command-line interface: formats, exit codes, files."""

import json
import subprocess
import sys

import pytest

from ksetcov import model
from ksetcov.cli import SWEEP_COLUMNS, dumps_json, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_plain(out):
    """Plain format is aligned `key = value` lines; return them as a dict."""
    pairs = {}
    for line in out.splitlines():
        key, sep, value = line.partition(" = ")
        if sep:
            pairs[key.rstrip()] = value
    return pairs


class TestPointCoverage:
    def test_plain(self, capsys):
        code, out, _ = run_cli(capsys, "point-coverage", "--c", "3", "--k", "2")
        assert code == 0
        assert parse_plain(out)["coverage"] == "0.875"

    def test_zero_sensors(self, capsys):
        code, out, _ = run_cli(capsys, "point-coverage", "--c", "0", "--k", "7")
        assert code == 0
        assert parse_plain(out)["coverage"] == "0"

    def test_exact_flag_shows_enumeration(self, capsys):
        code, out, _ = run_cli(capsys, "point-coverage", "--c", "3", "--k", "2", "--exact")
        assert code == 0
        assert "7/8" in out
        assert parse_plain(out)["abs difference"] == "0"

    def test_invalid_k_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "point-coverage", "--c", "3", "--k", "0")
        assert code == 2
        assert "k must be >= 1" in err

    def test_json_round_trips(self, capsys):
        code, out, _ = run_cli(capsys, "point-coverage", "--c", "5", "--k", "3",
                               "--exact", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["schema_version"] == 1
        assert dumps_json(payload) == out  # re-rendering yields identical bytes

    def test_csv(self, capsys):
        code, out, _ = run_cli(capsys, "point-coverage", "--c", "3", "--k", "2",
                               "--format", "csv")
        assert code == 0
        header, row = out.strip().splitlines()
        assert header == "c,k,coverage"
        assert row == "3,2,0.875"


class TestNetworkCoverage:
    def test_forest_profile(self, capsys):
        code, out, _ = run_cli(capsys, "network-coverage", "--profile", "forest",
                               "--n", "1606", "--k", "4")
        assert code == 0
        assert parse_plain(out)["coverage"] == "0.700294"

    def test_zero_q(self, capsys):
        code, out, _ = run_cli(capsys, "network-coverage", "--q", "0", "--n", "10", "--k", "2")
        assert code == 0
        assert parse_plain(out)["coverage"] == "0"

    def test_certain_coverage(self, capsys):
        code, out, _ = run_cli(capsys, "network-coverage", "--q", "1", "--n", "1", "--k", "1")
        assert code == 0
        assert parse_plain(out)["coverage"] == "1"

    def test_oracle_cross_check(self, capsys):
        code, out, _ = run_cli(capsys, "network-coverage", "--profile", "forest",
                               "--n", "1606", "--k", "4", "--oracle")
        assert code == 0
        assert "oracle (summation)" in out

    def test_missing_q_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "network-coverage", "--n", "10", "--k", "2")
        assert code == 2
        assert "q must be provided" in err


class TestPlan:
    def test_nodes_forest_notes_both_figures(self, capsys):
        code, out, _ = run_cli(capsys, "plan", "nodes", "--profile", "forest",
                               "--k", "4", "--t", "0.7")
        assert code == 0
        assert "minimum nodes" in out and "1605" in out
        assert "1606" in out  # the note cites the alternative design figure
        assert "coverage at adjacent value 1604" in out

    def test_subsets_forest(self, capsys):
        code, out, _ = run_cli(capsys, "plan", "subsets", "--profile", "forest",
                               "--n", "1606", "--t", "0.9")
        assert code == 0
        assert parse_plain(out)["maximum sub-networks"] == "2"

    def test_infeasible_target_exits_3(self, capsys):
        code, _, err = run_cli(capsys, "plan", "nodes", "--q", "0.5", "--k", "1",
                               "--t", "1.0")
        assert code == 3
        assert "infeasible" in err

    def test_infeasible_subsets_reports_best(self, capsys):
        code, _, err = run_cli(capsys, "plan", "subsets", "--q", "0.001", "--n", "10",
                               "--t", "0.99")
        assert code == 3
        assert "best achievable coverage = 0.00995512" in err

    def test_json_carries_binding_check(self, capsys):
        code, out, _ = run_cli(capsys, "plan", "nodes", "--profile", "forest",
                               "--k", "4", "--t", "0.7", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["bound_value"] == 1605
        assert payload["binding_check"]["adjacent_value"] == 1604
        assert payload["binding_check"]["coverage_at_adjacent"] < 0.7
        assert dumps_json(payload) == out

    def test_csv_flattens_binding_check(self, capsys):
        code, out, _ = run_cli(capsys, "plan", "subsets", "--profile", "forest",
                               "--n", "1606", "--t", "0.9", "--format", "csv")
        assert code == 0
        header, row = out.strip().splitlines()
        cols = dict(zip(header.split(","), row.split(",")))
        assert cols["bound_value"] == "2"
        assert cols["binding_check.adjacent_value"] == "3"


class TestSimulate:
    def test_trivial_full_coverage(self, capsys):
        code, out, _ = run_cli(capsys, "simulate", "--width", "100", "--height", "100",
                               "--radius", "10000", "--n", "5", "--k", "1",
                               "--trials", "4", "--grid", "10")
        assert code == 0
        assert parse_plain(out)["empirical mean"] == "1"
        assert parse_plain(out)["agreement (3-sigma)"] == "PASS"

    def test_zero_trials_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "simulate", "--profile", "forest",
                               "--n", "5", "--k", "1", "--trials", "0")
        assert code == 2
        assert "trials must be >= 1" in err

    def test_forest_agreement_passes(self, capsys):
        code, out, _ = run_cli(capsys, "simulate", "--profile", "forest",
                               "--n", "200", "--k", "4", "--trials", "200", "--seed", "9")
        assert code == 0
        assert parse_plain(out)["agreement (3-sigma)"] == "PASS"

    def test_radius_from_q_reconciles_conventions(self, capsys):
        code, out, _ = run_cli(capsys, "simulate", "--width", "100", "--height", "100",
                               "--radius-from-q", "0.003", "--n", "1606", "--k", "4",
                               "--trials", "40", "--grid", "40", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["radius"] == pytest.approx(3.0901936161855166, rel=1e-12)
        assert abs(payload["empirical_mean"] - 0.70) < 0.02
        assert payload["agreement_3sigma"] == "PASS"

    def test_out_file_matches_stdout(self, capsys, tmp_path):
        out_path = tmp_path / "sim.txt"
        code, out, _ = run_cli(capsys, "simulate", "--profile", "forest",
                               "--n", "20", "--k", "2", "--trials", "4",
                               "--grid", "10", "--out", str(out_path))
        assert code == 0
        assert out_path.read_text() == out


class TestVerify:
    def test_passes_with_exit_0(self, capsys):
        code, out, _ = run_cli(capsys, "verify")
        assert code == 0
        assert "all checks passed" in out

    def test_json_format(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["schema_version"] == 1
        assert payload["passed"] is True
        assert {c["name"] for c in payload["checks"]} == {
            "point-coverage-enumeration",
            "network-coverage-summation",
            "planner-binding",
        }

    def test_perturbed_model_exits_1(self, capsys, monkeypatch):
        original = model.network_coverage_intensity
        monkeypatch.setattr(model, "network_coverage_intensity",
                            lambda q, n, k: min(1.0, original(q, n, k) + 1e-6))
        code, out, _ = run_cli(capsys, "verify")
        assert code == 1
        assert "network-coverage-summation" in out
        assert "FAIL" in out


class TestSweep:
    def test_csv_columns_and_crossing(self, capsys, tmp_path):
        out_path = tmp_path / "sweep.csv"
        code, out, _ = run_cli(capsys, "sweep", "--n-range", "1600:1610",
                               "--k-range", "4", "--profile", "forest",
                               "--out", str(out_path))
        assert code == 0
        assert "wrote 11 rows" in out
        lines = out_path.read_text().splitlines()
        assert lines[0] == ",".join(SWEEP_COLUMNS)
        coverages = [float(line.split(",")[3]) for line in lines[1:]]
        ns = [int(line.split(",")[0]) for line in lines[1:]]
        crossed = [n for n, cov in zip(ns, coverages) if cov >= 0.7]
        assert crossed[0] == 1605  # the 70% crossing is visible in the table

    def test_single_cell(self, capsys, tmp_path):
        out_path = tmp_path / "one.csv"
        code, _, _ = run_cli(capsys, "sweep", "--n-range", "100", "--k-range", "2",
                             "--q", "0.01", "--out", str(out_path))
        assert code == 0
        assert len(out_path.read_text().splitlines()) == 2  # header + 1 row

    def test_empty_range_exits_2(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "sweep", "--n-range", "5:4", "--k-range", "2",
                               "--q", "0.01", "--out", str(tmp_path / "x.csv"))
        assert code == 2
        assert "no values" in err

    def test_unwritable_path_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "sweep", "--n-range", "10", "--k-range", "2",
                               "--q", "0.01", "--out", "/nonexistent-dir/x.csv")
        assert code == 2
        assert "error:" in err

    def test_simulated_sweep_deterministic(self, capsys, tmp_path):
        args = ["sweep", "--n-range", "20,40", "--k-range", "2", "--profile", "forest",
                "--simulate", "--trials", "4", "--grid", "10", "--seed", "5"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run_cli(capsys, *args, "--out", str(a))[0] == 0
        assert run_cli(capsys, *args, "--out", str(b))[0] == 0
        assert a.read_bytes() == b.read_bytes()

    def test_json_output_round_trips(self, capsys, tmp_path):
        out_path = tmp_path / "sweep.json"
        code, _, _ = run_cli(capsys, "sweep", "--n-range", "10:12", "--k-range", "1,2",
                             "--q", "0.1", "--format", "json", "--out", str(out_path))
        assert code == 0
        text = out_path.read_text()
        payload = json.loads(text)
        assert payload["schema_version"] == 1
        assert len(payload["rows"]) == 6
        assert dumps_json(payload) == text

    def test_plot_writes_png(self, capsys, tmp_path):
        out_path = tmp_path / "curves.csv"
        code, out, _ = run_cli(capsys, "sweep", "--n-range", "100:300:100",
                               "--k-range", "2,4", "--q", "0.01",
                               "--out", str(out_path), "--plot")
        assert code == 0
        png = tmp_path / "curves.png"
        assert png.exists()
        assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
        assert "wrote figure" in out


class TestConfigFile:
    def test_config_supplies_values(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# forest-ish run\nq = 0.003\nn = 1606\nk = 4\n")
        code, out, _ = run_cli(capsys, "network-coverage", "--config", str(cfg))
        assert code == 0
        assert "coverage = 0.700294" in out

    def test_flags_override_config(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("q=0.003\nn=1606\nk=4\n")
        code, out, _ = run_cli(capsys, "network-coverage", "--config", str(cfg),
                               "--k", "2")
        assert code == 0
        assert parse_plain(out)["coverage"] == "0.910257"

    def test_config_overrides_profile(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("profile=forest\nq=0.5\n")
        code, out, _ = run_cli(capsys, "network-coverage", "--config", str(cfg),
                               "--n", "1", "--k", "1")
        assert code == 0
        assert parse_plain(out)["coverage"] == "0.5"

    def test_unknown_key_rejected(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("qq=0.5\n")
        code, _, err = run_cli(capsys, "network-coverage", "--config", str(cfg),
                               "--n", "1", "--k", "1")
        assert code == 2
        assert "unknown config keys" in err


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "ksetcov", "point-coverage", "--c", "3", "--k", "2"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert "0.875" in proc.stdout

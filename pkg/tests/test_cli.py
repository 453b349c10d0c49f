import json

import pytest
import yaml

from qreuse.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestOracleCommand:
    def test_prints_both_optima(self, capsys):
        code, out, err = run_cli(capsys, "oracle", "default")
        assert code == 0
        assert "max aggregate" in out
        assert "max prop. fairness" in out
        assert "755.702 Mbps" in out
        assert "{1,5}" in out and "{2,20}" in out

    def test_json_output(self, capsys, tmp_path):
        dest = tmp_path / "oracle.json"
        code, out, _ = run_cli(capsys, "oracle", "default", "--json", str(dest))
        assert code == 0
        payload = json.loads(dest.read_text())
        assert payload["aggregate"]["value_bps"] == pytest.approx(
            755702216.904, rel=1e-9)
        assert sorted(payload["proportional_fairness"]["maximizers"]) == [
            [7, 8, 8, 7], [8, 7, 7, 8]]

    def test_sampled_mode_uses_seeded_realization(self, capsys):
        code, out, _ = run_cli(capsys, "oracle", "default", "--sampled", "--seed", "3")
        assert code == 0
        assert "sampled-per-link" in out
        code2, out2, _ = run_cli(capsys, "oracle", "default", "--sampled", "--seed", "3")
        assert out2 == out

    def test_unknown_scenario_fails_cleanly(self, capsys):
        code, _, err = run_cli(capsys, "oracle", "missing-scenario")
        assert code != 0
        assert "error:" in err


class TestRunCommand:
    def test_same_seed_byte_identical_files(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for dest in (a, b):
            code, _, _ = run_cli(capsys, "run", "default", "--alpha", "1.0",
                                 "--gamma", "0.95", "--eps0", "1.0",
                                 "--iterations", "300", "--seed", "42",
                                 "--out", str(dest))
            assert code == 0
        assert a.read_bytes() == b.read_bytes()
        meta_a = a.with_suffix(".csv.meta.json").read_bytes()
        meta_b = b.with_suffix(".csv.meta.json").read_bytes()
        assert meta_a == meta_b

    def test_different_seed_differs(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for dest, seed in ((a, "1"), (b, "2")):
            run_cli(capsys, "run", "default", "--alpha", "1.0", "--gamma", "0.95",
                    "--eps0", "1.0", "--iterations", "300", "--seed", seed,
                    "--out", str(dest))
        assert a.read_bytes() != b.read_bytes()

    def test_invalid_hyperparameter_rejected(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "run", "default", "--alpha", "2.0",
                               "--gamma", "0.95", "--eps0", "1.0",
                               "--out", str(tmp_path / "x.csv"))
        assert code != 0
        assert "alpha" in err


@pytest.fixture(scope="module")
def sweep_dir(tmp_path_factory):
    spec = {
        "scenario": "default",
        "cells": [{"alpha": 1.0, "gamma": 0.95, "eps0": 1.0},
                  {"alpha": 0.1, "gamma": 0.05, "eps0": 0.1}],
        "iterations": 200, "window": 100, "repetitions": 2, "master_seed": 4,
    }
    root = tmp_path_factory.mktemp("sweep")
    spec_path = root / "spec.yaml"
    spec_path.write_text(yaml.safe_dump(spec))
    out = root / "out"
    code = main(["sweep", str(spec_path), "--out", str(out), "--workers", "1"])
    assert code == 0
    return out


class TestSweepCommand:
    def test_emits_all_datasets(self, sweep_dir):
        names = {p.name for p in sweep_dir.iterdir()}
        assert {"episodes.csv", "cells.csv", "per_network_means.csv",
                "action_frequencies.csv", "manifest.json",
                "timeseries_cell0.csv", "timeseries_cell1.csv"} <= names
        assert any(n.startswith("grid_mean_eps") for n in names)
        assert any(n.startswith("grid_std_eps") for n in names)

    def test_bad_spec_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.yaml"
        bad.write_text("cells: {}\n")
        code, _, err = run_cli(capsys, "sweep", str(bad), "--out", str(tmp_path / "o"))
        assert code != 0
        assert "error:" in err


class TestReportCommand:
    def test_attaches_oracle_fractions(self, capsys, sweep_dir, tmp_path):
        out = tmp_path / "report"
        code, stdout, _ = run_cli(capsys, "report", str(sweep_dir), "--out", str(out))
        assert code == 0
        assert "fraction of aggregate optimum" in stdout
        cells = (out / "cells.csv").read_text().splitlines()
        assert cells[1].endswith("fraction_of_optimum")
        manifest = json.loads((out / "manifest.json").read_text())
        assert "oracle" in manifest
        assert (out / "timeseries_cell0.csv").exists()

    def test_rejects_non_sweep_directory(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "report", str(tmp_path), "--out",
                               str(tmp_path / "r"))
        assert code != 0


class TestArgumentErrors:
    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code != 0

    def test_unknown_flag(self):
        with pytest.raises(SystemExit) as exc:
            main(["oracle", "default", "--frobnicate"])
        assert exc.value.code != 0

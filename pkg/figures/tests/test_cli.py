import shutil
from pathlib import Path

import pytest

from qreuse_figures.cli import main

DATA = Path(__file__).parent / "data"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestKindCommands:
    @pytest.mark.parametrize("kind,dataset", [
        ("param-bars", "cells.csv"),
        ("alpha-gamma-grid", "grid_mean_eps1.csv"),
        ("per-wn-timeseries", "timeseries_cell0.csv"),
        ("per-wn-means", "per_network_means.csv"),
        ("action-probabilities", "action_frequencies.csv"),
    ])
    def test_each_kind_renders(self, capsys, tmp_path, kind, dataset):
        out = tmp_path / f"{kind}.png"
        code, stdout, _ = run_cli(capsys, kind, str(DATA / dataset), "-o", str(out))
        assert code == 0
        assert str(out) in stdout
        assert out.is_file()

    def test_schema_mismatch_fails_cleanly(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "param-bars",
                               str(DATA / "timeseries_cell0.csv"),
                               "-o", str(tmp_path / "x.png"))
        assert code == 2
        assert "expected schema" in err

    def test_title_and_cell_options(self, capsys, tmp_path):
        out = tmp_path / "probs.png"
        code, _, _ = run_cli(capsys, "action-probabilities",
                             str(DATA / "action_frequencies.csv"),
                             "-o", str(out), "--cell", "0", "--title", "probs")
        assert code == 0 and out.is_file()


class TestAllCommand:
    def test_renders_everything_in_a_sweep_directory(self, capsys, tmp_path):
        sweep = tmp_path / "sweep"
        sweep.mkdir()
        for name in ("cells.csv", "grid_mean_eps1.csv", "grid_std_eps1.csv",
                     "timeseries_cell0.csv", "per_network_means.csv",
                     "action_frequencies.csv"):
            shutil.copy(DATA / name, sweep / name)
        out = tmp_path / "figs"
        code, stdout, _ = run_cli(capsys, "all", str(sweep), "-o", str(out))
        assert code == 0
        rendered = {p.name for p in out.iterdir()}
        assert rendered == {
            "param-bars-cells.png",
            "alpha-gamma-grid-grid_mean_eps1.png",
            "per-wn-timeseries-timeseries_cell0.png",
            "per-wn-means-per_network_means.png",
            "action-probabilities-action_frequencies.png",
        }

    def test_empty_directory_fails(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "all", str(tmp_path), "-o",
                               str(tmp_path / "figs"))
        assert code == 1
        assert "no renderable datasets" in err

import json
from pathlib import Path

import pytest

from qreuse_figures import (
    FigureSpec,
    SchemaError,
    build_figure,
    drawing_summary,
    load_dataset,
    render,
)

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

SPECS = {
    "param-bars": DATA / "cells.csv",
    "alpha-gamma-grid": DATA / "grid_mean_eps1.csv",
    "per-wn-timeseries": DATA / "timeseries_cell0.csv",
    "per-wn-means": DATA / "per_network_means.csv",
    "action-probabilities": DATA / "action_frequencies.csv",
}


class TestDatasets:
    def test_load_valid(self):
        ds = load_dataset(DATA / "cells.csv", "qreuse/cells v1", ("cell", "alpha"))
        assert ds.floats("mean_aggregate_bps") == [640e6, 480e6]

    def test_wrong_schema_names_both(self):
        with pytest.raises(SchemaError) as exc:
            load_dataset(DATA / "cells.csv", "qreuse/timeseries v1")
        assert "qreuse/timeseries v1" in str(exc.value)
        assert "qreuse/cells v1" in str(exc.value)

    def test_missing_columns_reported(self):
        with pytest.raises(SchemaError) as exc:
            load_dataset(DATA / "cells.csv", "qreuse/cells v1", ("no_such_column",))
        assert "no_such_column" in str(exc.value)
        assert "cell" in str(exc.value)  # found columns listed too

    def test_empty_dataset_rejected(self):
        with pytest.raises(SchemaError, match="no rows"):
            load_dataset(DATA / "empty_timeseries.csv", "qreuse/timeseries v1")

    def test_missing_file(self):
        with pytest.raises(SchemaError, match="not found"):
            load_dataset(DATA / "nope.csv", "qreuse/cells v1")


class TestGoldenDrawings:
    @pytest.mark.parametrize("kind", sorted(SPECS))
    def test_matches_golden_summary(self, kind):
        fig = build_figure(FigureSpec(kind, SPECS[kind], "/tmp/unused.png"))
        got = drawing_summary(fig)
        expected = json.loads((GOLDEN / f"{kind}.json").read_text())
        assert got == expected

    def test_param_bars_heights_and_fractions(self):
        fig = build_figure(FigureSpec("param-bars", SPECS["param-bars"], "x.png"))
        s = drawing_summary(fig)
        assert s["axes"][0]["bars"] == [640.0, 480.0]
        assert s["axes"][0]["texts"] == ["80%", "60%"]

    def test_grid_panels_hold_both_matrices(self):
        fig = build_figure(FigureSpec(
            "alpha-gamma-grid", SPECS["alpha-gamma-grid"], "x.png"))
        s = drawing_summary(fig)
        images = [img for ax in s["axes"] for img in ax["images"]]
        assert [[500.0, 420.0], [700.0, 650.0]] in images
        assert [[50.0, 80.0], [10.0, 30.0]] in images

    def test_one_hot_frequencies_single_full_bar(self):
        fig = build_figure(FigureSpec(
            "action-probabilities", DATA / "action_frequencies_onehot.csv", "x.png"))
        s = drawing_summary(fig)
        bars = s["axes"][0]["bars"]
        assert sorted(bars) == [0.0, 0.0, 0.0, 1.0]
        assert s["axes"][0]["texts"] == ["sum = 1.000"]


class TestRenderOutputs:
    @pytest.mark.parametrize("kind", sorted(SPECS))
    def test_writes_image(self, kind, tmp_path):
        out = render(FigureSpec(kind, SPECS[kind], tmp_path / f"{kind}.png"))
        assert out.is_file()
        assert out.stat().st_size > 1000
        assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_rendering_is_deterministic(self, tmp_path):
        a = render(FigureSpec("param-bars", SPECS["param-bars"], tmp_path / "a.png"))
        b = render(FigureSpec("param-bars", SPECS["param-bars"], tmp_path / "b.png"))
        assert a.read_bytes() == b.read_bytes()

    def test_input_never_modified(self, tmp_path):
        before = SPECS["param-bars"].read_bytes()
        render(FigureSpec("param-bars", SPECS["param-bars"], tmp_path / "x.png"))
        assert SPECS["param-bars"].read_bytes() == before

    def test_svg_output_supported(self, tmp_path):
        out = render(FigureSpec("per-wn-timeseries", SPECS["per-wn-timeseries"],
                                tmp_path / "ts.svg"))
        assert out.read_text().lstrip().startswith("<?xml")

    def test_empty_dataset_produces_no_image(self, tmp_path):
        dest = tmp_path / "never.png"
        with pytest.raises(SchemaError):
            render(FigureSpec("per-wn-timeseries", DATA / "empty_timeseries.csv",
                              dest))
        assert not dest.exists()

    def test_schema_mismatch_produces_no_image(self, tmp_path):
        dest = tmp_path / "never.png"
        with pytest.raises(SchemaError):
            render(FigureSpec("param-bars", SPECS["per-wn-timeseries"], dest))
        assert not dest.exists()

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError, match="unknown figure kind"):
            FigureSpec("pie-chart", SPECS["param-bars"], "x.png")

    def test_missing_cell_rejected(self):
        with pytest.raises(SchemaError, match="cell 7"):
            build_figure(FigureSpec(
                "action-probabilities", SPECS["action-probabilities"], "x.png",
                options={"cell": 7}))

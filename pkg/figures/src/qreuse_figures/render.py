"""The five figure kinds rendered from simulator datasets.

Inputs are never modified; rendering is a pure function of (dataset,
spec), so regenerating a figure from the same files yields the same
image.  Each renderer consumes one documented dataset schema and rejects
anything else up front.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .datasets import SCHEMAS, SchemaError, load_dataset

KINDS = ("param-bars", "alpha-gamma-grid", "per-wn-timeseries",
         "per-wn-means", "action-probabilities")


@dataclass
class FigureSpec:
    kind: str
    input: str | Path
    output: str | Path
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}, "
                             f"expected one of {KINDS}")


def _cell_label(alpha: str, gamma: str, eps0: str) -> str:
    return f"a={float(alpha):g}\ng={float(gamma):g}\ne0={float(eps0):g}"


def _fig(spec: FigureSpec, default_size):
    figsize = spec.options.get("figsize", default_size)
    return plt.figure(figsize=figsize)


def build_param_bars(spec: FigureSpec):
    ds = load_dataset(spec.input, SCHEMAS["cells"],
                      ("cell", "alpha", "gamma", "eps0",
                       "mean_aggregate_bps", "std_aggregate_bps"))
    labels = [_cell_label(a, g, e) for a, g, e in
              zip(ds.column("alpha"), ds.column("gamma"), ds.column("eps0"))]
    mean = np.array(ds.floats("mean_aggregate_bps")) / 1e6
    std = np.array(ds.floats("std_aggregate_bps")) / 1e6
    fig = _fig(spec, (1.2 + 0.9 * len(labels), 4.0))
    ax = fig.add_subplot(111)
    x = np.arange(len(labels))
    ax.bar(x, mean, yerr=std, capsize=3, color="tab:blue")
    if "fraction_of_optimum" in ds.columns:
        for xi, m, frac in zip(x, mean, ds.floats("fraction_of_optimum")):
            ax.annotate(f"{frac:.0%}", (xi, m), ha="center",
                        xytext=(0, 4), textcoords="offset points", fontsize=8)
    ax.set_xticks(x)
    ax.set_xticklabels(labels, fontsize=8)
    ax.set_ylabel("mean aggregate throughput (Mbps)")
    ax.set_title(spec.options.get("title", "Aggregate throughput per parameter cell"))
    return fig


def _grid_panel(ax, ds, title):
    gamma_cols = [c for c in ds.columns if c.startswith("gamma_")]
    if not gamma_cols:
        raise SchemaError(f"{ds.schema}: no gamma_* columns in {ds.columns}")
    alphas = ds.floats("alpha")
    gammas = [float(c.split("_", 1)[1]) for c in gamma_cols]
    grid = np.array([[float(row[ds.columns.index(c)]) if row[ds.columns.index(c)]
                      else np.nan for c in gamma_cols] for row in ds.rows]) / 1e6
    im = ax.imshow(grid, origin="lower", aspect="auto", cmap="viridis")
    ax.set_xticks(range(len(gammas)), [f"{g:g}" for g in gammas])
    ax.set_yticks(range(len(alphas)), [f"{a:g}" for a in alphas])
    ax.set_xlabel("gamma")
    ax.set_ylabel("alpha")
    ax.set_title(title)
    for i in range(grid.shape[0]):
        for j in range(grid.shape[1]):
            if np.isfinite(grid[i, j]):
                ax.annotate(f"{grid[i, j]:.0f}", (j, i), ha="center", va="center",
                            color="white", fontsize=8)
    return im


def build_alpha_gamma_grid(spec: FigureSpec):
    mean_path = Path(spec.input)
    std_path = Path(spec.options.get(
        "std_input", str(mean_path).replace("grid_mean", "grid_std")))
    mean_ds = load_dataset(mean_path, SCHEMAS["grid"], ("alpha",))
    fig = _fig(spec, (9.0, 3.6))
    if std_path.is_file() and std_path != mean_path:
        std_ds = load_dataset(std_path, SCHEMAS["grid"], ("alpha",))
        ax1 = fig.add_subplot(121)
        im1 = _grid_panel(ax1, mean_ds, "mean aggregate (Mbps)")
        fig.colorbar(im1, ax=ax1)
        ax2 = fig.add_subplot(122)
        im2 = _grid_panel(ax2, std_ds, "std over runs (Mbps)")
        fig.colorbar(im2, ax=ax2)
    else:
        ax1 = fig.add_subplot(111)
        im1 = _grid_panel(ax1, mean_ds, "mean aggregate (Mbps)")
        fig.colorbar(im1, ax=ax1)
    fig.suptitle(spec.options.get("title", "Learning rate vs discount"))
    return fig


def build_per_wn_timeseries(spec: FigureSpec):
    ds = load_dataset(spec.input, SCHEMAS["timeseries"], ("t",))
    net_cols = [c for c in ds.columns if c.startswith("throughput_bps_net")]
    if not net_cols:
        raise SchemaError(f"no throughput_bps_net* columns in {ds.columns}")
    t = ds.floats("t")
    fig = _fig(spec, (7.0, 3.6))
    ax = fig.add_subplot(111)
    for c in net_cols:
        ax.plot(t, np.array(ds.floats(c)) / 1e6, linewidth=0.8,
                label=f"network {c.rsplit('net', 1)[1]}")
    ax.set_xlabel("iteration")
    ax.set_ylabel("throughput (Mbps)")
    ax.legend(loc="upper right", fontsize=8)
    ax.set_title(spec.options.get("title", "Per-network throughput over one run"))
    return fig


def build_per_wn_means(spec: FigureSpec):
    ds = load_dataset(spec.input, SCHEMAS["per_network_means"],
                      ("cell", "alpha", "gamma", "eps0", "network", "mean_bps"))
    cells = sorted({int(v) for v in ds.column("cell")})
    networks = sorted({int(v) for v in ds.column("network")})
    by_key = {(int(c), int(n)): float(m) / 1e6
              for c, n, m in zip(ds.column("cell"), ds.column("network"),
                                 ds.column("mean_bps"))}
    label_for = {int(c): _cell_label(a, g, e) for c, a, g, e in
                 zip(ds.column("cell"), ds.column("alpha"),
                     ds.column("gamma"), ds.column("eps0"))}
    fig = _fig(spec, (1.6 + 1.1 * len(cells), 3.8))
    ax = fig.add_subplot(111)
    width = 0.8 / len(networks)
    x = np.arange(len(cells))
    for idx, net in enumerate(networks):
        heights = [by_key.get((c, net), np.nan) for c in cells]
        ax.bar(x + (idx - (len(networks) - 1) / 2) * width, heights,
               width=width, label=f"network {net}")
    ax.set_xticks(x)
    ax.set_xticklabels([label_for[c] for c in cells], fontsize=8)
    ax.set_ylabel("mean throughput (Mbps)")
    ax.legend(fontsize=8)
    ax.set_title(spec.options.get("title", "Per-network mean throughput"))
    return fig


def build_action_probabilities(spec: FigureSpec):
    ds = load_dataset(spec.input, SCHEMAS["action_frequencies"],
                      ("cell", "alpha", "gamma", "eps0", "network"))
    action_cols = [c for c in ds.columns if c.startswith("action_")]
    if not action_cols:
        raise SchemaError(f"no action_* columns in {ds.columns}")
    cell = int(spec.options.get("cell", min(int(v) for v in ds.column("cell"))))
    rows = [row for row in ds.rows if int(row[ds.columns.index("cell")]) == cell]
    if not rows:
        raise SchemaError(f"cell {cell} not present in {spec.input}")
    fig = _fig(spec, (2.6 * len(rows), 3.0))
    x = np.arange(1, len(action_cols) + 1)
    for idx, row in enumerate(rows):
        net = row[ds.columns.index("network")]
        probs = np.array([float(row[ds.columns.index(c)]) for c in action_cols])
        ax = fig.add_subplot(1, len(rows), idx + 1)
        ax.bar(x, probs, color="tab:orange")
        ax.set_ylim(0, 1.05)
        ax.set_xticks(x)
        ax.set_xlabel("action")
        ax.set_title(f"network {net}", fontsize=9)
        if idx == 0:
            ax.set_ylabel("probability")
        # the per-network bars are probabilities; surface their sum
        ax.annotate(f"sum = {probs.sum():.3f}", (0.95, 0.92),
                    xycoords="axes fraction", ha="right", fontsize=8)
    fig.suptitle(spec.options.get("title", f"Action probabilities (cell {cell})"))
    return fig


_BUILDERS = {
    "param-bars": build_param_bars,
    "alpha-gamma-grid": build_alpha_gamma_grid,
    "per-wn-timeseries": build_per_wn_timeseries,
    "per-wn-means": build_per_wn_means,
    "action-probabilities": build_action_probabilities,
}


def build_figure(spec: FigureSpec):
    """Build (but do not save) the matplotlib figure for a spec."""
    return _BUILDERS[spec.kind](spec)


def render(spec: FigureSpec) -> Path:
    """Render a figure spec to its output image file."""
    fig = build_figure(spec)
    out = Path(spec.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    try:
        fig.tight_layout()
        kwargs = {"dpi": spec.options.get("dpi", 120)}
        if out.suffix == ".svg":
            kwargs["metadata"] = {"Date": None}  # keep SVG output reproducible
        fig.savefig(out, **kwargs)
    finally:
        plt.close(fig)
    return out


def drawing_summary(fig) -> dict:
    """Extract the drawn artists as plain data (for golden comparisons)."""
    summary = {"axes": []}
    for ax in fig.axes:
        entry = {
            "title": ax.get_title(),
            "xlabel": ax.get_xlabel(),
            "ylabel": ax.get_ylabel(),
            "bars": [round(p.get_height(), 9) for p in ax.patches],
            "lines": [[[round(float(v), 9) for v in line.get_xdata()],
                       [round(float(v), 9) for v in line.get_ydata()]]
                      for line in ax.get_lines()],
            "images": [np.round(im.get_array().data, 9).tolist()
                       for im in ax.get_images()],
            "texts": [t.get_text() for t in ax.texts],
        }
        summary["axes"].append(entry)
    return summary

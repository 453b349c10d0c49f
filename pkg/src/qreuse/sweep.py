"""Parameter sweeps: repeated seeded episodes per (alpha, gamma, eps0) cell.

Episode seeds are a pure function of (master seed, cell values, repetition
index), so any subset of cells can be rerun later and reproduces the same
statistics.  Episodes may run in parallel; aggregation folds in (cell,
repetition) order regardless of completion order, so results never depend
on the worker count (set via the QREUSE_WORKERS environment variable).
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np
import yaml
from joblib import Parallel, delayed

from .arena import SimulationTrace, run_episode, window_metrics
from .channel import SAMPLED_PER_LINK, build_link_gain_table
from .learner import LearnerConfig
from .oracle import OracleResult, optimal_aggregate, optimal_proportional_fairness
from .scenario import Scenario, ScenarioError, load_scenario

PER_EPISODE = "per-episode"
SHARED = "shared"

_GAINS_STREAM_TAG = 0x6761696E  # distinguishes the shared-gains stream


@dataclass(frozen=True)
class SweepSpec:
    scenario: str
    cells: tuple[tuple[float, float, float], ...]  # (alpha, gamma, eps0)
    iterations: int = 10000
    window: int = 5000
    repetitions: int = 100
    master_seed: int = 1
    gains_policy: str = PER_EPISODE
    randomness_mode: str | None = None

    def __post_init__(self):
        if not self.cells:
            raise ValueError("sweep needs at least one cell")
        if not 1 <= self.window <= self.iterations:
            raise ValueError("window must be within 1..iterations")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if self.gains_policy not in (PER_EPISODE, SHARED):
            raise ValueError(f"unknown gains_policy {self.gains_policy!r}")


def cells_from_grid(alphas, gammas, eps0s) -> tuple[tuple[float, float, float], ...]:
    """Cross product in (alpha, gamma, eps0) order, alpha varying slowest."""
    return tuple((float(a), float(g), float(e))
                 for a, g, e in itertools.product(alphas, gammas, eps0s))


def _float_bits(x: float) -> int:
    return int(np.float64(x).view(np.uint64))


def episode_seed(master_seed: int, alpha: float, gamma: float, eps0: float,
                 repetition: int) -> int:
    """Deterministic per-episode seed from the cell's values (not its index)."""
    ss = np.random.SeedSequence([int(master_seed), _float_bits(alpha),
                                 _float_bits(gamma), _float_bits(eps0),
                                 int(repetition)])
    lo, hi = ss.generate_state(2)
    return int(lo) | (int(hi) << 32)


@dataclass
class EpisodeStats:
    cell_index: int
    repetition: int
    seed: int
    mean_aggregate_bps: float
    per_network_mean_bps: list[float]
    per_network_std_bps: list[float]
    action_frequencies: list[list[float]]  # (n, K)


@dataclass
class CellStats:
    index: int
    alpha: float
    gamma: float
    eps0: float
    mean_aggregate_bps: float          # mean over repetitions of window means
    std_aggregate_bps: float           # sample std over repetitions (0 if 1 rep)
    per_network_mean_bps: list[float]
    mean_action_frequencies: list[list[float]]


@dataclass
class SweepResult:
    spec: SweepSpec
    scenario_name: str
    cells: list[CellStats]
    episodes: list[EpisodeStats]
    sample_traces: dict[int, SimulationTrace] = field(default_factory=dict)


def _run_one(scenario: Scenario, spec: SweepSpec, cell_index: int, rep: int,
             shared_gains):
    alpha, gamma, eps0 = spec.cells[cell_index]
    seed = episode_seed(spec.master_seed, alpha, gamma, eps0, rep)
    trace = run_episode(scenario.deployment, scenario.path_loss, scenario.radio,
                        LearnerConfig(alpha, gamma, eps0), spec.iterations, seed,
                        gains=shared_gains)
    wm = window_metrics(trace, spec.window)
    stats = EpisodeStats(
        cell_index=cell_index, repetition=rep, seed=seed,
        mean_aggregate_bps=wm.mean_aggregate_bps,
        per_network_mean_bps=wm.per_network_mean_bps.tolist(),
        per_network_std_bps=wm.per_network_std_bps.tolist(),
        action_frequencies=wm.action_frequencies.tolist(),
    )
    return stats, (trace if rep == 0 else None)


def shared_gains_table(scenario: Scenario, master_seed: int):
    """The single frozen gain table used by every episode under the
    'shared' gains policy (a no-op in deterministic-means mode)."""
    rng = np.random.default_rng(np.random.SeedSequence([int(master_seed),
                                                        _GAINS_STREAM_TAG]))
    return build_link_gain_table(scenario.deployment, scenario.path_loss, rng)


def default_workers() -> int:
    value = os.environ.get("QREUSE_WORKERS", "")
    return int(value) if value else -1


def run_sweep(spec: SweepSpec, scenario: Scenario | None = None,
              workers: int | None = None) -> SweepResult:
    if scenario is None:
        scenario = load_scenario(spec.scenario)
    if spec.randomness_mode is not None:
        scenario = scenario.with_randomness_mode(spec.randomness_mode)
    shared = None
    if spec.gains_policy == SHARED:
        shared = shared_gains_table(scenario, spec.master_seed)

    jobs = [(ci, rep) for ci in range(len(spec.cells))
            for rep in range(spec.repetitions)]
    n_jobs = workers if workers is not None else default_workers()
    outputs = Parallel(n_jobs=n_jobs)(
        delayed(_run_one)(scenario, spec, ci, rep, shared) for ci, rep in jobs)

    episodes = [stats for stats, _ in outputs]
    sample_traces = {stats.cell_index: trace
                     for stats, trace in outputs if trace is not None}
    cells = []
    for ci, (alpha, gamma, eps0) in enumerate(spec.cells):
        cell_eps = [e for e in episodes if e.cell_index == ci]
        aggs = np.array([e.mean_aggregate_bps for e in cell_eps])
        cells.append(CellStats(
            index=ci, alpha=alpha, gamma=gamma, eps0=eps0,
            mean_aggregate_bps=float(aggs.mean()),
            std_aggregate_bps=float(aggs.std(ddof=1)) if len(aggs) > 1 else 0.0,
            per_network_mean_bps=np.mean(
                [e.per_network_mean_bps for e in cell_eps], axis=0).tolist(),
            mean_action_frequencies=np.mean(
                [e.action_frequencies for e in cell_eps], axis=0).tolist(),
        ))
    return SweepResult(spec=spec, scenario_name=scenario.name,
                       cells=cells, episodes=episodes,
                       sample_traces=sample_traces)


# ---------------------------------------------------------------------------
# sweep spec files and bundled presets

def sweep_spec_from_dict(raw: dict, name: str = "sweep") -> SweepSpec:
    if "cells" in raw:
        cells = tuple((float(c["alpha"]), float(c["gamma"]), float(c["eps0"]))
                      for c in raw["cells"])
    elif all(k in raw for k in ("alphas", "gammas", "eps0s")):
        cells = cells_from_grid(raw["alphas"], raw["gammas"], raw["eps0s"])
    else:
        raise ScenarioError(
            f"{name}: need either 'cells' or all of 'alphas'/'gammas'/'eps0s'")
    return SweepSpec(
        scenario=str(raw.get("scenario", "default")),
        cells=cells,
        iterations=int(raw.get("iterations", 10000)),
        window=int(raw.get("window", 5000)),
        repetitions=int(raw.get("repetitions", 100)),
        master_seed=int(raw.get("master_seed", 1)),
        gains_policy=str(raw.get("gains_policy", PER_EPISODE)),
        randomness_mode=raw.get("randomness_mode"),
    )


def load_sweep_spec(source: str | Path) -> SweepSpec:
    """Load a sweep spec from a YAML path or a bundled preset ('corners')."""
    bundled = resources.files("qreuse").joinpath(f"data/{source}_sweep.yaml")
    if isinstance(source, str) and "/" not in source and not source.endswith(".yaml") \
            and bundled.is_file():
        return sweep_spec_from_dict(yaml.safe_load(bundled.read_text()), str(source))
    path = Path(source)
    if not path.is_file():
        raise ScenarioError(f"sweep spec file not found: {source}")
    try:
        raw = yaml.safe_load(path.read_text())
    except yaml.YAMLError as exc:
        raise ScenarioError(f"{path}: not valid YAML ({exc})") from exc
    return sweep_spec_from_dict(raw, path.stem)


# ---------------------------------------------------------------------------
# persistence: figure-ready datasets, all plain CSV with a schema line

SCHEMAS = {
    "episodes": "qreuse/episodes v1",
    "cells": "qreuse/cells v1",
    "per_network_means": "qreuse/per-network-means v1",
    "action_frequencies": "qreuse/action-frequencies v1",
    "timeseries": "qreuse/timeseries v1",
    "grid": "qreuse/alpha-gamma-grid v1",
}


def _write_csv(path: Path, schema: str, header: list[str], rows) -> None:
    with path.open("w", newline="") as fh:
        fh.write(f"# schema: {schema}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(str(v) for v in row) + "\n")


def save_sweep(result: SweepResult, outdir: str | Path,
               oracles: "OraclePair | None" = None) -> None:
    """Persist a sweep as figure-ready CSV datasets plus a manifest."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    spec = result.spec
    n = len(result.episodes[0].per_network_mean_bps)

    _write_csv(
        outdir / "episodes.csv", SCHEMAS["episodes"],
        ["cell", "alpha", "gamma", "eps0", "repetition", "seed",
         "mean_aggregate_bps"]
        + [f"mean_bps_net{j}" for j in range(1, n + 1)]
        + [f"std_bps_net{j}" for j in range(1, n + 1)],
        ([e.cell_index, spec.cells[e.cell_index][0], spec.cells[e.cell_index][1],
          spec.cells[e.cell_index][2], e.repetition, e.seed,
          repr(e.mean_aggregate_bps)]
         + [repr(v) for v in e.per_network_mean_bps]
         + [repr(v) for v in e.per_network_std_bps]
         for e in result.episodes),
    )

    opt = oracles.aggregate.value if oracles is not None else None
    header = ["cell", "alpha", "gamma", "eps0", "repetitions",
              "mean_aggregate_bps", "std_aggregate_bps"]
    if opt is not None:
        header.append("fraction_of_optimum")
    _write_csv(
        outdir / "cells.csv", SCHEMAS["cells"], header,
        ([c.index, c.alpha, c.gamma, c.eps0, spec.repetitions,
          repr(c.mean_aggregate_bps), repr(c.std_aggregate_bps)]
         + ([repr(c.mean_aggregate_bps / opt)] if opt is not None else [])
         for c in result.cells),
    )

    _write_csv(
        outdir / "per_network_means.csv", SCHEMAS["per_network_means"],
        ["cell", "alpha", "gamma", "eps0", "network", "mean_bps"],
        ([c.index, c.alpha, c.gamma, c.eps0, j + 1, repr(c.per_network_mean_bps[j])]
         for c in result.cells for j in range(n)),
    )

    if all(c.mean_action_frequencies for c in result.cells):
        K = len(result.cells[0].mean_action_frequencies[0])
        _write_csv(
            outdir / "action_frequencies.csv", SCHEMAS["action_frequencies"],
            ["cell", "alpha", "gamma", "eps0", "network"]
            + [f"action_{k}" for k in range(1, K + 1)],
            ([c.index, c.alpha, c.gamma, c.eps0, j + 1]
             + [repr(v) for v in c.mean_action_frequencies[j]]
             for c in result.cells for j in range(n)),
        )

    for ci, trace in sorted(result.sample_traces.items()):
        _write_csv(
            outdir / f"timeseries_cell{ci}.csv", SCHEMAS["timeseries"],
            ["t"] + [f"throughput_bps_net{j}" for j in range(1, n + 1)],
            ([t + 1] + [repr(float(v)) for v in trace.throughput_bps[t]]
             for t in range(trace.n_iterations)),
        )

    # alpha x gamma grids (one pair of files per eps0 value present)
    for eps0 in sorted({c.eps0 for c in result.cells}):
        sub = [c for c in result.cells if c.eps0 == eps0]
        alphas = sorted({c.alpha for c in sub})
        gammas = sorted({c.gamma for c in sub})
        by_key = {(c.alpha, c.gamma): c for c in sub}
        tag = f"{eps0:g}".replace(".", "p")
        for kind, attr in (("mean", "mean_aggregate_bps"), ("std", "std_aggregate_bps")):
            _write_csv(
                outdir / f"grid_{kind}_eps{tag}.csv", SCHEMAS["grid"],
                ["alpha"] + [f"gamma_{g:g}" for g in gammas],
                ([a] + [repr(getattr(by_key[(a, g)], attr)) if (a, g) in by_key else ""
                        for g in gammas]
                 for a in alphas),
            )

    manifest = {
        "scenario": result.scenario_name,
        "spec": {
            "scenario": spec.scenario,
            "cells": [list(c) for c in spec.cells],
            "iterations": spec.iterations, "window": spec.window,
            "repetitions": spec.repetitions, "master_seed": spec.master_seed,
            "gains_policy": spec.gains_policy,
            "randomness_mode": spec.randomness_mode,
        },
        "episode_seeds": [e.seed for e in result.episodes],
        "version": _package_version(),
    }
    if oracles is not None:
        manifest["oracle"] = {
            "aggregate_bps": oracles.aggregate.value,
            "aggregate_maximizers": [list(m) for m in oracles.aggregate.maximizers],
            "proportional_fairness": oracles.proportional_fairness.value,
            "pf_maximizers": [list(m) for m in oracles.proportional_fairness.maximizers],
        }
    (outdir / "manifest.json").write_text(json.dumps(manifest, indent=2))


def _package_version() -> str:
    from importlib.metadata import PackageNotFoundError, version
    try:
        return version("qreuse")
    except PackageNotFoundError:
        return "unknown"


def load_sweep_result(outdir: str | Path) -> SweepResult:
    """Rebuild a SweepResult from a directory written by :func:`save_sweep`.

    Sample traces are not reconstructed; the persisted timeseries datasets
    already carry what the figure layer needs.
    """
    outdir = Path(outdir)
    manifest_path = outdir / "manifest.json"
    if not manifest_path.is_file():
        raise ScenarioError(f"not a sweep output directory: {outdir}")
    manifest = json.loads(manifest_path.read_text())
    raw_spec = manifest["spec"]
    spec = SweepSpec(
        scenario=raw_spec["scenario"],
        cells=tuple(tuple(c) for c in raw_spec["cells"]),
        iterations=raw_spec["iterations"], window=raw_spec["window"],
        repetitions=raw_spec["repetitions"], master_seed=raw_spec["master_seed"],
        gains_policy=raw_spec["gains_policy"],
        randomness_mode=raw_spec.get("randomness_mode"),
    )
    episodes = []
    with (outdir / "episodes.csv").open() as fh:
        schema = fh.readline().strip()
        if schema != f"# schema: {SCHEMAS['episodes']}":
            raise ScenarioError(f"unexpected episodes schema: {schema!r}")
        header = fh.readline().strip().split(",")
        n = sum(1 for c in header if c.startswith("mean_bps_net"))
        for line in fh:
            row = line.strip().split(",")
            episodes.append(EpisodeStats(
                cell_index=int(row[0]), repetition=int(row[4]), seed=int(row[5]),
                mean_aggregate_bps=float(row[6]),
                per_network_mean_bps=[float(v) for v in row[7:7 + n]],
                per_network_std_bps=[float(v) for v in row[7 + n:7 + 2 * n]],
                action_frequencies=[],
            ))
    freq_rows: dict[int, list[list[float]]] = {}
    freq_path = outdir / "action_frequencies.csv"
    if freq_path.is_file():
        with freq_path.open() as fh:
            fh.readline()
            fh.readline()
            for line in fh:
                row = line.strip().split(",")
                freq_rows.setdefault(int(row[0]), []).append([float(v) for v in row[5:]])
    cells = []
    for ci, (alpha, gamma, eps0) in enumerate(spec.cells):
        cell_eps = [e for e in episodes if e.cell_index == ci]
        aggs = np.array([e.mean_aggregate_bps for e in cell_eps])
        cells.append(CellStats(
            index=ci, alpha=alpha, gamma=gamma, eps0=eps0,
            mean_aggregate_bps=float(aggs.mean()),
            std_aggregate_bps=float(aggs.std(ddof=1)) if len(aggs) > 1 else 0.0,
            per_network_mean_bps=np.mean(
                [e.per_network_mean_bps for e in cell_eps], axis=0).tolist(),
            mean_action_frequencies=freq_rows.get(ci, []),
        ))
    return SweepResult(spec=spec, scenario_name=manifest["scenario"],
                       cells=cells, episodes=episodes)


@dataclass
class OraclePair:
    scenario_name: str
    aggregate: OracleResult
    proportional_fairness: OracleResult


def solve_oracles(scenario: Scenario, gains=None) -> OraclePair:
    """Both exhaustive optima for a scenario (means-mode table unless a
    sampled gain table is supplied)."""
    if gains is None:
        if scenario.path_loss.randomness_mode == SAMPLED_PER_LINK:
            raise ValueError("sampled mode needs an explicit gain table; "
                             "build one with shared_gains_table()")
        gains = build_link_gain_table(scenario.deployment, scenario.path_loss)
    dep, radio = scenario.deployment, scenario.radio
    return OraclePair(
        scenario_name=scenario.name,
        aggregate=optimal_aggregate(dep, gains, radio),
        proportional_fairness=optimal_proportional_fairness(dep, gains, radio),
    )


def report(result: SweepResult, oracles: OraclePair, outdir: str | Path) -> None:
    """Re-emit the sweep datasets with oracle reference values attached."""
    if oracles.scenario_name != result.scenario_name:
        raise ValueError(
            f"scenario mismatch: sweep ran on {result.scenario_name!r} but the "
            f"oracle was solved for {oracles.scenario_name!r}")
    save_sweep(result, outdir, oracles=oracles)

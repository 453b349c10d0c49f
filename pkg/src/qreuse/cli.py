"""Command line interface: oracle, run, sweep, report."""

from __future__ import annotations

import argparse
import dataclasses
import json
import shutil
import sys
from pathlib import Path

from .arena import run_episode, save_trace
from .channel import DETERMINISTIC_MEANS, SAMPLED_PER_LINK
from .learner import LearnerConfig
from .oracle import OracleResult
from .scenario import ScenarioError, load_scenario
from .sweep import (
    OraclePair,
    load_sweep_result,
    load_sweep_spec,
    report,
    run_sweep,
    save_sweep,
    shared_gains_table,
    solve_oracles,
)


def _add_mode_flags(parser: argparse.ArgumentParser) -> None:
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--deterministic", dest="mode", action="store_const",
                      const=DETERMINISTIC_MEANS,
                      help="fix shadowing/obstacle losses at their means")
    mode.add_argument("--sampled", dest="mode", action="store_const",
                      const=SAMPLED_PER_LINK,
                      help="draw per-link losses once per run")


def _load(args) -> "Scenario":
    scenario = load_scenario(args.scenario)
    if getattr(args, "mode", None):
        scenario = scenario.with_randomness_mode(args.mode)
    return scenario


def _maximizer_table(agg: OracleResult, pf: OracleResult, n: int) -> str:
    def cell(res, i):
        primary = res.maximizers[0][i]
        analog = f" ({res.maximizers[1][i]})" if len(res.maximizers) > 1 else ""
        return f"{primary}{analog}"

    lines = ["network | max aggregate | max prop. fairness",
             "--------+---------------+-------------------"]
    for i in range(n):
        lines.append(f"{i + 1:7d} | {cell(agg, i):>13} | {cell(pf, i):>18}")
    return "\n".join(lines)


def cmd_oracle(args) -> int:
    scenario = _load(args)
    gains = None
    if scenario.path_loss.randomness_mode == SAMPLED_PER_LINK:
        gains = shared_gains_table(scenario, args.seed)
    oracles = solve_oracles(scenario, gains)
    agg, pf = oracles.aggregate, oracles.proportional_fairness
    n = scenario.deployment.n_networks
    space = scenario.deployment.action_space
    print(f"scenario: {scenario.name} ({scenario.path_loss.randomness_mode})")
    print(f"actions 1..{space.size} = " + ", ".join(
        f"{{{a.channel},{a.tx_power_dbm:g}}}" for a in space.actions()))
    print()
    print(_maximizer_table(agg, pf, n))
    print()
    print(f"aggregate optimum : {agg.value / 1e6:.3f} Mbps "
          f"({len(agg.maximizers)} equivalent solutions)")
    pf_agg = sum(pf.per_network_throughput_bps[0])
    print(f"prop. fairness    : {pf.value:.4f} log-sum, "
          f"aggregate there {pf_agg / 1e6:.3f} Mbps "
          f"({len(pf.maximizers)} equivalent solutions)")
    if args.json:
        payload = {
            "scenario": scenario.name,
            "randomness_mode": scenario.path_loss.randomness_mode,
            "aggregate": {
                "value_bps": agg.value,
                "maximizers": [list(m) for m in agg.maximizers],
                "per_network_throughput_bps": agg.per_network_throughput_bps,
            },
            "proportional_fairness": {
                "value": pf.value,
                "maximizers": [list(m) for m in pf.maximizers],
                "per_network_throughput_bps": pf.per_network_throughput_bps,
            },
        }
        Path(args.json).write_text(json.dumps(payload, indent=2))
        print(f"wrote {args.json}")
    return 0


def cmd_run(args) -> int:
    scenario = _load(args)
    cfg = LearnerConfig(args.alpha, args.gamma, args.eps0)
    trace = run_episode(scenario.deployment, scenario.path_loss, scenario.radio,
                        cfg, args.iterations, args.seed)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    save_trace(trace, out)
    agg = trace.throughput_bps.sum(axis=1)
    half = trace.n_iterations // 2 or 1
    print(f"wrote {out} ({trace.n_iterations} iterations, seed {trace.seed})")
    print(f"mean aggregate throughput: {agg.mean() / 1e6:.3f} Mbps "
          f"(last half: {agg[-half:].mean() / 1e6:.3f} Mbps)")
    return 0


def cmd_sweep(args) -> int:
    spec = load_sweep_spec(args.spec)
    if getattr(args, "mode", None):
        spec = dataclasses.replace(spec, randomness_mode=args.mode)
    result = run_sweep(spec, workers=args.workers)
    save_sweep(result, args.out)
    print(f"wrote {args.out}: {len(spec.cells)} cells x {spec.repetitions} repetitions")
    for c in result.cells:
        print(f"  cell {c.index} (a={c.alpha:g}, g={c.gamma:g}, e0={c.eps0:g}): "
              f"{c.mean_aggregate_bps / 1e6:.2f} +- {c.std_aggregate_bps / 1e6:.2f} Mbps")
    return 0


def cmd_report(args) -> int:
    indir = Path(args.results)
    result = load_sweep_result(indir)
    scenario = load_scenario(result.spec.scenario)
    if result.spec.randomness_mode:
        scenario = scenario.with_randomness_mode(result.spec.randomness_mode)
    gains = None
    if scenario.path_loss.randomness_mode == SAMPLED_PER_LINK:
        gains = shared_gains_table(scenario, result.spec.master_seed)
    oracles = solve_oracles(scenario, gains)
    report(result, oracles, args.out)
    for ts in sorted(indir.glob("timeseries_cell*.csv")):
        dest = Path(args.out) / ts.name
        if not dest.exists():
            shutil.copy(ts, dest)
    frac = [c.mean_aggregate_bps / oracles.aggregate.value for c in result.cells]
    print(f"wrote {args.out}; fraction of aggregate optimum per cell: "
          + ", ".join(f"{f:.3f}" for f in frac))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qreuse",
        description="Decentralized Q-learning spatial-reuse simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("oracle", help="exhaustive optima for a scenario")
    p.add_argument("scenario", help="scenario file or bundled name (default)")
    p.add_argument("--seed", type=int, default=1,
                   help="gain-realization seed in sampled mode")
    p.add_argument("--json", help="also write machine-readable output here")
    _add_mode_flags(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("run", help="run one seeded learning episode")
    p.add_argument("scenario")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--eps0", type=float, required=True)
    p.add_argument("--iterations", type=int, default=10000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", required=True, help="trace CSV path")
    _add_mode_flags(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="run a parameter sweep")
    p.add_argument("spec", help="sweep spec file or bundled preset (corners)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--workers", type=int, default=None,
                   help="parallel workers (default: QREUSE_WORKERS or all cores)")
    _add_mode_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("report", help="attach oracle references to sweep output")
    p.add_argument("results", help="directory written by 'sweep'")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

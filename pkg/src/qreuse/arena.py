"""One seeded simulation run: sequential play, rewards, learning, trace.

Each iteration t = 1..T:

1. a fresh uniform permutation fixes the order in which networks move;
2. in that order, every network picks an action (epsilon-greedy with
   eps_t), the joint action is updated in place, the mover is rewarded
   immediately against the *current* joint action (earlier movers this
   iteration have already switched, later movers still hold yesterday's
   action), and its Q table is updated;
3. the end-of-iteration joint action plus every network's throughput and
   reward under it are recorded.

All randomness derives from one master seed via named substreams (link
gains, initial actions, move order, one exploration stream per agent), so
a trace is a pure function of (inputs, seed) and unrelated components can
change without perturbing each other's draws.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .channel import (
    LinkGainTable,
    PathLossParams,
    RadioConfig,
    ThroughputTables,
    build_link_gain_table,
    max_throughput_bps,
    throughput_bps,
)
from .learner import LearnerConfig, _select_from_draws, epsilon_at
from .model import Deployment

TRACE_SCHEMA = "qreuse/trace v1"


@dataclass
class SimulationTrace:
    """Everything one episode produced, one row per iteration."""

    config: dict
    seed: int
    order: np.ndarray           # (T, n) network ids in move order
    actions: np.ndarray         # (T, n) end-of-iteration action indices
    throughput_bps: np.ndarray  # (T, n)
    reward: np.ndarray          # (T, n)
    final_q: np.ndarray         # (n, K)
    gain_db: np.ndarray         # (n, n) frozen link gains of this run

    @property
    def n_iterations(self) -> int:
        return self.actions.shape[0]

    @property
    def n_networks(self) -> int:
        return self.actions.shape[1]


def compute_reward(i: int, joint: tuple[int, ...], table: LinkGainTable,
                   radio: RadioConfig, space) -> float:
    """Throughput of network ``i`` under ``joint`` as a fraction of its
    interference-free maximum; always in [0, 1]."""
    return (throughput_bps(i, joint, table, radio, space)
            / max_throughput_bps(i, table, radio, space))


def run_episode(dep: Deployment, pl: PathLossParams, radio: RadioConfig,
                cfg: LearnerConfig, iterations: int, seed: int,
                gains: LinkGainTable | None = None) -> SimulationTrace:
    """Run one seeded episode and return its full trace.

    ``gains`` overrides the run's link gain table (shared-environment
    studies); otherwise the table comes from the seed's gains substream.
    """
    if iterations < 1:
        raise ValueError("need at least one iteration")
    n = dep.n_networks
    space = dep.action_space
    K = space.size
    T = iterations

    # Substream layout is fixed: changing one consumer never shifts the
    # draws seen by the others, and it is identical in both randomness
    # modes (the gains child is simply unused when a table is supplied).
    ss = np.random.SeedSequence(seed)
    gains_ss, init_ss, perm_ss, *agent_ss = ss.spawn(3 + n)
    if gains is None:
        gains = build_link_gain_table(dep, pl, np.random.default_rng(gains_ss))
    tabs = ThroughputTables(gains, radio, space)

    joint = [int(k) for k in np.random.default_rng(init_ss).integers(1, K + 1, size=n)]
    perms = np.random.default_rng(perm_ss).permuted(
        np.tile(np.arange(n), (T, 1)), axis=1)
    perm_rows = perms.tolist()
    # Per agent: (T, 3) uniforms; row t feeds that agent's t-th selection
    # exactly as three sequential draws would (see learner.select_action).
    agent_draws = [np.random.default_rng(s).random((T, 3)).ravel().tolist()
                   for s in agent_ss]
    eps_seq = [epsilon_at(t, cfg.eps0) for t in range(1, T + 1)]

    q = [[0.0] * K for _ in range(n)]
    sig = tabs.signal_mw
    gstar = tabs.max_throughput_bps
    noise = tabs.noise_mw
    bw = tabs.bandwidth_hz
    stride = K + 1
    alpha, gamma = cfg.alpha, cfg.gamma
    log2 = math.log2
    select = _select_from_draws
    # interference contributions grouped by receiving network
    incoming = [[(o, tabs.contrib_mw[o][j]) for o in range(n) if o != j]
                for j in range(n)]

    receivers = list(enumerate(incoming))
    # Throughput memo: the environment is frozen, so the throughput of
    # network j depends only on (j, its action, the others' actions).  The
    # others' actions are tracked as one base-(K+1) integer per receiver,
    # updated incrementally as movers switch; cache misses evaluate the
    # plain fresh-sum expression, so cached values are bit-identical to an
    # uncached run.
    pows = [stride ** r for r in range(n)]
    weight = [[0] * n for _ in range(n)]   # weight[mover][receiver]
    for r in range(n):
        for rank, o in enumerate(o for o in range(n) if o != r):
            weight[o][r] = pows[rank]
    o_idx = [sum(joint[o] * weight[o][r] for o in range(n) if o != r)
             for r in range(n)]
    key_base = [i * stride * pows[n - 1] for i in range(n)]
    tput_memo: dict[int, float] = {}
    actions_rows = []
    tput_rows = []
    reward_rows = []

    for t in range(T):
        eps = eps_seq[t]
        base = 3 * t
        for i in perm_rows[t]:
            d = agent_draws[i]
            qi = q[i]
            m = max(qi)
            k = select(qi, eps, d[base], d[base + 1], d[base + 2], m)
            k_old = joint[i]
            if k != k_old:
                joint[i] = k
                delta = k - k_old
                w = weight[i]
                for r in range(n):
                    if r != i:
                        o_idx[r] += delta * w[r]
            key = key_base[i] + k * pows[n - 1] + o_idx[i]
            tp = tput_memo.get(key)
            if tp is None:
                interf = 0.0
                for o, row in incoming[i]:
                    interf += row[joint[o] * stride + k]
                tp = bw * log2(1.0 + sig[i][k] / (interf + noise))
                tput_memo[key] = tp
            # update fused with selection; bit-identical to QTable.update
            r = tp / gstar[i]
            qi[k - 1] += alpha * (r + gamma * m - qi[k - 1])
        tput_row = []
        reward_row = []
        for j, inc in receivers:
            kj = joint[j]
            key = key_base[j] + kj * pows[n - 1] + o_idx[j]
            tp = tput_memo.get(key)
            if tp is None:
                interf = 0.0
                for o, row in inc:
                    interf += row[joint[o] * stride + kj]
                tp = bw * log2(1.0 + sig[j][kj] / (interf + noise))
                tput_memo[key] = tp
            tput_row.append(tp)
            reward_row.append(tp / gstar[j])
        actions_rows.append(joint.copy())
        tput_rows.append(tput_row)
        reward_rows.append(reward_row)

    actions_out = np.array(actions_rows, dtype=np.int64)
    tput_out = np.array(tput_rows)
    reward_out = np.array(reward_rows)

    config = {
        "alpha": cfg.alpha, "gamma": cfg.gamma, "eps0": cfg.eps0,
        "iterations": T, "n_networks": n, "n_actions": K,
        "randomness_mode": pl.randomness_mode,
    }
    return SimulationTrace(
        config=config, seed=seed,
        order=perms + 1,
        actions=actions_out,
        throughput_bps=tput_out,
        reward=reward_out,
        final_q=np.array(q),
        gain_db=np.asarray(gains.gain_db),
    )


@dataclass
class WindowMetrics:
    """Statistics over the last ``window`` iterations of a trace."""

    window: int
    mean_aggregate_bps: float
    per_network_mean_bps: np.ndarray   # (n,)
    per_network_std_bps: np.ndarray    # (n,) within-run std over the window
    action_frequencies: np.ndarray     # (n, K), rows sum to 1


def window_metrics(trace: SimulationTrace, window: int) -> WindowMetrics:
    T = trace.n_iterations
    if not 1 <= window <= T:
        raise ValueError(f"window {window} outside 1..{T}")
    K = trace.final_q.shape[1]
    tput = trace.throughput_bps[T - window:]
    acts = trace.actions[T - window:]
    freqs = np.stack([
        np.bincount(acts[:, j] - 1, minlength=K) / window
        for j in range(trace.n_networks)
    ])
    return WindowMetrics(
        window=window,
        mean_aggregate_bps=float(tput.sum(axis=1).mean()),
        per_network_mean_bps=tput.mean(axis=0),
        per_network_std_bps=tput.std(axis=0),
        action_frequencies=freqs,
    )


def save_trace(trace: SimulationTrace, path: str | Path) -> None:
    """Write the per-iteration rows as CSV plus a JSON sidecar.

    The sidecar (``<name>.meta.json``) carries the config echo, the seed,
    the frozen link gains and the final Q table of every network.
    """
    path = Path(path)
    n = trace.n_networks
    header = (["t", "order"]
              + [f"action_{j}" for j in range(1, n + 1)]
              + [f"throughput_bps_{j}" for j in range(1, n + 1)]
              + [f"reward_{j}" for j in range(1, n + 1)])
    with path.open("w", newline="") as fh:
        fh.write(f"# schema: {TRACE_SCHEMA}\n")
        writer = csv.writer(fh)
        writer.writerow(header)
        for t in range(trace.n_iterations):
            row = [t + 1, ";".join(str(v) for v in trace.order[t])]
            row += [int(a) for a in trace.actions[t]]
            row += [repr(float(v)) for v in trace.throughput_bps[t]]
            row += [repr(float(v)) for v in trace.reward[t]]
            writer.writerow(row)
    meta = {
        "schema": TRACE_SCHEMA,
        "config": trace.config,
        "seed": trace.seed,
        "gain_db": trace.gain_db.tolist(),
        "final_q": trace.final_q.tolist(),
    }
    path.with_suffix(path.suffix + ".meta.json").write_text(json.dumps(meta, indent=2))


def load_trace(path: str | Path) -> SimulationTrace:
    path = Path(path)
    with path.open() as fh:
        first = fh.readline().strip()
        if first != f"# schema: {TRACE_SCHEMA}":
            raise ValueError(f"unexpected trace schema line: {first!r}")
        reader = csv.reader(fh)
        header = next(reader)
        n = sum(1 for c in header if c.startswith("action_"))
        order, actions, tput, reward = [], [], [], []
        for row in reader:
            order.append([int(v) for v in row[1].split(";")])
            actions.append([int(v) for v in row[2:2 + n]])
            tput.append([float(v) for v in row[2 + n:2 + 2 * n]])
            reward.append([float(v) for v in row[2 + 2 * n:2 + 3 * n]])
    meta = json.loads(path.with_suffix(path.suffix + ".meta.json").read_text())
    return SimulationTrace(
        config=meta["config"], seed=meta["seed"],
        order=np.array(order), actions=np.array(actions),
        throughput_bps=np.array(tput), reward=np.array(reward),
        final_q=np.array(meta["final_q"]), gain_db=np.array(meta["gain_db"]),
    )

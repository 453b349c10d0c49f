"""Exhaustive search over the joint action space: exact reference optima.

Two objectives: total throughput, and proportional fairness (the sum of
log throughputs, which trades peak capacity for equity).  The search is
exact, not scalable -- a guard limit rejects action spaces whose K^n
explodes.  All ties within a relative tolerance are reported, so symmetric
scenarios return their full family of equivalent optima.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .channel import LinkGainTable, RadioConfig, ThroughputTables
from .model import Deployment

AGGREGATE = "aggregate"
PROPORTIONAL_FAIRNESS = "proportional-fairness"

DEFAULT_GUARD = 10_000_000
TIE_REL_TOL = 1e-9
_CHUNK = 65536


class SearchSpaceTooLarge(ValueError):
    pass


class NoFiniteOptimumError(ValueError):
    """Every joint action drove some network's throughput to zero."""


@dataclass
class OracleResult:
    objective: str
    maximizers: list[tuple[int, ...]]
    value: float
    per_network_throughput_bps: list[list[float]]  # one row per maximizer


def enumerate_joint(n: int, K: int, guard: int = DEFAULT_GUARD):
    """Yield all K^n joint actions in lexicographic order."""
    if n < 1 or K < 1:
        raise ValueError("need n >= 1 networks and K >= 1 actions")
    total = K ** n
    if total > guard:
        raise SearchSpaceTooLarge(
            f"K^n = {K}^{n} = {total} exceeds the guard limit {guard}; "
            "raise the guard explicitly if this is intentional")
    return itertools.product(range(1, K + 1), repeat=n)


def _throughput_chunks(dep: Deployment, table: LinkGainTable, radio: RadioConfig,
                       guard: int):
    """Yield (joints, per-network throughput) blocks covering K^n."""
    n = dep.n_networks
    K = dep.action_space.size
    tabs = ThroughputTables(table, radio, dep.action_space)
    sig = np.array(tabs.signal_mw)                        # (n, K+1)
    stride = K + 1
    contrib = np.array([[tabs.contrib_mw[i][j] if i != j else [0.0] * (stride * stride)
                         for j in range(n)] for i in range(n)])
    it = enumerate_joint(n, K, guard)
    while True:
        block = list(itertools.islice(it, _CHUNK))
        if not block:
            return
        ks = np.array(block, dtype=np.int64)              # (m, n)
        interf = np.zeros((len(block), n))
        for j in range(n):
            for i in range(n):
                if i != j:
                    interf[:, j] += contrib[i, j, ks[:, i] * stride + ks[:, j]]
        signal = sig[np.arange(n), ks]
        tput = radio.bandwidth_hz * np.log2(1.0 + signal / (interf + tabs.noise_mw))
        yield block, tput


def _search(dep, table, radio, guard, objective_fn, objective_name) -> OracleResult:
    # pass 1: the exact maximum
    best = -np.inf
    for _, tput in _throughput_chunks(dep, table, radio, guard):
        m = objective_fn(tput).max()
        if m > best:
            best = float(m)
    if not np.isfinite(best):
        raise NoFiniteOptimumError(
            f"no joint action yields a finite {objective_name} value")
    # pass 2: every joint action within the tie tolerance of the maximum
    cutoff = best - TIE_REL_TOL * abs(best)
    maximizers: list[tuple[int, ...]] = []
    per_net: list[list[float]] = []
    for block, tput in _throughput_chunks(dep, table, radio, guard):
        vals = objective_fn(tput)
        for idx in np.flatnonzero(vals >= cutoff):
            maximizers.append(block[idx])
            per_net.append(tput[idx].tolist())
    return OracleResult(objective_name, maximizers, best, per_net)


def optimal_aggregate(dep: Deployment, table: LinkGainTable, radio: RadioConfig,
                      guard: int = DEFAULT_GUARD) -> OracleResult:
    """All joint actions maximizing total throughput (ties within 1e-9)."""
    return _search(dep, table, radio, guard,
                   lambda tput: tput.sum(axis=1), AGGREGATE)


def optimal_proportional_fairness(dep: Deployment, table: LinkGainTable,
                                  radio: RadioConfig,
                                  guard: int = DEFAULT_GUARD) -> OracleResult:
    """All joint actions maximizing the log-throughput sum.

    Joint actions that silence any network (zero throughput) score -inf
    and can never be maximizers; if every joint action does so there is no
    finite optimum and :class:`NoFiniteOptimumError` is raised.
    """
    def pf(tput):
        vals = np.log(np.maximum(tput, 1e-300)).sum(axis=1)
        return np.where((tput > 0).all(axis=1), vals, -np.inf)
    return _search(dep, table, radio, guard, pf, PROPORTIONAL_FAIRNESS)

"""Link budget: path loss, interference, SINR and Shannon throughput.

Path loss between an AP and a STA separated by d meters:

    PL(d) = pl0 + 10 * alpha * log10(d) + gs + (d / d_obs) * go      [dB]

where ``gs`` is a shadowing loss and ``go`` an obstacle loss accumulated
every ``d_obs`` meters.  In ``deterministic-means`` mode both take their
mean values on every link; in ``sampled-per-link`` mode each directed
AP_i -> STA_j link draws gs ~ Normal(mean, std) and go ~ Uniform(mean-hw,
mean+hw) once, and the draws stay frozen for the lifetime of the gain
table (the radio environment is stationary within a run).

All SINR arithmetic happens in linear milliwatts; dB only appears at the
interfaces.  A transmitter on an adjacent channel contributes its received
power attenuated by a fixed number of dB per unit of channel separation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import ActionSpace, Deployment, distance

DETERMINISTIC_MEANS = "deterministic-means"
SAMPLED_PER_LINK = "sampled-per-link"


@dataclass(frozen=True)
class PathLossParams:
    pl0_db: float
    alpha_pl: float
    gs_mean_db: float
    go_mean_db: float
    d_obs_m: float
    gs_std_db: float = 0.0
    go_halfwidth_db: float = 0.0
    randomness_mode: str = DETERMINISTIC_MEANS

    def __post_init__(self):
        if self.d_obs_m <= 0:
            raise ValueError("d_obs_m must be positive")
        if self.alpha_pl <= 0:
            raise ValueError("alpha_pl must be positive")
        if self.gs_std_db < 0 or self.go_halfwidth_db < 0:
            raise ValueError("spreads must be non-negative")
        if self.randomness_mode not in (DETERMINISTIC_MEANS, SAMPLED_PER_LINK):
            raise ValueError(f"unknown randomness_mode {self.randomness_mode!r}")


@dataclass(frozen=True)
class RadioConfig:
    bandwidth_hz: float
    noise_dbm: float
    adjacent_leakage_db_per_channel: float = 20.0

    def __post_init__(self):
        if self.bandwidth_hz <= 0:
            raise ValueError("bandwidth_hz must be positive")
        if self.adjacent_leakage_db_per_channel < 0:
            raise ValueError("adjacent_leakage_db_per_channel must be non-negative")

    @property
    def noise_mw(self) -> float:
        return dbm_to_mw(self.noise_dbm)


def dbm_to_mw(x: float) -> float:
    return 10.0 ** (x / 10.0)


def mw_to_dbm(p: float) -> float:
    if p <= 0:
        raise ValueError("power must be positive to express in dBm")
    return 10.0 * math.log10(p)


def path_loss_db(d: float, params: PathLossParams, gs: float, go: float) -> float:
    """Log-distance path loss with explicit shadowing/obstacle draws."""
    if d <= 0:
        raise ValueError("co-located transceivers: distance must be positive")
    return params.pl0_db + 10.0 * params.alpha_pl * math.log10(d) + gs + (d / params.d_obs_m) * go


class LinkGainTable:
    """Frozen per-link losses: ``gain_db[i, j]`` is the dB loss from the AP
    of network i+1 to the STA of network j+1 (0-based array indexing)."""

    def __init__(self, gain_db: np.ndarray):
        gain_db = np.asarray(gain_db, dtype=float)
        if gain_db.ndim != 2 or gain_db.shape[0] != gain_db.shape[1]:
            raise ValueError("gain table must be square")
        if not np.isfinite(gain_db).all():
            raise ValueError("gain table entries must be finite")
        gain_db = gain_db.copy()
        gain_db.flags.writeable = False
        self.gain_db = gain_db

    @property
    def n_networks(self) -> int:
        return self.gain_db.shape[0]


def build_link_gain_table(dep: Deployment, params: PathLossParams,
                          rng: np.random.Generator | None = None) -> LinkGainTable:
    """Draw (or fix at their means) the per-link losses for one run.

    In sampled mode the draws are consumed in a fixed order: one (n, n)
    block of shadowing normals, then one (n, n) block of obstacle uniforms.
    """
    n = dep.n_networks
    if params.randomness_mode == SAMPLED_PER_LINK:
        if rng is None:
            raise ValueError("sampled-per-link mode needs a random generator")
        gs = rng.normal(params.gs_mean_db, params.gs_std_db, size=(n, n))
        go = rng.uniform(params.go_mean_db - params.go_halfwidth_db,
                         params.go_mean_db + params.go_halfwidth_db, size=(n, n))
    else:
        gs = np.full((n, n), params.gs_mean_db)
        go = np.full((n, n), params.go_mean_db)
    gain = np.empty((n, n))
    for i, wi in enumerate(dep.networks):
        for j, wj in enumerate(dep.networks):
            d = distance(wi.ap_position, wj.sta_position)
            gain[i, j] = path_loss_db(d, params, gs[i, j], go[i, j])
    return LinkGainTable(gain)


def received_power_mw(tx_dbm: float, gain_db: float, leakage_db: float = 0.0) -> float:
    return dbm_to_mw(tx_dbm - gain_db - leakage_db)


def interference_mw(j: int, joint: tuple[int, ...], table: LinkGainTable,
                    radio: RadioConfig, space: ActionSpace) -> float:
    """Total interference power at the STA of network ``j`` (1-based id).

    Every foreign AP contributes as if continuously transmitting; a
    transmitter ``c`` channels away is attenuated by ``c`` times the
    configured adjacent-channel leakage.
    """
    if len(joint) != table.n_networks:
        raise ValueError("joint action length must match the number of networks")
    ch_j = space.action_from_index(joint[j - 1]).channel
    leak = radio.adjacent_leakage_db_per_channel
    total = 0.0
    for i in range(1, table.n_networks + 1):
        if i == j:
            continue
        a = space.action_from_index(joint[i - 1])
        total += received_power_mw(a.tx_power_dbm, table.gain_db[i - 1, j - 1],
                                   leak * abs(a.channel - ch_j))
    return total


def sinr_linear(p_mw: float, i_mw: float, n_mw: float) -> float:
    if n_mw <= 0:
        raise ValueError("noise power must be positive")
    if p_mw < 0 or i_mw < 0:
        raise ValueError("powers must be non-negative")
    return p_mw / (i_mw + n_mw)


def shannon_throughput_bps(radio: RadioConfig, sinr: float) -> float:
    if sinr < 0:
        raise ValueError("SINR must be non-negative")
    return radio.bandwidth_hz * math.log2(1.0 + sinr)


def throughput_bps(j: int, joint: tuple[int, ...], table: LinkGainTable,
                   radio: RadioConfig, space: ActionSpace) -> float:
    """Shannon throughput of network ``j`` under a joint action (1-based)."""
    a = space.action_from_index(joint[j - 1])
    signal = received_power_mw(a.tx_power_dbm, table.gain_db[j - 1, j - 1])
    interf = interference_mw(j, joint, table, radio, space)
    return shannon_throughput_bps(radio, sinr_linear(signal, interf, radio.noise_mw))


def max_throughput_bps(i: int, table: LinkGainTable, radio: RadioConfig,
                       space: ActionSpace) -> float:
    """Interference-free throughput ceiling at maximum transmit power."""
    p_max = max(space.power_levels_dbm)
    signal = received_power_mw(p_max, table.gain_db[i - 1, i - 1])
    return shannon_throughput_bps(radio, sinr_linear(signal, 0.0, radio.noise_mw))


class ThroughputTables:
    """Precomputed lookup tables for fast joint-action evaluation.

    ``signal_mw[j][k]``: received own-link power at STA j+1 when it plays
    action k.  ``contrib_mw[i][j][ki * (K+1) + kj]``: interference at STA
    j+1 from AP i+1 when they play ki and kj.  Index 0 is unused padding so
    the 1-based action indices can be used directly.
    """

    def __init__(self, table: LinkGainTable, radio: RadioConfig, space: ActionSpace):
        n, K = table.n_networks, space.size
        leak = radio.adjacent_leakage_db_per_channel
        acts = [None] + space.actions()
        self.n_networks, self.size = n, K
        self.noise_mw = radio.noise_mw
        self.bandwidth_hz = radio.bandwidth_hz
        self.signal_mw = [
            [0.0] + [received_power_mw(acts[k].tx_power_dbm, table.gain_db[j, j])
                     for k in range(1, K + 1)]
            for j in range(n)
        ]
        self.contrib_mw = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                flat = [0.0] * ((K + 1) * (K + 1))
                for ki in range(1, K + 1):
                    for kj in range(1, K + 1):
                        flat[ki * (K + 1) + kj] = received_power_mw(
                            acts[ki].tx_power_dbm, table.gain_db[i, j],
                            leak * abs(acts[ki].channel - acts[kj].channel))
                self.contrib_mw[i][j] = tuple(flat)
        self.max_throughput_bps = [max_throughput_bps(i, table, radio, space)
                                   for i in range(1, n + 1)]

    def throughput_bps(self, j: int, joint) -> float:
        """Same value as :func:`throughput_bps`, from the lookup tables."""
        kj = joint[j - 1]
        stride = self.size + 1
        interf = 0.0
        for i in range(self.n_networks):
            if i != j - 1:
                interf += self.contrib_mw[i][j - 1][joint[i] * stride + kj]
        return self.bandwidth_hz * math.log2(
            1.0 + self.signal_mw[j - 1][kj] / (interf + self.noise_mw))

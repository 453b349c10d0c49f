"""One agent: a stateless Q table with epsilon-greedy action selection.

The table maps action indices directly to discounted value estimates; the
update bootstraps on the table's own maximum (the single state is its own
successor):

    q[k] <- q[k] + alpha * (r + gamma * max(q) - q[k])

with ``max(q)`` taken over the whole table before the write.  Exploration
follows eps_t = min(1, eps0 / sqrt(t)) for iterations t = 1, 2, ...
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LearnerConfig:
    """Learning rate, discount and initial exploration.

    gamma = 1.0 is allowed as a boundary case: value estimates then drift
    upward with run length instead of converging, which is itself a regime
    worth simulating; the [0, 1/(1-gamma)] bound applies for gamma < 1.
    """

    alpha: float
    gamma: float
    eps0: float

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must be in [0, 1], got {self.gamma}")
        if not 0.0 <= self.eps0 <= 1.0:
            raise ValueError(f"eps0 must be in [0, 1], got {self.eps0}")


def epsilon_at(t: int, eps0: float) -> float:
    """Exploration probability at iteration t >= 1 (non-increasing in t)."""
    if t < 1:
        raise ValueError(f"iterations are counted from 1, got t={t}")
    return min(1.0, eps0 / math.sqrt(t))


class QTable:
    """Per-action value estimates, zero-initialised."""

    def __init__(self, n_actions: int):
        if n_actions < 1:
            raise ValueError("need at least one action")
        self.q: list[float] = [0.0] * n_actions

    @property
    def n_actions(self) -> int:
        return len(self.q)

    def values(self) -> np.ndarray:
        return np.array(self.q)

    def update(self, k: int, r: float, cfg: LearnerConfig) -> None:
        """Apply one value update for 1-based action index ``k``.

        Rewards outside [0, 1] are rejected: the reward is a throughput
        fraction and values beyond that range indicate a bug upstream.
        """
        if not 1 <= k <= len(self.q):
            raise IndexError(f"action index {k} outside 1..{len(self.q)}")
        if not 0.0 <= r <= 1.0:
            raise ValueError(f"reward {r} outside [0, 1]")
        q = self.q
        m = max(q)
        q[k - 1] += cfg.alpha * (r + cfg.gamma * m - q[k - 1])


def select_action(qtable: QTable, eps: float, rng: np.random.Generator) -> int:
    """Epsilon-greedy selection; returns a 1-based action index.

    Always consumes exactly three uniform draws from ``rng`` in a fixed
    order -- explore/exploit coin, uniform action, tie breaker -- so a
    pre-drawn block of uniforms reproduces the same choices bit for bit.
    Argmax ties are broken uniformly at random.
    """
    coin, u_act, u_tie = rng.random(3)
    return _select_from_draws(qtable.q, eps, coin, u_act, u_tie)


def _select_from_draws(q: list[float], eps: float, coin: float, u_act: float,
                       u_tie: float, max_q: float | None = None) -> int:
    # max_q lets a caller that already knows max(q) skip recomputing it
    if coin < eps:
        return int(u_act * len(q)) + 1
    m = max(q) if max_q is None else max_q
    count = q.count(m)
    if count == 1:
        return q.index(m) + 1
    pick = int(u_tie * count)
    pos = -1
    for _ in range(pick + 1):
        pos = q.index(m, pos + 1)
    return pos + 1

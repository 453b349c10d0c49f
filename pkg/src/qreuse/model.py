"""Deployment geometry and the shared (channel, transmit power) action space.

Every network is one access point (AP) transmitting downlink to one
station (STA).  All agents share a single action space: the cross product
of channels and transmit power levels, indexed 1..K with the channel
varying fastest, i.e. for 2 channels and powers (5, 10, 15, 20) dBm the
order is {1,5}, {2,5}, {1,10}, {2,10}, {1,15}, {2,15}, {1,20}, {2,20}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Point3D:
    x: float
    y: float
    z: float

    def __post_init__(self):
        for v in (self.x, self.y, self.z):
            if not math.isfinite(v):
                raise ValueError(f"non-finite coordinate in {(self.x, self.y, self.z)}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


def distance(p: Point3D, q: Point3D) -> float:
    """Euclidean distance in meters."""
    return math.dist(p.as_tuple(), q.as_tuple())


@dataclass(frozen=True)
class WirelessNetwork:
    """One AP->STA pair acting as a single learning agent."""

    id: int
    ap_position: Point3D
    sta_position: Point3D


@dataclass(frozen=True)
class Action:
    channel: int
    tx_power_dbm: float


@dataclass(frozen=True)
class ActionSpace:
    """Indexed (channel, power) pairs; index 1..K, channel fastest."""

    n_channels: int
    power_levels_dbm: tuple[float, ...]

    def __post_init__(self):
        if self.n_channels < 1:
            raise ValueError("need at least one channel")
        if not self.power_levels_dbm:
            raise ValueError("power level set must be non-empty")
        levels = tuple(float(p) for p in self.power_levels_dbm)
        if len(set(levels)) != len(levels):
            raise ValueError(f"duplicate power levels in {levels}")
        object.__setattr__(self, "power_levels_dbm", levels)

    @property
    def size(self) -> int:
        return self.n_channels * len(self.power_levels_dbm)

    def action_from_index(self, k: int) -> Action:
        if not 1 <= k <= self.size:
            raise IndexError(f"action index {k} outside 1..{self.size}")
        channel = (k - 1) % self.n_channels + 1
        power = self.power_levels_dbm[(k - 1) // self.n_channels]
        return Action(channel, power)

    def index_from_action(self, a: Action) -> int:
        if not 1 <= a.channel <= self.n_channels:
            raise ValueError(f"channel {a.channel} outside 1..{self.n_channels}")
        try:
            p = self.power_levels_dbm.index(float(a.tx_power_dbm))
        except ValueError:
            raise ValueError(
                f"power {a.tx_power_dbm} dBm not in {self.power_levels_dbm}") from None
        return p * self.n_channels + a.channel

    def actions(self) -> list[Action]:
        return [self.action_from_index(k) for k in range(1, self.size + 1)]


@dataclass(frozen=True)
class Deployment:
    """Static world: map bounds, the networks, and the shared action space."""

    map_dims: tuple[float, float, float]
    networks: tuple[WirelessNetwork, ...]
    action_space: ActionSpace

    def __post_init__(self):
        object.__setattr__(self, "map_dims", tuple(float(v) for v in self.map_dims))
        object.__setattr__(self, "networks", tuple(self.networks))
        if not self.networks:
            raise ValueError("deployment needs at least one network")
        ids = [w.id for w in self.networks]
        if ids != list(range(1, len(ids) + 1)):
            raise ValueError(f"network ids must be contiguous from 1, got {ids}")
        for w in self.networks:
            for p in (w.ap_position, w.sta_position):
                if not all(0 <= v <= d for v, d in zip(p.as_tuple(), self.map_dims)):
                    raise ValueError(f"network {w.id}: position {p} outside map {self.map_dims}")

    @property
    def n_networks(self) -> int:
        return len(self.networks)


#: Default AP grid: two rows 0.6 m apart in z, 5 m apart in x, at mid height.
#: Each STA sits sqrt(2) m from its AP, offset diagonally away from the map
#: centre so stations are as far from the foreign networks as the grid allows.
#: The tight row spacing makes channel sharing between z-neighbours expensive,
#: which is what gives the exhaustive optima their power-sacrifice structure.
_DEFAULT_AP_XZ = ((2.5, 4.7), (7.5, 4.7), (2.5, 5.3), (7.5, 5.3))


def build_default_deployment(n_channels: int = 2,
                             power_levels_dbm: tuple[float, ...] = (5.0, 10.0, 15.0, 20.0),
                             ) -> Deployment:
    """Four-network dense grid on a 10 x 5 x 10 m map.

    The layout is symmetric under both map reflections (x -> 10-x swapping
    networks 1<->2 and 3<->4, z -> 10-z swapping 1<->3 and 2<->4), so any
    purely geometric per-network quantity is equal across networks.
    """
    map_dims = (10.0, 5.0, 10.0)
    y = 2.5
    networks = []
    for i, (x, z) in enumerate(_DEFAULT_AP_XZ, start=1):
        sx = 1.0 if x > 5.0 else -1.0
        sz = 1.0 if z > 5.0 else -1.0
        networks.append(WirelessNetwork(
            id=i,
            ap_position=Point3D(x, y, z),
            sta_position=Point3D(x + sx, y, z + sz),
        ))
    dep = Deployment(
        map_dims=map_dims,
        networks=tuple(networks),
        action_space=ActionSpace(n_channels, tuple(power_levels_dbm)),
    )
    for w in dep.networks:
        assert abs(distance(w.ap_position, w.sta_position) - math.sqrt(2)) < 1e-9
    return dep

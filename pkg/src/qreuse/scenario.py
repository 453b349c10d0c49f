"""Scenario files: the editable description of one simulated world.

A scenario bundles the map, the networks (explicit coordinates, or the
default grid when omitted), the action space and all link-budget
parameters.  Files are YAML; the bundled ``default`` scenario ships with
the package and `load_scenario` accepts either a path or the name of a
bundled scenario.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import yaml

from .channel import DETERMINISTIC_MEANS, SAMPLED_PER_LINK, PathLossParams, RadioConfig
from .model import (
    ActionSpace,
    Deployment,
    Point3D,
    WirelessNetwork,
    build_default_deployment,
)


@dataclass(frozen=True)
class Scenario:
    name: str
    deployment: Deployment
    path_loss: PathLossParams
    radio: RadioConfig

    def with_randomness_mode(self, mode: str) -> "Scenario":
        if mode not in (DETERMINISTIC_MEANS, SAMPLED_PER_LINK):
            raise ValueError(f"unknown randomness_mode {mode!r}")
        pl = PathLossParams(
            pl0_db=self.path_loss.pl0_db, alpha_pl=self.path_loss.alpha_pl,
            gs_mean_db=self.path_loss.gs_mean_db, go_mean_db=self.path_loss.go_mean_db,
            d_obs_m=self.path_loss.d_obs_m, gs_std_db=self.path_loss.gs_std_db,
            go_halfwidth_db=self.path_loss.go_halfwidth_db, randomness_mode=mode,
        )
        return Scenario(self.name, self.deployment, pl, self.radio)


class ScenarioError(ValueError):
    """A scenario file is missing keys or holds invalid values."""


def _require(mapping: dict, key: str, where: str):
    if key not in mapping:
        raise ScenarioError(f"{where}: missing required key {key!r}")
    return mapping[key]


def scenario_from_dict(raw: dict, name: str = "scenario") -> Scenario:
    if not isinstance(raw, dict):
        raise ScenarioError(f"{name}: top level must be a mapping")
    map_dims = tuple(float(v) for v in _require(raw, "map_dims", name))
    if len(map_dims) != 3:
        raise ScenarioError(f"{name}: map_dims must have three entries")
    space = ActionSpace(
        n_channels=int(_require(raw, "n_channels", name)),
        power_levels_dbm=tuple(float(p) for p in _require(raw, "power_levels_dbm", name)),
    )

    if "networks" in raw and raw["networks"]:
        networks = []
        for k, net in enumerate(raw["networks"], start=1):
            where = f"{name}: networks[{k}]"
            networks.append(WirelessNetwork(
                id=int(net.get("id", k)),
                ap_position=Point3D(*[float(v) for v in _require(net, "ap", where)]),
                sta_position=Point3D(*[float(v) for v in _require(net, "sta", where)]),
            ))
        deployment = Deployment(map_dims, tuple(networks), space)
    else:
        base = build_default_deployment(space.n_channels, space.power_levels_dbm)
        deployment = Deployment(map_dims, base.networks, space)

    pl_raw = _require(raw, "path_loss", name)
    where = f"{name}: path_loss"
    path_loss = PathLossParams(
        pl0_db=float(_require(pl_raw, "pl0_db", where)),
        alpha_pl=float(_require(pl_raw, "alpha_pl", where)),
        gs_mean_db=float(_require(pl_raw, "gs_mean_db", where)),
        go_mean_db=float(_require(pl_raw, "go_mean_db", where)),
        d_obs_m=float(_require(pl_raw, "d_obs_m", where)),
        gs_std_db=float(pl_raw.get("gs_std_db", 0.0)),
        go_halfwidth_db=float(pl_raw.get("go_halfwidth_db", 0.0)),
        randomness_mode=str(pl_raw.get("randomness_mode", DETERMINISTIC_MEANS)),
    )

    radio_raw = _require(raw, "radio", name)
    where = f"{name}: radio"
    radio = RadioConfig(
        bandwidth_hz=float(_require(radio_raw, "bandwidth_hz", where)),
        noise_dbm=float(_require(radio_raw, "noise_dbm", where)),
        adjacent_leakage_db_per_channel=float(
            radio_raw.get("adjacent_leakage_db_per_channel", 20.0)),
    )
    return Scenario(name=name, deployment=deployment, path_loss=path_loss, radio=radio)


def load_scenario(source: str | Path) -> Scenario:
    """Load a scenario from a YAML file path or a bundled name ('default')."""
    bundled = resources.files("qreuse").joinpath(f"data/{source}_scenario.yaml")
    if isinstance(source, str) and "/" not in source and not source.endswith(".yaml") \
            and bundled.is_file():
        raw = yaml.safe_load(bundled.read_text())
        return scenario_from_dict(raw, name=str(source))
    path = Path(source)
    if not path.is_file():
        raise ScenarioError(f"scenario file not found: {source}")
    try:
        raw = yaml.safe_load(path.read_text())
    except yaml.YAMLError as exc:
        raise ScenarioError(f"{path}: not valid YAML ({exc})") from exc
    try:
        return scenario_from_dict(raw, name=path.stem)
    except ScenarioError:
        raise
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"{path}: {exc}") from exc

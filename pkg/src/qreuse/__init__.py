"""Decentralized stateless Q-learning for wireless spatial reuse.

Coexisting AP/STA pairs repeatedly pick (channel, transmit power) actions,
observe their normalized Shannon throughput, and learn selfishly; an
exhaustive oracle provides the true aggregate and proportional-fairness
optima for comparison.
"""

from .arena import (
    SimulationTrace,
    WindowMetrics,
    compute_reward,
    load_trace,
    run_episode,
    save_trace,
    window_metrics,
)
from .channel import (
    DETERMINISTIC_MEANS,
    SAMPLED_PER_LINK,
    LinkGainTable,
    PathLossParams,
    RadioConfig,
    ThroughputTables,
    build_link_gain_table,
    dbm_to_mw,
    interference_mw,
    max_throughput_bps,
    mw_to_dbm,
    path_loss_db,
    shannon_throughput_bps,
    sinr_linear,
    throughput_bps,
)
from .learner import LearnerConfig, QTable, epsilon_at, select_action
from .model import (
    Action,
    ActionSpace,
    Deployment,
    Point3D,
    WirelessNetwork,
    build_default_deployment,
    distance,
)
from .oracle import (
    NoFiniteOptimumError,
    OracleResult,
    SearchSpaceTooLarge,
    enumerate_joint,
    optimal_aggregate,
    optimal_proportional_fairness,
)
from .scenario import Scenario, ScenarioError, load_scenario, scenario_from_dict
from .sweep import (
    CellStats,
    EpisodeStats,
    OraclePair,
    SweepResult,
    SweepSpec,
    cells_from_grid,
    episode_seed,
    load_sweep_result,
    load_sweep_spec,
    report,
    run_sweep,
    save_sweep,
    shared_gains_table,
    solve_oracles,
)

__all__ = [name for name in dir() if not name.startswith("_")]

"""Seeded agent-based simulator of belief dynamics and source-reliability trust.

Agents revise a credence in a binary hypothesis from partially reliable
reports (world data and neighbor assertions on a small-world graph) and,
optionally, revise their per-source reliability estimates from the same
reports. The package bundles the pure update rules, a deterministic
batch engine, scoring/aggregation, experiment presets, and a bit-stable
CSV pipeline.
"""

from ._version import __version__
from .config import config_to_dict, parse_config, read_config_file
from .engine import (
    CONDITION_SPECS,
    DEFAULT_CONDITIONS,
    SimConfig,
    Trajectory,
    TrustPrior,
    communication_phase,
    init_state,
    inquiry_phase,
    run,
    run_batch,
)
from .errors import (
    ConfigError,
    DegenerateDistributionError,
    EpitrustError,
    ParameterError,
    UnknownSourceError,
)
from .experiments import PRESETS, ExperimentPreset, execute_cells, run_preset
from .metrics import (
    AggregateSeries,
    BatchAggregator,
    StepStats,
    absolute_error,
    aggregate,
    brier,
    step_stats,
    trajectory_step_stats,
)
from .model import (
    CLAIM_H,
    CLAIM_NOT_H,
    WORLD,
    AgentState,
    Claim,
    FixedTrust,
    Report,
    TrustGrid,
    TrustModel,
    decide_assertion,
    expected_trust,
    is_degenerate_update,
    make_agent,
    make_beta_grid,
    outcome_posterior,
    receive_report,
    update_belief,
    update_trust_grid,
)
from .topology import (
    Graph,
    edges,
    empty_graph,
    format_edge_list,
    is_connected,
    neighbors,
    ring_lattice,
    watts_strogatz,
)

__all__ = [
    "__version__",
    "AgentState",
    "AggregateSeries",
    "BatchAggregator",
    "CLAIM_H",
    "CLAIM_NOT_H",
    "CONDITION_SPECS",
    "Claim",
    "ConfigError",
    "DEFAULT_CONDITIONS",
    "DegenerateDistributionError",
    "EpitrustError",
    "ExperimentPreset",
    "FixedTrust",
    "Graph",
    "PRESETS",
    "ParameterError",
    "Report",
    "SimConfig",
    "StepStats",
    "Trajectory",
    "TrustGrid",
    "TrustModel",
    "TrustPrior",
    "UnknownSourceError",
    "WORLD",
    "absolute_error",
    "aggregate",
    "brier",
    "communication_phase",
    "config_to_dict",
    "decide_assertion",
    "edges",
    "empty_graph",
    "execute_cells",
    "expected_trust",
    "format_edge_list",
    "init_state",
    "inquiry_phase",
    "is_connected",
    "is_degenerate_update",
    "make_agent",
    "make_beta_grid",
    "neighbors",
    "outcome_posterior",
    "parse_config",
    "read_config_file",
    "receive_report",
    "ring_lattice",
    "run",
    "run_batch",
    "run_preset",
    "step_stats",
    "trajectory_step_stats",
    "update_belief",
    "update_trust_grid",
    "watts_strogatz",
]

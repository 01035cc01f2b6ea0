"""Deterministic seeded scheduler: inquiry and communication over agent populations.

One run executes ``steps`` rounds of (inquiry phase, communication phase)
for every requested condition over the same world. Conditions are the
2x2 of {communicating, silent} x {trust-updating, fixed-trust}, plus an
``Optimal`` silent fixed-trust agent whose trust equals the true data
reliability.

Seeding scheme
--------------
All randomness flows from ``numpy.random.SeedSequence(master_seed,
spawn_key=(run_index, purpose))`` where ``purpose`` separates the graph,
the truth draw, the communication coins, and the evidence streams. Value
streams are drawn as (steps, n_agents) uniform arrays indexed positionally
by (step, agent), so every draw is a pure function of
(master_seed, run_index, purpose, step, agent): adding or removing
conditions never perturbs the evidence, and matched conditions see
identical data. Under ``evidence_sharing="per-pair"`` the two updater
conditions share one evidence purpose, the two fixed-trust conditions a
second, and Optimal a third; under ``"all-conditions"`` (default) every
condition shares one.

Distinct runs share no mutable state and may execute concurrently; the
batch runner emits results ordered by run index either way.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

from .errors import ConfigError
from .model import (
    CLAIM_H,
    CLAIM_NOT_H,
    WORLD,
    AgentState,
    FixedTrust,
    Report,
    TrustModel,
    UpdateDiagnostics,
    expected_trust,
    make_agent,
    make_beta_grid,
    receive_report,
)
from .topology import Graph, empty_graph, is_connected, watts_strogatz

# spawn_key purpose slots
_SK_GRAPH = 0
_SK_TRUTH = 1
_SK_COMM = 2
_SK_EVIDENCE = 3  # + evidence group offset


@dataclass(frozen=True)
class ConditionSpec:
    """Behavior flags for one condition name."""

    communicates: bool
    updates_trust: bool
    trust_from_p_obj: bool = False


CONDITION_SPECS: dict[str, ConditionSpec] = {
    "NetworkUpdater": ConditionSpec(communicates=True, updates_trust=True),
    "NetworkFixed": ConditionSpec(communicates=True, updates_trust=False),
    "ShadowUpdater": ConditionSpec(communicates=False, updates_trust=True),
    "ShadowFixed": ConditionSpec(communicates=False, updates_trust=False),
    "Optimal": ConditionSpec(communicates=False, updates_trust=False, trust_from_p_obj=True),
}

DEFAULT_CONDITIONS = ("NetworkUpdater", "NetworkFixed", "ShadowUpdater", "ShadowFixed")

# evidence stream group per condition under the per-pair sharing regime
_PAIR_GROUP = {
    "NetworkUpdater": 0,
    "ShadowUpdater": 0,
    "NetworkFixed": 1,
    "ShadowFixed": 1,
    "Optimal": 2,
}


@dataclass(frozen=True)
class TrustPrior:
    """Initial trust for every source.

    Trust-updating conditions start from the beta density (as a grid)
    when ``kind`` is ``"beta"``; fixed-trust conditions always pin trust
    at ``p``. The defaults pair a Beta(2, 1) updater prior with a pinned
    0.66, two separate knobs that roughly agree. With ``kind="fixed"``
    every condition pins trust at ``p``.
    """

    kind: str  # "beta" | "fixed"
    alpha: float = 2.0
    beta: float = 1.0
    p: float = 0.66

    def expected(self) -> float:
        if self.kind == "beta":
            return self.alpha / (self.alpha + self.beta)
        return self.p


@dataclass(frozen=True)
class SimConfig:
    """Full parameterization of one reproducible experiment."""

    p_obj: float
    truth_mode: str = "fixed-true"  # "fixed-true" | "sampled"
    base_rate: float = 0.5
    prior_belief: Union[float, str] = 0.5  # a probability or "base-rate"
    trust_prior: TrustPrior = TrustPrior("beta", 2.0, 1.0)
    assertion_threshold: float = 0.8
    comm_prob: float = 0.25
    inquiry_prob: float = 0.1
    n_agents: int = 50
    k: int = 2
    p_rewire: float = 0.2
    steps: int = 50
    runs: int = 100
    master_seed: int = 0
    grid_resolution: int = 1000
    conditions: tuple[str, ...] = DEFAULT_CONDITIONS
    evidence_sharing: str = "all-conditions"  # "all-conditions" | "per-pair"

    def validate(self) -> "SimConfig":
        def prob(value, key):
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ConfigError(f"config key '{key}': expected a number, got {value!r}")
            if not 0.0 <= float(value) <= 1.0:
                raise ConfigError(f"config key '{key}': {value!r} outside [0, 1]")

        prob(self.p_obj, "p_obj")
        prob(self.base_rate, "base_rate")
        prob(self.comm_prob, "comm_prob")
        prob(self.inquiry_prob, "inquiry_prob")
        prob(self.p_rewire, "topology.p_rewire")
        if self.truth_mode not in ("fixed-true", "sampled"):
            raise ConfigError(
                f"config key 'truth_mode': must be 'fixed-true' or 'sampled', got {self.truth_mode!r}"
            )
        if isinstance(self.prior_belief, str):
            if self.prior_belief != "base-rate":
                raise ConfigError(
                    f"config key 'prior_belief': must be a probability or 'base-rate', got {self.prior_belief!r}"
                )
        else:
            prob(self.prior_belief, "prior_belief")
        if not 0.5 < float(self.assertion_threshold) <= 1.0:
            raise ConfigError(
                f"config key 'assertion_threshold': {self.assertion_threshold!r} outside (0.5, 1]"
            )
        if self.trust_prior.kind not in ("beta", "fixed"):
            raise ConfigError(
                f"config key 'trust_prior.kind': must be 'beta' or 'fixed', got {self.trust_prior.kind!r}"
            )
        if self.trust_prior.kind == "beta":
            if not (self.trust_prior.alpha > 0 and self.trust_prior.beta > 0):
                raise ConfigError("config key 'trust_prior': beta shapes must be positive")
        prob(self.trust_prior.p, "trust_prior.p")
        if self.n_agents < 1:
            raise ConfigError(f"config key 'n_agents': must be >= 1, got {self.n_agents}")
        if self.steps < 0:
            raise ConfigError(f"config key 'steps': must be >= 0, got {self.steps}")
        if self.runs < 1:
            raise ConfigError(f"config key 'runs': must be >= 1, got {self.runs}")
        if not 0 <= self.master_seed < 2**64:
            raise ConfigError(
                f"config key 'master_seed': must be an unsigned 64-bit integer, got {self.master_seed}"
            )
        if self.grid_resolution < 2:
            raise ConfigError(
                f"config key 'grid_resolution': must be >= 2, got {self.grid_resolution}"
            )
        if self.k < 0 or self.k % 2 != 0:
            raise ConfigError(f"config key 'topology.k': must be a non-negative even count, got {self.k}")
        if not self.conditions:
            raise ConfigError("config key 'conditions': at least one condition is required")
        seen = set()
        for name in self.conditions:
            if name not in CONDITION_SPECS:
                raise ConfigError(
                    f"config key 'conditions': unknown condition {name!r}; "
                    f"valid names: {', '.join(sorted(CONDITION_SPECS))}"
                )
            if name in seen:
                raise ConfigError(f"config key 'conditions': duplicate condition {name!r}")
            seen.add(name)
        if self.evidence_sharing not in ("all-conditions", "per-pair"):
            raise ConfigError(
                "config key 'evidence_sharing': must be 'all-conditions' or 'per-pair', "
                f"got {self.evidence_sharing!r}"
            )
        if self._needs_graph():
            if self.n_agents < 3:
                raise ConfigError(
                    "config key 'n_agents': communicating conditions need at least 3 agents"
                )
            if not 2 <= self.k < self.n_agents:
                raise ConfigError(
                    f"config key 'topology.k': must satisfy 2 <= k < n_agents, got k={self.k}"
                )
        return self

    def _needs_graph(self) -> bool:
        return any(CONDITION_SPECS[c].communicates for c in self.conditions)

    def resolved_prior_belief(self) -> float:
        if self.prior_belief == "base-rate":
            return float(self.base_rate)
        return float(self.prior_belief)


@dataclass(frozen=True)
class RunDiagnostics:
    graph_connected: bool
    degenerate_updates: int


@dataclass(eq=False)
class Trajectory:
    """Per-step, per-agent record of one condition within one run."""

    condition: str
    run_index: int
    truth: bool
    beliefs: np.ndarray  # shape (steps, n_agents)
    world_trust: np.ndarray  # shape (steps, n_agents)
    diagnostics: RunDiagnostics


@dataclass(eq=False)
class SimState:
    """World plus populations for one run; advanced in place by the phases."""

    run_index: int
    graph: Graph
    neighbor_sets: tuple[frozenset[int], ...]
    truth: bool
    populations: dict[str, list[AgentState]]
    occurrence: dict[int, np.ndarray]  # evidence group -> bool (steps, n)
    claims_h: dict[int, np.ndarray]  # evidence group -> bool (steps, n)
    groups: dict[str, int]  # condition -> evidence group
    comm_ok: np.ndarray  # bool (steps, n)
    diagnostics: dict[str, UpdateDiagnostics]
    graph_connected: bool


def _generator(master_seed: int, run_index: int, purpose: int) -> np.random.Generator:
    ss = np.random.SeedSequence(master_seed, spawn_key=(run_index, purpose))
    return np.random.Generator(np.random.PCG64(ss))


def run_graph(config: SimConfig, run_index: int) -> Graph:
    """The communication graph this run uses (edgeless when nobody talks)."""
    if config._needs_graph():
        rng = _generator(config.master_seed, run_index, _SK_GRAPH)
        return watts_strogatz(config.n_agents, config.k, config.p_rewire, rng)
    return empty_graph(config.n_agents)


def _prior_model(spec: ConditionSpec, config: SimConfig) -> TrustModel:
    if spec.trust_from_p_obj:
        return FixedTrust(config.p_obj)
    prior = config.trust_prior
    if spec.updates_trust and prior.kind == "beta":
        return make_beta_grid(prior.alpha, prior.beta, config.grid_resolution)
    return FixedTrust(prior.p)


def init_state(config: SimConfig, run_index: int, *, negate_claims: bool = False) -> SimState:
    """Seeded initial state: graph, truth, streams, and fresh populations.

    ``negate_claims`` flips every sampled world claim, which realizes the
    evidence stream of the mirrored reliability 1 - p_obj as the exact
    claim-wise negation of this run's stream (used by symmetry checks).
    """
    config.validate()
    n, steps = config.n_agents, config.steps
    graph = run_graph(config, run_index)
    if config.truth_mode == "fixed-true":
        truth = True
    else:
        truth = bool(_generator(config.master_seed, run_index, _SK_TRUTH).random() < config.base_rate)

    if config.evidence_sharing == "per-pair":
        groups = {c: _PAIR_GROUP[c] for c in config.conditions}
    else:
        groups = {c: 0 for c in config.conditions}
    occurrence: dict[int, np.ndarray] = {}
    claims_h: dict[int, np.ndarray] = {}
    for g in sorted(set(groups.values())):
        rng = _generator(config.master_seed, run_index, _SK_EVIDENCE + g)
        occ_u = rng.random((steps, n))
        match_u = rng.random((steps, n))
        occurrence[g] = occ_u < config.inquiry_prob
        matches = match_u < config.p_obj
        claims = matches if truth else ~matches
        if negate_claims:
            claims = ~claims
        claims_h[g] = claims
    comm_ok = _generator(config.master_seed, run_index, _SK_COMM).random((steps, n)) < config.comm_prob

    prior = config.resolved_prior_belief()
    populations: dict[str, list[AgentState]] = {}
    diagnostics: dict[str, UpdateDiagnostics] = {}
    for name in config.conditions:
        spec = CONDITION_SPECS[name]
        model = _prior_model(spec, config)
        agents = []
        for i in range(n):
            trust: dict[int, TrustModel] = {WORLD: model}
            if spec.communicates:
                for j in graph.adjacency[i]:
                    trust[j] = model
            agents.append(make_agent(i, prior, trust, spec.communicates, spec.updates_trust))
        populations[name] = agents
        diagnostics[name] = UpdateDiagnostics()

    return SimState(
        run_index=run_index,
        graph=graph,
        neighbor_sets=tuple(frozenset(a) for a in graph.adjacency),
        truth=truth,
        populations=populations,
        occurrence=occurrence,
        claims_h=claims_h,
        groups=groups,
        comm_ok=comm_ok,
        diagnostics=diagnostics,
        graph_connected=is_connected(graph),
    )


def inquiry_phase(state: SimState, config: SimConfig, step: int) -> SimState:
    """Deliver this step's world data to each population."""
    for name, pop in state.populations.items():
        g = state.groups[name]
        active = np.nonzero(state.occurrence[g][step])[0]
        if active.size == 0:
            continue
        claims = state.claims_h[g][step]
        diag = state.diagnostics[name]
        new_pop = list(pop)
        for i in active:
            claim = CLAIM_H if claims[i] else CLAIM_NOT_H
            new_pop[i] = receive_report(new_pop[i], Report(WORLD, claim), diagnostics=diag)
        state.populations[name] = new_pop
    return state


def communication_phase(state: SimState, config: SimConfig, step: int) -> SimState:
    """Synchronous broadcast wave within each communicating population.

    Stage 1 collects assertions from start-of-stage beliefs: an agent
    whose belief (or its complement) reaches the assertion threshold
    passes a single communication coin to broadcast to all neighbors.
    Stage 2 delivers; each recipient folds its incoming reports in
    ascending sender order. Speakers ignore their own assertions; silent
    populations are untouched.
    """
    threshold = config.assertion_threshold
    comm_ok = state.comm_ok[step]
    for name, pop in state.populations.items():
        if not CONDITION_SPECS[name].communicates:
            continue
        speakers: list[tuple[int, object]] = []
        for agent in pop:  # ascending agent id
            if agent.belief >= threshold:
                claim = CLAIM_H
            elif agent.belief_c >= threshold:
                claim = CLAIM_NOT_H
            else:
                continue
            if comm_ok[agent.id]:
                speakers.append((agent.id, claim))
        if not speakers:
            continue
        diag = state.diagnostics[name]
        new_pop = list(pop)
        for idx, agent in enumerate(new_pop):
            nbrs = state.neighbor_sets[idx]
            for sender, claim in speakers:
                if sender in nbrs:
                    agent = receive_report(agent, Report(sender, claim), diagnostics=diag)
            new_pop[idx] = agent
        state.populations[name] = new_pop
    return state


def run(config: SimConfig, run_index: int, *, negate_claims: bool = False) -> dict[str, Trajectory]:
    """Execute one seeded run; returns one trajectory per condition.

    Beliefs and expected world trust are recorded after each full step
    (inquiry then communication). Fully deterministic given
    (master_seed, run_index).
    """
    state = init_state(config, run_index, negate_claims=negate_claims)
    n, steps = config.n_agents, config.steps
    beliefs = {c: np.empty((steps, n)) for c in config.conditions}
    world_trust = {c: np.empty((steps, n)) for c in config.conditions}
    for t in range(steps):
        state = inquiry_phase(state, config, t)
        state = communication_phase(state, config, t)
        for name, pop in state.populations.items():
            b_row = beliefs[name][t]
            w_row = world_trust[name][t]
            for agent in pop:
                b_row[agent.id] = agent.belief
                w_row[agent.id] = expected_trust(agent.trust[WORLD])
    return {
        name: Trajectory(
            condition=name,
            run_index=run_index,
            truth=state.truth,
            beliefs=beliefs[name],
            world_trust=world_trust[name],
            diagnostics=RunDiagnostics(
                graph_connected=state.graph_connected,
                degenerate_updates=state.diagnostics[name].degenerate_updates,
            ),
        )
        for name in config.conditions
    }


def _batch_worker(args: tuple[SimConfig, int, bool]) -> dict[str, Trajectory]:
    config, run_index, negate = args
    return run(config, run_index, negate_claims=negate)


def run_batch(
    config: SimConfig, n_jobs: int = 1, *, negate_claims: bool = False
) -> Iterator[tuple[int, dict[str, Trajectory]]]:
    """Execute runs 0..runs-1, yielding (run_index, trajectories) in order.

    Each run is sealed under its own sub-seed, so the results are
    identical whatever the degree of concurrency.
    """
    config.validate()
    if n_jobs <= 1:
        for r in range(config.runs):
            yield r, run(config, r, negate_claims=negate_claims)
        return
    chunk = max(1, math.ceil(config.runs / (n_jobs * 4)))
    with ProcessPoolExecutor(max_workers=n_jobs) as pool:
        tasks = ((config, r, negate_claims) for r in range(config.runs))
        for r, out in enumerate(pool.map(_batch_worker, tasks, chunksize=chunk)):
            yield r, out

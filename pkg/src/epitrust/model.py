"""Core update rules: belief revision, trust reweighting, assertion.

An agent holds a credence in a binary hypothesis H and, per source, an
estimate of that source's reliability: the probability the source reports
the truth, with a symmetric likelihood (the same reliability applies to H
and to not-H). A report moves the credence by Bayes rule using the
source's expected reliability. When trust updating is enabled, the
reliability density is first reweighted by how well the report matches
the credence held at arrival, and the credence then moves under the
revised expected reliability (see ``receive_report``).

Reliability densities live on a uniform midpoint grid over (0, 1):
cell i of a grid with resolution R sits at x_i = (i + 0.5) / R, and
integrals are midpoint sums, so a normalized grid satisfies
``density.sum() / resolution == 1``. Midpoints exclude the endpoints,
which keeps beta-shaped densities with shape parameters below one finite.

Numerical note: beliefs are updated through an exact-complement pair
(p, 1 - p) with commutative-symmetric expressions, so a run fed the
negation of every claim produces bitwise-mirrored beliefs instead of
slowly drifting away from the mirror. The scalar entry points below wrap
the same pair arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Optional, Union

import numpy as np

from .errors import DegenerateDistributionError, ParameterError, UnknownSourceError

#: Reserved source id for direct observation of the world. Peer sources use
#: their (non-negative) agent index.
WORLD = -1


def check_probability(value: float, name: str = "value") -> float:
    """Return ``value`` as a float after checking it lies in [0, 1]."""
    p = float(value)
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"{name} must lie in [0, 1], got {value!r}")
    return p


@dataclass(frozen=True)
class Claim:
    """A report's content: ``asserts_h`` is True for H, False for not-H."""

    asserts_h: bool


CLAIM_H = Claim(True)
CLAIM_NOT_H = Claim(False)


@dataclass(frozen=True)
class Report:
    """A claim attributed to a source (``WORLD`` or a peer index)."""

    source: int
    claim: Claim


@dataclass(frozen=True, eq=False)
class TrustGrid:
    """Discretized reliability density on the midpoint grid over (0, 1)."""

    resolution: int
    density: np.ndarray  # shape (resolution,), non-negative, midpoint-normalized


@dataclass(frozen=True)
class FixedTrust:
    """A reliability estimate pinned to a single value; never updated."""

    p: float


TrustModel = Union[FixedTrust, TrustGrid]


@lru_cache(maxsize=None)
def grid_cells(resolution: int) -> tuple[np.ndarray, np.ndarray]:
    """Midpoints x_i and complements 1 - x_i for a given resolution (cached)."""
    x = (np.arange(resolution, dtype=np.float64) + 0.5) / resolution
    xc = 1.0 - x
    x.setflags(write=False)
    xc.setflags(write=False)
    return x, xc


def _freeze_grid(resolution: int, weights: np.ndarray) -> TrustGrid:
    """Normalize non-negative weights to a midpoint density and wrap them."""
    s = float(weights.sum())
    if not np.isfinite(s) or s <= 0.0:
        raise DegenerateDistributionError(
            "trust density has no mass left to normalize"
        )
    density = weights * (resolution / s)
    density.setflags(write=False)
    return TrustGrid(resolution, density)


def make_beta_grid(alpha: float, beta_param: float, resolution: int) -> TrustGrid:
    """Discretize a Beta(alpha, beta_param) density onto the midpoint grid.

    The result is normalized so the midpoint-rule integral equals one,
    which is what every other grid operation expects.
    """
    if not (alpha > 0 and beta_param > 0):
        raise ParameterError(
            f"beta shape parameters must be positive, got ({alpha}, {beta_param})"
        )
    if resolution < 2:
        raise ParameterError(f"grid resolution must be at least 2, got {resolution}")
    x, xc = grid_cells(int(resolution))
    weights = x ** (alpha - 1.0) * xc ** (beta_param - 1.0)
    return _freeze_grid(int(resolution), weights)


def expected_trust(model: TrustModel) -> float:
    """Expected reliability of a trust model (the value Bayes rule uses)."""
    if isinstance(model, FixedTrust):
        return model.p
    x, _ = grid_cells(model.resolution)
    return float(x @ model.density) / model.resolution


def _belief_pair_update(
    p: float, q: float, e_trust: float, asserts_h: bool
) -> Optional[tuple[float, float]]:
    """Advance an exact-complement belief pair by one report.

    Returns None when the posterior is 0/0 (only reachable with a pinned
    trust of exactly 0 or 1 against an extreme belief); callers keep the
    prior in that case. The two numerators are formed symmetrically so
    that swapping (p, q) and negating the claim yields the bitwise-swapped
    result.
    """
    if asserts_h:
        num_p = e_trust * p
        num_q = (1.0 - e_trust) * q
    else:
        num_p = (1.0 - e_trust) * p
        num_q = e_trust * q
    den = num_p + num_q
    if den == 0.0:
        return None
    return num_p / den, num_q / den


def update_belief(belief: float, e_trust: float, claim: Claim) -> float:
    """Posterior credence in H after one report, by Bayes rule.

    For a claim asserting H the posterior is E*P / (E*P + (1-E)*(1-P));
    a claim asserting not-H uses the symmetric likelihood, i.e. E and
    (1-E) swap roles. A 0/0 posterior returns the prior unchanged.
    """
    b = check_probability(belief, "belief")
    e = check_probability(e_trust, "e_trust")
    if e == 0.5:
        return b  # neutral trust is the exact identity, even for subnormal credences
    out = _belief_pair_update(b, 1.0 - b, e, claim.asserts_h)
    if out is None:
        return b
    return out[0]


def is_degenerate_update(belief: float, e_trust: float, claim: Claim) -> bool:
    """True when the report would produce a 0/0 posterior (prior is kept)."""
    return _belief_pair_update(belief, 1.0 - belief, e_trust, claim.asserts_h) is None


def _grid_pair_update(grid: TrustGrid, p: float, q: float, asserts_h: bool) -> TrustGrid:
    """Reweight a reliability density by a report's likelihood profile.

    A cell at reliability x explains a claim asserting H with probability
    x*P + (1-x)*(1-P); asserting not-H swaps x and 1-x. Dividing by the
    evidence probability and renormalizing collapse into the single
    rescale done by ``_freeze_grid``.
    """
    x, xc = grid_cells(grid.resolution)
    if asserts_h:
        weights = (x * p + xc * q) * grid.density
    else:
        weights = (xc * p + x * q) * grid.density
    return _freeze_grid(grid.resolution, weights)


def update_trust_grid(grid: TrustGrid, belief_before: float, claim: Claim) -> TrustGrid:
    """Posterior reliability density after one report.

    ``belief_before`` must be the credence the agent held when the report
    arrived (the same value fed to ``update_belief``).
    """
    b = check_probability(belief_before, "belief_before")
    return _grid_pair_update(grid, b, 1.0 - b, claim.asserts_h)


def decide_assertion(belief: float, threshold: float) -> Optional[Claim]:
    """Claim an agent is willing to assert, or None inside the silence band.

    Belief at or above the threshold asserts H; belief whose complement
    reaches the threshold asserts not-H. Thresholds at or below 0.5 would
    make the two bands overlap and are rejected.
    """
    b = check_probability(belief, "belief")
    t = float(threshold)
    if not 0.5 < t <= 1.0:
        raise ParameterError(
            f"assertion threshold must lie in (0.5, 1], got {threshold!r}"
        )
    if b >= t:
        return CLAIM_H
    if (1.0 - b) >= t:
        return CLAIM_NOT_H
    return None


def outcome_posterior(
    alpha: float, beta_param: float, confirming: int, disconfirming: int
) -> tuple[float, float]:
    """Conjugate count update for reliability learned from known outcomes.

    Returns the posterior shape pair (alpha + confirming,
    beta_param + disconfirming); its mean is alpha' / (alpha' + beta').
    This is the outcome-based baseline: it needs ground truth, unlike the
    belief-based grid update above.
    """
    if not (alpha > 0 and beta_param > 0):
        raise ParameterError(
            f"beta shape parameters must be positive, got ({alpha}, {beta_param})"
        )
    if confirming < 0 or disconfirming < 0:
        raise ParameterError("outcome counts must be non-negative")
    return (alpha + confirming, beta_param + disconfirming)


@dataclass
class UpdateDiagnostics:
    """Mutable counters a caller can thread through report processing."""

    degenerate_updates: int = 0


@dataclass(frozen=True, eq=False)
class AgentState:
    """One agent: credence pair, per-source trust models, strategy flags.

    ``belief_c`` is the exactly-maintained complement of ``belief`` (see
    module docstring); construct instances through ``make_agent`` unless
    you are restoring a recorded pair.
    """

    id: int
    belief: float
    belief_c: float
    trust: dict[int, TrustModel]
    communicates: bool
    updates_trust: bool


def make_agent(
    agent_id: int,
    belief: float,
    trust: dict[int, TrustModel],
    communicates: bool,
    updates_trust: bool,
) -> AgentState:
    b = check_probability(belief, "belief")
    return AgentState(agent_id, b, 1.0 - b, dict(trust), communicates, updates_trust)


def receive_report(
    agent: AgentState,
    report: Report,
    default_model: Optional[TrustModel] = None,
    diagnostics: Optional[UpdateDiagnostics] = None,
) -> AgentState:
    """Process one report: revise trust in the source, then the belief.

    For a trust-updating agent the source's reliability density is first
    reweighted against the belief held when the report arrived; the
    belief then moves under the revised expected reliability. This
    sequencing is what lets a disagreeing source slide toward
    anti-reliability and discount its own report in the same breath,
    which is the mechanism behind stable group splits. Fixed-trust agents
    never touch any trust model, so for them the order is moot.

    An unknown source raises unless ``default_model`` supplies a prior to
    register it with. A 0/0 belief posterior (pinned trust of exactly 0
    or 1 against an extreme belief) leaves the state unchanged and bumps
    ``diagnostics``.
    """
    model = agent.trust.get(report.source)
    registered = False
    if model is None:
        if default_model is None:
            raise UnknownSourceError(
                f"agent {agent.id} has no trust model for source {report.source}"
            )
        model = default_model
        registered = True
    new_trust = agent.trust
    if agent.updates_trust and isinstance(model, TrustGrid):
        model = _grid_pair_update(model, agent.belief, agent.belief_c, report.claim.asserts_h)
        new_trust = dict(agent.trust)
        new_trust[report.source] = model
    elif registered:
        new_trust = dict(agent.trust)
        new_trust[report.source] = model
    e = expected_trust(model)
    pair = _belief_pair_update(agent.belief, agent.belief_c, e, report.claim.asserts_h)
    if pair is None:
        if diagnostics is not None:
            diagnostics.degenerate_updates += 1
        if new_trust is agent.trust:
            return agent
        return replace(agent, trust=new_trust)
    return replace(agent, belief=pair[0], belief_c=pair[1], trust=new_trust)

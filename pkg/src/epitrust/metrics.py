"""Scoring and aggregation over trajectories."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import Trajectory
from .errors import ParameterError


def brier(belief: float, truth: bool) -> float:
    """Squared error of a credence against the 0/1 truth indicator."""
    d = belief - (1.0 if truth else 0.0)
    return d * d


def absolute_error(belief: float, truth: bool) -> float:
    """Absolute error of a credence against the 0/1 truth indicator."""
    return abs(belief - (1.0 if truth else 0.0))


@dataclass(frozen=True)
class StepStats:
    """Within-population statistics at one step."""

    step: int
    mean_belief: float
    belief_variance: float  # population variance (divide by N)
    mean_world_trust: float


def step_stats(beliefs, world_trusts, step: int = 0) -> StepStats:
    b = np.asarray(beliefs, dtype=np.float64)
    w = np.asarray(world_trusts, dtype=np.float64)
    if b.size == 0 or w.size == 0:
        raise ParameterError("step_stats needs non-empty inputs")
    if b.shape != w.shape:
        raise ParameterError(f"shape mismatch: beliefs {b.shape} vs world trusts {w.shape}")
    return StepStats(step, float(b.mean()), float(b.var()), float(w.mean()))


def trajectory_step_stats(traj: Trajectory) -> list[StepStats]:
    """StepStats for every recorded step of one trajectory."""
    means = traj.beliefs.mean(axis=1)
    variances = traj.beliefs.var(axis=1)
    trust_means = traj.world_trust.mean(axis=1)
    return [
        StepStats(t, float(means[t]), float(variances[t]), float(trust_means[t]))
        for t in range(traj.beliefs.shape[0])
    ]


@dataclass(eq=False)
class AggregateSeries:
    """Cross-run aggregation of one condition's per-run mean-belief series."""

    condition: str
    run_indices: list[int]
    run_means: np.ndarray  # shape (runs, steps)
    grand_mean: np.ndarray  # shape (steps,)
    between_run_variance: np.ndarray  # population variance over runs, (steps,)


class BatchAggregator:
    """Single-pass fold of trajectories into per-condition aggregates.

    Holds one mean series per (condition, run): memory stays bounded in
    the number of runs however many agents a trajectory carries. Partial
    aggregates over disjoint run sets combine with ``merge``.
    """

    def __init__(self) -> None:
        self._series: dict[str, dict[int, np.ndarray]] = {}
        self._steps: int | None = None

    def add(self, traj: Trajectory) -> None:
        steps = traj.beliefs.shape[0]
        if self._steps is None:
            self._steps = steps
        elif steps != self._steps:
            raise ParameterError(
                f"trajectory has {steps} steps, aggregator expects {self._steps}"
            )
        runs = self._series.setdefault(traj.condition, {})
        if traj.run_index in runs:
            raise ParameterError(
                f"duplicate run {traj.run_index} for condition {traj.condition!r}"
            )
        runs[traj.run_index] = traj.beliefs.mean(axis=1)

    def merge(self, other: "BatchAggregator") -> "BatchAggregator":
        if other._steps is not None:
            if self._steps is None:
                self._steps = other._steps
            elif self._steps != other._steps:
                raise ParameterError("cannot merge aggregators with different step counts")
        for condition, runs in other._series.items():
            mine = self._series.setdefault(condition, {})
            for run_index, series in runs.items():
                if run_index in mine:
                    raise ParameterError(
                        f"duplicate run {run_index} for condition {condition!r} in merge"
                    )
                mine[run_index] = series
        return self

    def result(self) -> dict[str, AggregateSeries]:
        out = {}
        for condition, runs in self._series.items():
            indices = sorted(runs)
            stacked = (
                np.vstack([runs[i] for i in indices])
                if indices
                else np.empty((0, self._steps or 0))
            )
            out[condition] = AggregateSeries(
                condition=condition,
                run_indices=indices,
                run_means=stacked,
                grand_mean=stacked.mean(axis=0) if len(indices) else np.empty(0),
                between_run_variance=stacked.var(axis=0) if len(indices) else np.empty(0),
            )
        return out


def aggregate(trajectories) -> dict[str, AggregateSeries]:
    """Fold an iterable of trajectories; see ``BatchAggregator``."""
    agg = BatchAggregator()
    for traj in trajectories:
        agg.add(traj)
    return agg.result()

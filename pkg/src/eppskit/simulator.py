"""Toy model generator: a per-second +/-1 core random walk observed by two
independent Poisson samplers, plus a Monte Carlo estimator for the expected
overlap of the two walkers' last-step intervals.

Reproducibility: every generator takes a seed and derives per-purpose RNG
streams as ``default_rng([seed, stream_id])``, so adding a third sampled
series never perturbs the first two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import EventBeyondHorizon
from .timeseries import TickSeries

# stream ids for sub-generators derived from the master seed
_STREAM_WALK = 0
_STREAM_EVENTS_A = 1
_STREAM_EVENTS_B = 2
_STREAM_OVERLAP = 3


@dataclass(frozen=True)
class ModelParams:
    lam: float  # event rate per second
    horizon: int  # total simulated seconds
    w0: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.lam <= 0:
            raise ValueError("lam must be positive")
        if self.horizon < 1.0 / self.lam:
            raise ValueError("horizon must cover at least one mean waiting time")


@dataclass(frozen=True)
class CoreWalk:
    """Unit-step walk on integer seconds: levels[t] = levels[t-1] + steps[t-1]."""

    steps: np.ndarray
    levels: np.ndarray

    @property
    def horizon(self) -> int:
        return len(self.levels) - 1


def gen_core_walk(params: ModelParams) -> CoreWalk:
    """Walk with i.i.d. +/-1 steps, one per second, deterministic in the seed."""
    rng = np.random.default_rng([params.seed, _STREAM_WALK])
    steps = 2.0 * rng.integers(0, 2, size=int(params.horizon)) - 1.0
    levels = np.empty(int(params.horizon) + 1)
    levels[0] = params.w0
    np.cumsum(steps, out=levels[1:])
    levels[1:] += params.w0
    return CoreWalk(steps=steps, levels=levels)


def gen_poisson_times(lam: float, horizon: float, seed, stream: int = _STREAM_EVENTS_A) -> np.ndarray:
    """Event times of a rate-lam Poisson process on (0, horizon), i.e. with
    i.i.d. exponential gaps. May be empty if the first gap exceeds the horizon.
    """
    if lam <= 0:
        raise ValueError("lam must be positive")
    rng = np.random.default_rng([seed, stream])
    times = []
    t = 0.0
    # draw gaps in chunks; expected count is lam * horizon
    chunk = max(256, int(1.2 * lam * horizon) + 16)
    while t < horizon:
        gaps = rng.exponential(1.0 / lam, size=chunk)
        cum = t + np.cumsum(gaps)
        times.append(cum[cum < horizon])
        t = cum[-1]
    if not times:
        return np.empty(0)
    return np.concatenate(times)


def sample_walk(walk: CoreWalk, events: np.ndarray, instrument_id: str = "") -> TickSeries:
    """One tick per event time, carrying W evaluated at the greatest integer
    second <= the event time. Ticks store log-prices directly.
    """
    events = np.asarray(events, dtype=float)
    if events.size and events.max() >= walk.horizon:
        raise EventBeyondHorizon(
            f"event at t={events.max():.3f} beyond walk horizon {walk.horizon}"
        )
    idx = np.floor(events).astype(np.int64)
    return TickSeries(
        times=events,
        prices=walk.levels[idx] if events.size else np.empty(0),
        instrument_id=instrument_id,
        log_prices=True,
    )


def simulate_pair(params: ModelParams) -> tuple[TickSeries, TickSeries]:
    """Two asynchronous tick series sampled from one core walk."""
    walk = gen_core_walk(params)
    ev_a = gen_poisson_times(params.lam, params.horizon, params.seed, _STREAM_EVENTS_A)
    ev_b = gen_poisson_times(params.lam, params.horizon, params.seed, _STREAM_EVENTS_B)
    return sample_walk(walk, ev_a, "A"), sample_walk(walk, ev_b, "B")


def overlap_expectation_mc(lam: float, dt: float, n_trials: int, seed=0) -> tuple[float, float]:
    """Monte Carlo estimate of the expected length of the intersection of the
    two walkers' [gamma(t - dt), gamma(t)] intervals.

    The four renewal ages (backward recurrence times at t and t - dt for each
    walker) are exponential(lam) by memorylessness; an age at t exceeding dt
    collapses that walker's interval to a point. Returns (estimate,
    standard_error); the standard error is nan for a single trial.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    rng = np.random.default_rng([seed, _STREAM_OVERLAP])
    ages = rng.exponential(1.0 / lam, size=(4, n_trials))
    lengths = _kernels.overlap_lengths(ages[0], ages[1], ages[2], ages[3], float(dt))
    mean = float(np.mean(lengths))
    if n_trials == 1:
        return mean, math.nan
    se = float(np.std(lengths, ddof=1) / math.sqrt(n_trials))
    return mean, se

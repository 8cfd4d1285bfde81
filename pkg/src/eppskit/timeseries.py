"""Domain types for tick data, regular grids, returns, decay functions and
Epps curves, plus previous-tick resampling onto a uniform grid.

All types are frozen dataclasses over numpy arrays and are treated as
immutable after construction; every operation in the package is a pure
function over them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InvalidGrid, NoPriorTick


@dataclass(frozen=True)
class TickSeries:
    """Irregular (time, price) events for one instrument.

    ``log_prices=True`` means ``prices`` already holds log-prices (the
    simulator emits these directly); otherwise prices are positive levels
    and logs are taken at resampling time.
    """

    times: np.ndarray
    prices: np.ndarray
    instrument_id: str = ""
    log_prices: bool = False

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        prices = np.asarray(self.prices, dtype=float)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "prices", prices)
        if times.shape != prices.shape or times.ndim != 1:
            raise ValueError("times and prices must be 1-d arrays of equal length")
        if times.size > 1 and np.any(np.diff(times) < 0):
            raise ValueError("timestamps must be non-decreasing")
        if not self.log_prices and times.size and np.any(prices <= 0):
            raise ValueError("prices must be positive")

    def __len__(self) -> int:
        return self.times.size

    def log_values(self) -> np.ndarray:
        return self.prices if self.log_prices else np.log(self.prices)


@dataclass(frozen=True)
class RegularSeries:
    """Log-prices on a uniform grid t0 + k*dt0, k = 0..n-1."""

    t0: float
    dt0: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if self.dt0 < 1:
            raise InvalidGrid(f"dt0 must be >= 1, got {self.dt0}")
        if values.size < 2:
            raise InvalidGrid("need at least 2 grid points")
        if not np.all(np.isfinite(values)):
            raise ValueError("grid values must be finite")

    def __len__(self) -> int:
        return self.values.size

    @property
    def span(self) -> int:
        """Time covered by the grid, in seconds."""
        return (len(self) - 1) * self.dt0

    def grid_times(self) -> np.ndarray:
        return self.t0 + self.dt0 * np.arange(len(self), dtype=float)


@dataclass(frozen=True)
class ReturnSeries:
    """Log-returns at scale dt, windows advancing by ``stride`` seconds."""

    dt: int
    stride: int
    dt0: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if self.stride < 1:
            raise InvalidGrid("stride must be >= 1")
        if self.dt0 < 1 or self.dt % self.dt0 != 0:
            raise InvalidGrid("dt must be a positive multiple of dt0")
        if not np.all(np.isfinite(values)):
            raise ValueError("returns must be finite")

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class DecayFunction:
    """Normalized lagged-moment values f(x*dt0) on a symmetric lag range."""

    dt0: int
    lags: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        lags = np.asarray(self.lags, dtype=np.int64)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "lags", lags)
        object.__setattr__(self, "values", values)
        if lags.shape != values.shape:
            raise ValueError("lags and values must have equal length")
        max_lag = lags.max() if lags.size else 0
        if not np.array_equal(lags, np.arange(-max_lag, max_lag + 1)):
            raise ValueError("lag range must be a symmetric -L..L sequence")
        if values[lags == 0][0] != 1.0:
            raise ValueError("f(0) must be exactly 1")
        if not np.all(np.isfinite(values)):
            raise ValueError("decay values must be finite")

    @property
    def max_lag(self) -> int:
        return int(self.lags.max())

    def at(self, x) -> np.ndarray:
        """f at integer lag(s) x; lags outside the stored range count as 0."""
        x = np.asarray(x, dtype=np.int64)
        inside = np.abs(x) <= self.max_lag
        out = np.zeros(x.shape)
        out[inside] = self.values[x[inside] + self.max_lag]
        return out


@dataclass(frozen=True)
class EppsCurve:
    """(dt, rho) pairs; ``kind`` is one of measured / predicted / exact."""

    dts: np.ndarray
    rhos: np.ndarray
    kind: str = "measured"

    def __post_init__(self):
        dts = np.asarray(self.dts, dtype=float)
        rhos = np.asarray(self.rhos, dtype=float)
        object.__setattr__(self, "dts", dts)
        object.__setattr__(self, "rhos", rhos)
        if dts.size > 1 and np.any(np.diff(dts) <= 0):
            raise ValueError("dt values must be strictly increasing")
        if np.any(np.abs(rhos) > 1.0):
            raise ValueError("every rho must lie in [-1, 1]")


def resample_to_grid(ticks: TickSeries, t0: float, dt0: int, n: int) -> RegularSeries:
    """Previous-tick resampling: value[k] is the log-price of the latest tick
    strictly before t0 + k*dt0. Prices are held constant between ticks; a
    tick exactly at a grid time affects only later grid points.
    """
    if dt0 < 1 or n < 2:
        raise InvalidGrid(f"need dt0 >= 1 and n >= 2, got dt0={dt0}, n={n}")
    if len(ticks) == 0:
        raise NoPriorTick("tick series is empty")
    if ticks.times[0] >= t0:
        raise NoPriorTick(f"no tick strictly before grid start t0={t0}")
    grid = t0 + dt0 * np.arange(n, dtype=float)
    values = _kernels.previous_tick_values(ticks.times, ticks.log_values(), grid)
    return RegularSeries(t0=float(t0), dt0=int(dt0), values=values)

"""Return construction and correlation estimators: equal-time and lagged
coefficients, raw cross-moments per lag, and normalized decay functions.

Conventions: moments are plain time averages with population (1/n)
normalization; the standard deviations used to normalize lagged correlations
are computed once over each full series, not per-lag subsamples; per-lag
cross-moments average only the terms actually available (no zero padding).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (
    GridMismatch,
    InsufficientOverlap,
    WindowTooLarge,
    ZeroDenominator,
    ZeroVariance,
)
from .timeseries import DecayFunction, RegularSeries, ReturnSeries


@dataclass(frozen=True)
class MomentSet:
    """Raw moments of a return-series pair: full-series means and second
    moments plus the per-lag cross moment <r_a(t) r_b(t + lag)>."""

    mean_a: float
    mean_b: float
    second_a: float
    second_b: float
    lags: np.ndarray  # integer lag indices, symmetric -L..L
    cross: np.ndarray  # mean of r_a(t) * r_b(t + x*lag_step) per lag
    n_terms: np.ndarray

    @property
    def sigma_a(self) -> float:
        return float(np.sqrt(max(self.second_a - self.mean_a**2, 0.0)))

    @property
    def sigma_b(self) -> float:
        return float(np.sqrt(max(self.second_b - self.mean_b**2, 0.0)))


def returns(series: RegularSeries, dt: int, stride: int | None = None) -> ReturnSeries:
    """Log-returns over windows of length dt advancing by ``stride`` seconds
    (default: the grid step, i.e. maximally overlapping windows)."""
    if stride is None:
        stride = series.dt0
    if dt % series.dt0 != 0 or stride % series.dt0 != 0 or dt < series.dt0:
        raise GridMismatch(
            f"dt={dt} and stride={stride} must be positive multiples of dt0={series.dt0}"
        )
    if dt >= series.span + series.dt0:
        raise WindowTooLarge(f"dt={dt} does not fit in span {series.span}")
    step = stride // series.dt0
    width = dt // series.dt0
    n = (len(series) - 1 - width) // step + 1
    starts = step * np.arange(n)
    vals = series.values[starts + width] - series.values[starts]
    return ReturnSeries(dt=int(dt), stride=int(stride), dt0=series.dt0, values=vals)


def _check_pair(ra: ReturnSeries, rb: ReturnSeries):
    if ra.dt != rb.dt or ra.stride != rb.stride:
        raise GridMismatch("return series must share dt and stride")


def cross_moments(ra: ReturnSeries, rb: ReturnSeries, max_lag: int, lag_step: int = 1) -> MomentSet:
    """Raw moments with the cross moment evaluated at index lags
    x * lag_step for x in [-max_lag, max_lag]."""
    _check_pair(ra, rb)
    a, b = ra.values, rb.values
    sums, counts = _kernels.lagged_cross_sums(a, b, int(max_lag), int(lag_step))
    if np.any(counts == 0):
        raise InsufficientOverlap(f"no overlap at some lag up to {max_lag}")
    return MomentSet(
        mean_a=float(np.mean(a)),
        mean_b=float(np.mean(b)),
        second_a=float(np.mean(a * a)),
        second_b=float(np.mean(b * b)),
        lags=np.arange(-max_lag, max_lag + 1),
        cross=sums / counts,
        n_terms=counts,
    )


def lagged_correlation(ra: ReturnSeries, rb: ReturnSeries, tau: int) -> float:
    """Normalized covariance of r_a(t) and r_b(t + tau); tau in seconds,
    a multiple of the common stride."""
    _check_pair(ra, rb)
    if tau % ra.stride != 0:
        raise GridMismatch(f"tau={tau} must be a multiple of stride={ra.stride}")
    k = tau // ra.stride
    m = min(len(ra) - max(-k, 0), len(rb) - max(k, 0))
    if m < 2:
        raise InsufficientOverlap(f"only {max(m, 0)} overlapping points at tau={tau}")
    a, b = ra.values, rb.values
    if k >= 0:
        cross = float(np.dot(a[:m], b[k:k + m])) / m
    else:
        cross = float(np.dot(a[-k:-k + m], b[:m])) / m
    mean_a, mean_b = float(np.mean(a)), float(np.mean(b))
    sig_a = float(np.sqrt(max(np.mean(a * a) - mean_a**2, 0.0)))
    sig_b = float(np.sqrt(max(np.mean(b * b) - mean_b**2, 0.0)))
    if sig_a == 0.0 or sig_b == 0.0:
        raise ZeroVariance("a return series has zero variance")
    return (cross - mean_a * mean_b) / (sig_a * sig_b)


def equal_time_rho(ra: ReturnSeries, rb: ReturnSeries) -> float:
    """Equal-time correlation coefficient, i.e. the lag-zero value."""
    return lagged_correlation(ra, rb, 0)


def decay_function(ra: ReturnSeries, rb: ReturnSeries, max_lag: int) -> DecayFunction:
    """Lagged raw cross-moments normalized by the lag-zero cross-moment
    (not by sigma_a * sigma_b); f(0) = 1 by construction. Lags advance in
    steps of the return scale dt, so the result lives on the dt grid.
    """
    _check_pair(ra, rb)
    if ra.dt % ra.stride != 0:
        raise GridMismatch("dt must be a multiple of stride to form dt-grid lags")
    lag_step = ra.dt // ra.stride
    if max_lag * lag_step >= min(len(ra), len(rb)) // 2:
        raise WindowTooLarge(f"max_lag={max_lag} too large for series length")
    mom = cross_moments(ra, rb, max_lag, lag_step)
    denom = mom.cross[max_lag]
    if denom == 0.0:
        raise ZeroDenominator("lag-zero cross-moment is zero")
    values = mom.cross / denom
    values[max_lag] = 1.0
    return DecayFunction(dt0=ra.dt, lags=mom.lags, values=values)

"""Scale decomposition of the equal-time correlation coefficient.

``predict_rho`` reconstructs the coefficient at any multiple of the base
scale from the base-scale coefficient and the three decay functions via
triangular-kernel weighted sums. The closed-form companions cover the toy
model: an approximate ratio valid for exponential cross-decay with
lam * dt0 << 1, and the exact Poisson-sampling solution.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    ApproximationDomainWarning,
    GridMismatch,
    NegativeArgument,
    NonPositiveKernel,
    PredictionRangeWarning,
)
from .timeseries import DecayFunction

APPROX_LAM_DT0_MAX = 0.05


@dataclass(frozen=True)
class DecompositionInput:
    """Base-scale statistics feeding the prediction: the coefficient at dt0
    and the cross / auto decay functions measured at the same scale."""

    rho0: float
    f_ab: DecayFunction
    f_aa: DecayFunction
    f_bb: DecayFunction
    dt0: int

    def __post_init__(self):
        for f in (self.f_ab, self.f_aa, self.f_bb):
            if f.dt0 != self.dt0:
                raise GridMismatch("all decay functions must share dt0")


def _kernel_sum(f: DecayFunction, m: int) -> float:
    xs = np.arange(-m + 1, m)
    weights = m - np.abs(xs)
    return float(np.dot(weights.astype(float), f.at(xs)))


def predict_rho(inp: DecompositionInput, dt: int) -> float:
    """Predicted equal-time coefficient at scale dt from dt0-scale inputs.

    Lags beyond a decay function's stored range contribute zero. The result
    is not clamped: values outside [-1, 1] indicate noisy or over-truncated
    decay inputs and raise a PredictionRangeWarning instead.
    """
    if dt <= 0 or dt % inp.dt0 != 0:
        raise GridMismatch(f"dt={dt} must be a positive multiple of dt0={inp.dt0}")
    m = dt // inp.dt0
    num = _kernel_sum(inp.f_ab, m)
    den_a = _kernel_sum(inp.f_aa, m)
    den_b = _kernel_sum(inp.f_bb, m)
    if den_a <= 0.0 or den_b <= 0.0:
        raise NonPositiveKernel(
            f"autocorrelation kernel sums must be positive (got {den_a}, {den_b})"
        )
    rho = num / math.sqrt(den_a * den_b) * inp.rho0
    if abs(rho) > 1.0:
        warnings.warn(
            f"predicted rho={rho:.4f} outside [-1, 1] at dt={dt} "
            f"(kernel sums: cross={num:.4g}, auto={den_a:.4g}/{den_b:.4g})",
            PredictionRangeWarning,
            stacklevel=2,
        )
    return rho


def exp_ratio_approx(lam: float, dt: float, dt0: float) -> float:
    """Closed-form rho_dt / rho_dt0 for exponential cross-decay and delta
    autocorrelations, valid in the lam * dt0 << 1 regime."""
    if lam * dt0 > APPROX_LAM_DT0_MAX:
        warnings.warn(
            f"lam*dt0={lam * dt0:.3g} exceeds {APPROX_LAM_DT0_MAX}; "
            "approximation degrades outside the sparse-sampling regime",
            ApproximationDomainWarning,
            stacklevel=2,
        )
    return 2.0 / (lam * dt0) + 2.0 / (lam * lam * dt * dt0) * math.expm1(-lam * dt)


def exact_model_rho(lam: float, dt: float) -> float:
    """Exact equal-time coefficient of the Poisson-sampled model at scale dt;
    increases monotonically from 0 toward 1."""
    if lam <= 0 or dt <= 0:
        raise ValueError("lam and dt must be positive")
    x = lam * dt
    # expm1 keeps (e^-x - 1)/x accurate for tiny x
    return 1.0 + math.expm1(-x) / x


def exact_ratio(lam: float, dt: float, dt0: float) -> float:
    """Exact rho_dt / rho_dt0 for the Poisson-sampled model."""
    return exact_model_rho(lam, dt) / exact_model_rho(lam, dt0)


def minmax_exponential_density(x, lam: float):
    """Densities of the minimum and maximum of two i.i.d. exponential(lam)
    variables, evaluated at x >= 0. Accepts scalars or arrays."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise NegativeArgument("densities are defined for x >= 0")
    d_min = 2.0 * lam * np.exp(-2.0 * lam * x)
    d_max = 2.0 * lam * (np.exp(-lam * x) - np.exp(-2.0 * lam * x))
    if x.ndim == 0:
        return float(d_min), float(d_max)
    return d_min, d_max

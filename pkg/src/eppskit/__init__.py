"""Epps-effect toolkit: asynchronous price simulation, lagged-correlation
decomposition across sampling scales, exact model analytics, and an
empirical tick-data pipeline."""

__version__ = "0.1.0"

from .correlation import (
    MomentSet,
    cross_moments,
    decay_function,
    equal_time_rho,
    lagged_correlation,
    returns,
)
from .decomposition import (
    DecompositionInput,
    exact_model_rho,
    exact_ratio,
    exp_ratio_approx,
    minmax_exponential_density,
    predict_rho,
)
from .ingest import (
    DailyStats,
    SessionConfig,
    average_stats,
    daily_pipeline,
    filter_splits,
    parse_ticks,
    truncate_decay,
)
from .simulator import (
    CoreWalk,
    ModelParams,
    gen_core_walk,
    gen_poisson_times,
    overlap_expectation_mc,
    sample_walk,
    simulate_pair,
)
from .timeseries import (
    DecayFunction,
    EppsCurve,
    RegularSeries,
    ReturnSeries,
    TickSeries,
    resample_to_grid,
)

__all__ = [
    "__version__",
    "TickSeries", "RegularSeries", "ReturnSeries", "DecayFunction", "EppsCurve",
    "resample_to_grid",
    "ModelParams", "CoreWalk", "gen_core_walk", "gen_poisson_times",
    "sample_walk", "simulate_pair", "overlap_expectation_mc",
    "MomentSet", "returns", "cross_moments", "lagged_correlation",
    "equal_time_rho", "decay_function",
    "DecompositionInput", "predict_rho", "exp_ratio_approx",
    "exact_model_rho", "exact_ratio", "minmax_exponential_density",
    "SessionConfig", "DailyStats", "parse_ticks", "filter_splits",
    "daily_pipeline", "average_stats", "truncate_decay",
]

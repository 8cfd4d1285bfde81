"""Empirical tick-data pipeline: CSV parsing, split filtering, per-day
statistics, cross-day averaging, and signal/noise truncation of measured
decay functions.

Tick file format (UTF-8 CSV, header required)::

    date,time_s,price

where date is ISO-8601 (YYYY-MM-DD), time_s is seconds since midnight
(real), and price is a positive decimal. Internally timestamps become
day_ordinal * 86400 + time_s so multi-day files live on one axis.
"""

from __future__ import annotations

import csv
import datetime
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .correlation import decay_function, equal_time_rho, returns
from .errors import (
    EmptyAfterFiltering,
    EmptyInput,
    EppsError,
    MalformedRow,
    NonMonotoneTimestamps,
    NoUsableDays,
)
from .timeseries import DecayFunction, EppsCurve, TickSeries, resample_to_grid

logger = logging.getLogger(__name__)

SECONDS_PER_DAY = 86400


@dataclass(frozen=True)
class SessionConfig:
    session_start: int = 34200  # 09:30:00
    session_end: int = 57600  # 16:00:00
    split_filter_fraction: float = 0.05
    dt0: int = 120
    max_decay_lag: int = 10

    def __post_init__(self):
        if not 0.0 < self.split_filter_fraction < 1.0:
            raise ValueError("split_filter_fraction must be in (0, 1)")
        if self.session_start >= self.session_end:
            raise ValueError("session_start must precede session_end")
        if self.dt0 < 1:
            raise ValueError("dt0 must be >= 1")


@dataclass(frozen=True)
class DailyStats:
    date: datetime.date
    rho0: float
    decay_ab: DecayFunction
    decay_aa: DecayFunction
    decay_bb: DecayFunction
    n_obs: int
    rho_by_dt: dict[int, float] = field(default_factory=dict)


def parse_ticks(path, instrument: str, cfg: SessionConfig | None = None) -> TickSeries:
    """Read a tick CSV, keep rows inside the session window, and return one
    TickSeries spanning all days in the file."""
    cfg = cfg or SessionConfig()
    times, prices = [], []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [c.strip().lower() for c in header[:3]] != ["date", "time_s", "price"]:
            raise MalformedRow(1, "expected header 'date,time_s,price'")
        for line_no, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) < 3:
                raise MalformedRow(line_no, f"expected 3 fields, got {len(row)}")
            try:
                day = datetime.date.fromisoformat(row[0].strip())
                time_s = float(row[1])
                price = float(row[2])
            except ValueError as exc:
                raise MalformedRow(line_no, str(exc)) from None
            if price <= 0 or not math.isfinite(price) or not math.isfinite(time_s):
                raise MalformedRow(line_no, f"bad price/time: {row[1]},{row[2]}")
            if not cfg.session_start <= time_s <= cfg.session_end:
                continue
            times.append(day.toordinal() * SECONDS_PER_DAY + time_s)
            prices.append(price)
    if not times:
        raise EmptyAfterFiltering(f"no in-session rows in {path}")
    times_arr = np.asarray(times)
    if np.any(np.diff(times_arr) < 0):
        raise NonMonotoneTimestamps(f"timestamps decrease in {path}")
    return TickSeries(times=times_arr, prices=np.asarray(prices), instrument_id=instrument)


def filter_splits(ticks: TickSeries, fraction: float) -> TickSeries:
    """Drop ticks whose log-return from the previous *retained* tick exceeds
    ln(1 + fraction) in magnitude; targets split artifacts, keeps ordinary
    price moves. Idempotent."""
    if not 0.0 < fraction < 1.0:
        raise ValueError("fraction must be in (0, 1)")
    if len(ticks) == 0:
        return ticks
    keep = _kernels.split_filter_mask(ticks.log_values(), math.log(1.0 + fraction))
    return TickSeries(
        times=ticks.times[keep],
        prices=ticks.prices[keep],
        instrument_id=ticks.instrument_id,
        log_prices=ticks.log_prices,
    )


def _day_slice(ticks: TickSeries, ordinal: int) -> TickSeries:
    lo = ordinal * SECONDS_PER_DAY
    mask = (ticks.times >= lo) & (ticks.times < lo + SECONDS_PER_DAY)
    return TickSeries(
        times=ticks.times[mask],
        prices=ticks.prices[mask],
        instrument_id=ticks.instrument_id,
        log_prices=ticks.log_prices,
    )


def _day_stats(
    day_a: TickSeries,
    day_b: TickSeries,
    ordinal: int,
    cfg: SessionConfig,
    dt_grid,
) -> DailyStats:
    first = max(day_a.times[0], day_b.times[0])
    session_open = ordinal * SECONDS_PER_DAY + cfg.session_start
    session_close = ordinal * SECONDS_PER_DAY + cfg.session_end
    # grid anchored at the first dt0 point strictly after both first ticks
    t0 = session_open + (int(first - session_open) // cfg.dt0 + 1) * cfg.dt0
    n = int(session_close - t0) // cfg.dt0 + 1
    if n < 2 * (cfg.max_decay_lag + 1):
        raise EmptyAfterFiltering(f"day {ordinal}: grid too short ({n} points)")
    reg_a = resample_to_grid(day_a, t0, cfg.dt0, n)
    reg_b = resample_to_grid(day_b, t0, cfg.dt0, n)
    ra = returns(reg_a, cfg.dt0)
    rb = returns(reg_b, cfg.dt0)
    rho0 = equal_time_rho(ra, rb)
    max_lag = min(cfg.max_decay_lag, len(ra) // 2 - 1)
    stats = DailyStats(
        date=datetime.date.fromordinal(ordinal),
        rho0=rho0,
        decay_ab=decay_function(ra, rb, max_lag),
        decay_aa=decay_function(ra, ra, max_lag),
        decay_bb=decay_function(rb, rb, max_lag),
        n_obs=len(ra),
        rho_by_dt={
            int(dt): equal_time_rho(returns(reg_a, dt), returns(reg_b, dt))
            for dt in (dt_grid or [])
            if dt < reg_a.span
        },
    )
    return stats


def daily_pipeline(
    ticks_a: TickSeries,
    ticks_b: TickSeries,
    cfg: SessionConfig,
    days=None,
    dt_grid=None,
) -> list[DailyStats]:
    """Per-day statistics for a pair of multi-day tick series: split-filter,
    resample on the dt0 grid, base-scale coefficient and decay functions.
    Days where either instrument lacks usable data are skipped with a log
    line; raises NoUsableDays when nothing survives."""
    ords_a = set(np.unique(ticks_a.times.astype(np.int64) // SECONDS_PER_DAY))
    ords_b = set(np.unique(ticks_b.times.astype(np.int64) // SECONDS_PER_DAY))
    wanted = ords_a & ords_b
    if days is not None:
        wanted &= {d.toordinal() if isinstance(d, datetime.date) else int(d) for d in days}
    out = []
    for ordinal in sorted(wanted):
        day_a = filter_splits(_day_slice(ticks_a, ordinal), cfg.split_filter_fraction)
        day_b = filter_splits(_day_slice(ticks_b, ordinal), cfg.split_filter_fraction)
        try:
            if len(day_a) == 0 or len(day_b) == 0:
                raise EmptyAfterFiltering(f"day {ordinal}: an instrument has no ticks")
            out.append(_day_stats(day_a, day_b, ordinal, cfg, dt_grid))
        except EppsError as exc:
            logger.warning(
                "skipping %s: %s", datetime.date.fromordinal(ordinal), exc
            )
    if not out:
        raise NoUsableDays("no day produced usable statistics")
    return out


def _average_decays(decays: list[DecayFunction]) -> DecayFunction:
    """Per-lag arithmetic mean over the days where the lag exists."""
    dt0 = decays[0].dt0
    max_lag = max(f.max_lag for f in decays)
    lags = np.arange(-max_lag, max_lag + 1)
    acc = np.zeros(lags.size)
    cnt = np.zeros(lags.size)
    for f in decays:
        lo = max_lag - f.max_lag
        acc[lo:lo + f.lags.size] += f.values
        cnt[lo:lo + f.lags.size] += 1
    values = acc / cnt
    values[max_lag] = 1.0
    return DecayFunction(dt0=dt0, lags=lags, values=values)


def average_stats(stats: list[DailyStats]):
    """Equal-weight day averages: returns (DecompositionInput, EppsCurve or
    None) where the curve collects day-averaged measured coefficients when
    the pipeline was run with a dt grid."""
    from .decomposition import DecompositionInput

    if not stats:
        raise EmptyInput("no daily statistics to average")
    rho0 = float(np.mean([s.rho0 for s in stats]))
    inp = DecompositionInput(
        rho0=rho0,
        f_ab=_average_decays([s.decay_ab for s in stats]),
        f_aa=_average_decays([s.decay_aa for s in stats]),
        f_bb=_average_decays([s.decay_bb for s in stats]),
        dt0=stats[0].decay_ab.dt0,
    )
    all_dts = sorted({dt for s in stats for dt in s.rho_by_dt})
    curve = None
    if all_dts:
        rhos = [
            float(np.mean([s.rho_by_dt[dt] for s in stats if dt in s.rho_by_dt]))
            for dt in all_dts
        ]
        curve = EppsCurve(dts=np.asarray(all_dts, dtype=float), rhos=np.asarray(rhos), kind="measured")
    return inp, curve


def _truncate_side(values: np.ndarray, kind: str) -> np.ndarray:
    """Zero out one side of a decay function (values at lags 1..L, ordered
    outward) past the point where signal gives way to noise."""
    out = values.copy()
    if kind == "cross":
        hits = np.nonzero(out <= 0.0)[0]
        if hits.size:
            out[hits[0]:] = 0.0
        return out
    if kind != "auto":
        raise ValueError(f"kind must be 'cross' or 'auto', got {kind!r}")
    neg = np.nonzero(out < 0.0)[0]
    if neg.size == 0:
        # no overshoot: fall back to the cross rule
        return _truncate_side(out, "cross")
    back = np.nonzero(out[neg[0]:] >= 0.0)[0]
    if back.size:
        out[neg[0] + back[0]:] = 0.0
    return out


def truncate_decay(f: DecayFunction, kind: str) -> DecayFunction:
    """Truncate a measured decay function by the signal/noise rule: cross
    decays are zeroed from the first lag reaching <= 0; auto decays are kept
    through their initial negative overshoot and zeroed once they come back
    to >= 0 from below. Each lag sign side is treated independently."""
    L = f.max_lag
    values = f.values.copy()
    pos = _truncate_side(values[L + 1:], kind)
    neg = _truncate_side(values[:L][::-1], kind)
    out = np.concatenate([neg[::-1], [1.0], pos])
    return DecayFunction(dt0=f.dt0, lags=f.lags, values=out)

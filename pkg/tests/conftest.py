import math

import numpy as np
import pytest

import eppskit as ek

MODEL_LAMBDA = 1.0 / 60.0
SIM_HORIZON = 10**6
SIM_SEED = 0


@pytest.fixture(scope="session")
def sim_grids():
    """One long simulated pair (the desk-scale fixture shared by the
    statistical tests), resampled on the 1 s grid over the whole horizon."""
    params = ek.ModelParams(lam=MODEL_LAMBDA, horizon=SIM_HORIZON, seed=SIM_SEED)
    ticks_a, ticks_b = ek.simulate_pair(params)
    t0 = int(max(ticks_a.times[0], ticks_b.times[0])) + 1
    n = (SIM_HORIZON - t0) // 1 + 1
    reg_a = ek.resample_to_grid(ticks_a, t0, 1, n)
    reg_b = ek.resample_to_grid(ticks_b, t0, 1, n)
    return reg_a, reg_b


@pytest.fixture(scope="session")
def sim_returns(sim_grids):
    reg_a, reg_b = sim_grids
    return ek.returns(reg_a, 1), ek.returns(reg_b, 1)


def write_tick_csv(path, rows):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("date,time_s,price\n")
        for date, time_s, price in rows:
            fh.write(f"{date},{time_s},{price}\n")


@pytest.fixture(scope="session")
def two_day_files(tmp_path_factory):
    """Two-day TAQ-like fixture from the simulator, with one transient
    half-price tick injected into instrument B on day two.

    Returns (path_a, path_b, path_b_clean, injected_index) where the index
    counts in-session rows of file B.
    """
    out = tmp_path_factory.mktemp("taq")
    horizon = 2 * 86400
    params = ek.ModelParams(lam=MODEL_LAMBDA, horizon=horizon, seed=11)
    ticks_a, ticks_b = ek.simulate_pair(params)

    def rows(ticks, halve_at=None):
        for i, (t, w) in enumerate(zip(ticks.times, ticks.prices)):
            day = "1970-01-01" if t < 86400 else "1970-01-02"
            price = math.exp(1e-4 * w)
            if i == halve_at:
                price *= 0.5
            yield day, f"{t % 86400:.3f}", f"{price:.10f}"

    # a mid-day-two tick gets the transient split
    injected = int(np.searchsorted(ticks_b.times, 86400 + 4 * 3600))
    path_a = out / "a.csv"
    path_b = out / "b.csv"
    path_b_clean = out / "b_clean.csv"
    write_tick_csv(path_a, rows(ticks_a))
    write_tick_csv(path_b, rows(ticks_b, halve_at=injected))
    write_tick_csv(path_b_clean, rows(ticks_b))
    return path_a, path_b, path_b_clean, injected


@pytest.fixture()
def full_day_cfg():
    return ek.SessionConfig(session_start=0, session_end=86400, dt0=60, max_decay_lag=10)

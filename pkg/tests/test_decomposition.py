import math

import numpy as np
import pytest
from scipy.integrate import quad

from eppskit.decomposition import (
    APPROX_LAM_DT0_MAX,
    DecompositionInput,
    exact_model_rho,
    exact_ratio,
    exp_ratio_approx,
    minmax_exponential_density,
    predict_rho,
)
from eppskit.errors import (
    ApproximationDomainWarning,
    GridMismatch,
    NegativeArgument,
    NonPositiveKernel,
    PredictionRangeWarning,
)
from eppskit.timeseries import DecayFunction

LAM = 1.0 / 60.0


def delta_decay(max_lag, dt0=1):
    values = np.zeros(2 * max_lag + 1)
    values[max_lag] = 1.0
    return DecayFunction(dt0=dt0, lags=np.arange(-max_lag, max_lag + 1), values=values)


def exp_decay(max_lag, lam, dt0=1):
    lags = np.arange(-max_lag, max_lag + 1)
    return DecayFunction(dt0=dt0, lags=lags, values=np.exp(-lam * dt0 * np.abs(lags)))


def test_predict_identity_at_base_scale():
    rho0 = 0.123456789
    inp = DecompositionInput(rho0, exp_decay(50, LAM), delta_decay(50), delta_decay(50), 1)
    assert predict_rho(inp, 1) == rho0  # bit-level


def test_delta_decays_give_flat_curve():
    rho0 = 0.4
    inp = DecompositionInput(rho0, delta_decay(20), delta_decay(20), delta_decay(20), 1)
    for dt in (1, 2, 5, 17):
        assert predict_rho(inp, dt) == pytest.approx(rho0, rel=1e-14)


def brute_force_exp_ratio(lam, dt, dt0):
    # direct summation of the triangular kernel with exponential cross decay
    m = dt // dt0
    total = 0.0
    for x in range(-m + 1, m):
        total += (m - abs(x)) * math.exp(-lam * dt0 * abs(x))
    return total / m


def test_predict_matches_brute_force_triangular_sum():
    dt = 600
    rho0 = exact_model_rho(LAM, 1.0)
    inp = DecompositionInput(rho0, exp_decay(599, LAM), delta_decay(599), delta_decay(599), 1)
    expected = brute_force_exp_ratio(LAM, dt, 1) * rho0
    assert predict_rho(inp, dt) == pytest.approx(expected, abs=1e-12)


def test_predict_on_simulated_pair(sim_grids):
    from eppskit.correlation import equal_time_rho, returns

    reg_a, reg_b = sim_grids
    rho0 = exact_model_rho(LAM, 1.0)
    inp = DecompositionInput(rho0, exp_decay(599, LAM), delta_decay(599), delta_decay(599), 1)
    measured = equal_time_rho(returns(reg_a, 600), returns(reg_b, 600))
    assert predict_rho(inp, 600) == pytest.approx(measured, abs=0.03)


def test_predict_truncated_lags_count_as_zero():
    rho0 = 0.2
    short = exp_decay(3, LAM)
    inp = DecompositionInput(rho0, short, delta_decay(3), delta_decay(3), 1)
    m = 6
    total = sum((m - abs(x)) * math.exp(-LAM * abs(x)) for x in range(-3, 4))
    assert predict_rho(inp, 6) == pytest.approx(total / m * rho0, rel=1e-12)


def test_predict_linearity_in_rho0():
    inp1 = DecompositionInput(0.01, exp_decay(30, LAM), delta_decay(30), delta_decay(30), 1)
    inp3 = DecompositionInput(0.03, exp_decay(30, LAM), delta_decay(30), delta_decay(30), 1)
    assert predict_rho(inp3, 20) == pytest.approx(3.0 * predict_rho(inp1, 20), rel=1e-15)


def test_predict_grid_and_kernel_errors():
    inp = DecompositionInput(0.3, delta_decay(5), delta_decay(5), delta_decay(5), 1)
    with pytest.raises(GridMismatch):
        predict_rho(inp, 0)
    inp2 = DecompositionInput(0.3, delta_decay(5, dt0=2), delta_decay(5, dt0=2),
                              delta_decay(5, dt0=2), 2)
    with pytest.raises(GridMismatch):
        predict_rho(inp2, 3)
    # an autocorrelation kernel driven negative by a pathological decay
    bad_vals = np.zeros(5)
    bad_vals[2] = 1.0
    bad_vals[1] = bad_vals[3] = -1.0
    bad = DecayFunction(dt0=1, lags=np.arange(-2, 3), values=bad_vals)
    with pytest.raises(NonPositiveKernel):
        predict_rho(DecompositionInput(0.3, delta_decay(2), bad, delta_decay(2), 1), 3)


def test_predict_out_of_range_warns_not_clamps():
    # cross decay far above the autocorrelation kernels pushes rho past 1
    big = DecayFunction(dt0=1, lags=np.arange(-2, 3), values=[1.0, 1.0, 1.0, 1.0, 1.0])
    inp = DecompositionInput(0.9, big, delta_decay(2), delta_decay(2), 1)
    with pytest.warns(PredictionRangeWarning):
        rho = predict_rho(inp, 3)
    assert rho > 1.0


def test_decomposition_input_requires_shared_dt0():
    with pytest.raises(GridMismatch):
        DecompositionInput(0.1, exp_decay(5, LAM, dt0=2), delta_decay(5), delta_decay(5), 1)


def test_exp_ratio_approx_near_one_at_base_scale():
    assert exp_ratio_approx(LAM, 1, 1) == pytest.approx(1.0, rel=0.01)


def test_exp_ratio_approx_limit():
    # dt -> infinity limit is 2 / (lam * dt0)
    assert exp_ratio_approx(LAM, 10**9, 1) == pytest.approx(2.0 / LAM, rel=1e-6)


def test_exp_ratio_approx_warns_outside_regime():
    with pytest.warns(ApproximationDomainWarning):
        exp_ratio_approx(LAM, 600, 10.0)
    assert LAM * 1 < APPROX_LAM_DT0_MAX


def test_exp_ratio_matches_exact_across_grid():
    for dt in range(1, 10_001, 37):
        approx = exp_ratio_approx(LAM, dt, 1)
        exact = exact_ratio(LAM, dt, 1)
        assert abs(approx - exact) / exact < 0.01


def test_exact_model_rho_values():
    assert exact_model_rho(LAM, 60) == pytest.approx(math.exp(-1.0), rel=1e-12)
    # small lambda*dt: rho -> lam*dt/2
    assert exact_model_rho(1.0, 0.01) == pytest.approx(0.0049834, abs=1e-6)
    assert exact_model_rho(LAM, 10**7) == pytest.approx(1.0, abs=1e-4)


def test_exact_model_rho_monotone_and_bounded():
    dts = np.arange(1, 5000, 13, dtype=float)
    vals = [exact_model_rho(LAM, dt) for dt in dts]
    assert np.all(np.diff(vals) > 0)
    assert all(0.0 < v < 1.0 for v in vals)


def test_exact_model_rho_tiny_argument_stable():
    # expm1 form: no catastrophic cancellation at lambda*dt ~ 1e-8
    assert exact_model_rho(1e-8, 1.0) == pytest.approx(5e-9, rel=1e-6)


def test_exact_ratio_identity_and_monotone():
    assert exact_ratio(LAM, 7, 7) == 1.0
    vals = [exact_ratio(LAM, dt, 1) for dt in range(1, 2000, 11)]
    assert np.all(np.diff(vals) > 0)


def test_minmax_density_at_zero():
    d_min, d_max = minmax_exponential_density(0.0, LAM)
    assert d_min == pytest.approx(2.0 * LAM)
    assert d_max == 0.0


def test_minmax_densities_integrate_to_one():
    for which in (0, 1):
        total, _ = quad(lambda x: minmax_exponential_density(x, LAM)[which], 0, 50.0 / LAM)
        assert total == pytest.approx(1.0, abs=1e-6)


def test_minmax_density_small_x_ratio_diverges():
    # max density vanishes linearly at 0, so min/max ratio blows up
    xs = np.array([1.0, 0.1, 0.01])
    d_min, d_max = minmax_exponential_density(xs, LAM)
    ratios = d_min / d_max
    assert np.all(np.diff(ratios) > 0)
    assert ratios[-1] > 100.0


def test_minmax_density_negative_argument():
    with pytest.raises(NegativeArgument):
        minmax_exponential_density(-0.5, LAM)

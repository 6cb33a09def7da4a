"""Integrator order, conservation, events, and dense-output contracts."""

from __future__ import annotations

import math

import numpy as np
import pytest

from deepwave import (
    IntegratorConfig,
    ParameterDomainError,
    StiffnessError,
    WaveParams,
    build_cubic,
    classify_roots,
    complete_K,
    integrate_full,
    integrate_moving_frame,
    integrate_truncated,
    residual_full_Z_ode,
)
from deepwave.trajectories import asymptote_times, beta_from_initial


def test_config_validation():
    with pytest.raises(ParameterDomainError):
        IntegratorConfig(0.0, 0.0, dt=0.1)
    with pytest.raises(ParameterDomainError):
        IntegratorConfig(0.0, 1.0, dt=0.0)
    with pytest.raises(ParameterDomainError):
        IntegratorConfig(0.0, 1.0, dt=2.0)
    with pytest.raises(ParameterDomainError):
        IntegratorConfig(0.0, 1.0, dt=0.1, method="euler")
    with pytest.raises(ParameterDomainError):
        IntegratorConfig(0.0, 1.0, dt=0.1, abs_tol=0.0)
    cfg = IntegratorConfig.for_wave(WaveParams(k=1.0, a=0.1, g=9.8), 0.0, 1.0)
    assert cfg.method == "rk4"
    assert cfg.dt <= 1.0


def test_fixed_step_order_four(scenario_k1):
    """Halving dt shrinks the error ~16x against a much finer reference."""
    params, _ = scenario_k1
    T = params.wave_period
    X0, Z0 = 1.1, -0.2
    coarse = integrate_moving_frame(
        params, X0, Z0, IntegratorConfig(0.0, T, dt=T / 80.0)
    )
    ts = [float(v) for v in coarse.t]
    half, ref = (
        integrate_moving_frame(
            params, X0, Z0, IntegratorConfig(0.0, T, dt=T / n), sample_times=ts
        )
        for n in (160.0, 2560.0)
    )
    e_coarse = max(
        np.max(np.abs(coarse.X - ref.X)), np.max(np.abs(coarse.Z - ref.Z))
    )
    e_half = max(np.max(np.abs(half.X - ref.X)), np.max(np.abs(half.Z - ref.Z)))
    assert 12.0 <= e_coarse / e_half <= 20.0


def test_adaptive_matches_fixed(scenario_k1):
    """Compared at the adaptive knots, where the fine fixed-step run's
    dense output is effectively exact."""
    params, _ = scenario_k1
    T = params.wave_period
    X0, Z0 = 0.4, -0.1
    adaptive = integrate_moving_frame(
        params,
        X0,
        Z0,
        IntegratorConfig(
            0.0, T, dt=T / 100.0, method="rk45", abs_tol=1e-12, rel_tol=1e-12
        ),
    )
    ts = [float(v) for v in adaptive.t]
    fixed = integrate_moving_frame(
        params, X0, Z0, IntegratorConfig(0.0, T, dt=T / 4000.0), sample_times=ts
    )
    assert np.max(np.abs(fixed.X - adaptive.X)) <= 1e-8
    assert np.max(np.abs(fixed.Z - adaptive.Z)) <= 1e-8


def test_first_integral_conserved_along_truncated(scenario_k1):
    """E = (dZ/dt)^2 - P(Z) is constant along the truncated flow."""
    params, beta = scenario_k1
    coeffs = build_cubic(params, beta)
    red = classify_roots(coeffs)
    Z_mid = 0.5 * (red.Z1 + red.Z2)
    V0 = math.sqrt(coeffs.evaluate(Z_mid))
    T = 4.0 * complete_K(red.k1sq) / red.C1  # two bounce periods
    zs = integrate_truncated(
        coeffs, Z_mid, V0, IntegratorConfig(0.0, T, dt=T / 4000.0)
    )
    E = zs.dZdt**2 - np.array([coeffs.evaluate(float(Z)) for Z in zs.Z])
    E0 = V0 * V0 - coeffs.evaluate(Z_mid)
    assert np.max(np.abs(E - E0)) <= 1e-8 * max(1.0, abs(E0))


def test_moving_frame_conserves_beta(scenario_k1):
    params, _ = scenario_k1
    X0, Z0 = math.pi / 3.0, 0.0
    beta = (
        params.k * params.c * Z0
        - params.k * params.A * math.exp(Z0) * math.cos(X0)
    )
    cfg = IntegratorConfig.for_wave(params, 0.0, 5.0 * params.wave_period)
    series = integrate_moving_frame(params, X0, Z0, cfg)
    drift = (
        params.k * params.c * series.Z
        - params.k * params.A * np.exp(series.Z) * np.cos(series.X)
        - beta
    )
    assert np.max(np.abs(drift)) <= 1e-9


def test_oracle_series_tags(scenario_k1):
    params, _ = scenario_k1
    cfg = IntegratorConfig.for_wave(params, 0.0, 1.0, steps_per_period=500)
    full = integrate_full(params, 0.0, -0.5, cfg)
    frame = integrate_moving_frame(params, 0.0, -0.5, cfg)
    assert full.case_tag == "oracle-full"
    assert frame.case_tag == "oracle-full"


def test_escape_event_and_blowup_time(scenario_k4):
    """The escape event plus analytic tail lands on the closed-form
    asymptote time (the strong form of the 1e-4 acceptance bound)."""
    params, beta = scenario_k4
    coeffs = build_cubic(params, beta)
    red = classify_roots(coeffs)
    (t1,) = asymptote_times(red, 0.0, [0])
    cfg = IntegratorConfig(
        0.0, 3.0, dt=1e-3, method="rk45", abs_tol=1e-12, rel_tol=1e-10
    )
    zs = integrate_truncated(coeffs, red.Z0, 0.0, cfg)
    assert zs.blowup_time is not None
    assert zs.blowup_time == pytest.approx(t1, rel=1e-6)
    assert float(zs.t[-1]) < 3.0  # stopped early
    # The event bisection keeps the last pre-escape state.
    assert abs(float(zs.Z[-1])) <= 1e3 * (1.0 + 1e-9)


def test_escape_requires_inband_start(scenario_k4):
    params, beta = scenario_k4
    coeffs = build_cubic(params, beta)
    with pytest.raises(ParameterDomainError):
        integrate_truncated(coeffs, 2e3, 0.0, IntegratorConfig(0.0, 1.0, dt=1e-3))


def test_nan_initial_state_raises_stiffness(scenario_k1):
    params, beta = scenario_k1
    coeffs = build_cubic(params, beta)
    with pytest.raises(StiffnessError):
        integrate_truncated(coeffs, math.nan, 0.0, IntegratorConfig(0.0, 1.0, dt=1e-3))


def test_dense_output_contracts(scenario_k1):
    params, _ = scenario_k1
    cfg = IntegratorConfig.for_wave(params, 0.0, 2.0, steps_per_period=200)
    samples = [0.0, 0.5, 1.0, 2.0]
    series = integrate_moving_frame(params, 0.3, -0.2, cfg, sample_times=samples)
    assert list(series.t) == samples
    with pytest.raises(ParameterDomainError):
        integrate_moving_frame(params, 0.3, -0.2, cfg, sample_times=[0.0, 2.5])
    with pytest.raises(ParameterDomainError):
        integrate_moving_frame(params, 0.3, -0.2, cfg, sample_times=[0.5, 0.5])


def test_dense_output_matches_knots(scenario_k1):
    """Interpolating exactly at knot times returns the knot states."""
    params, _ = scenario_k1
    cfg = IntegratorConfig.for_wave(params, 0.0, 1.0, steps_per_period=300)
    base = integrate_moving_frame(params, 0.9, -0.3, cfg)
    knots = [float(v) for v in base.t[:: 7]]
    again = integrate_moving_frame(params, 0.9, -0.3, cfg, sample_times=knots)
    take = base.X[:: 7], base.Z[:: 7]
    assert np.max(np.abs(again.X - take[0])) <= 1e-13
    assert np.max(np.abs(again.Z - take[1])) <= 1e-13


def test_residual_report_shape(scenario_k1):
    params, _ = scenario_k1
    X0, Z0 = math.pi / 3.0, 0.0
    beta = beta_from_initial(
        params, Z0, params.k * params.A * math.exp(Z0) * math.sin(X0)
    ).minus
    cfg = IntegratorConfig.for_wave(params, 0.0, 2.0 * params.wave_period)
    series = integrate_moving_frame(params, X0, Z0, cfg)
    rep = residual_full_Z_ode(params, beta, series)
    assert rep.n_samples > 1000
    assert rep.max_residual_eq1 <= 1e-8
    assert rep.max_residual_eq2 <= 1e-10
    assert rep.rms_residual <= rep.max_residual_eq1 + rep.max_residual_eq2
    # The trajectory crosses turning points, so windows were excluded.
    assert len(rep.excluded_windows) >= 1
    for lo, hi in rep.excluded_windows:
        assert lo < hi


def test_residual_flags_wrong_constant(scenario_k1):
    params, _ = scenario_k1
    cfg = IntegratorConfig.for_wave(params, 0.0, params.wave_period)
    series = integrate_moving_frame(params, math.pi / 3.0, 0.0, cfg)
    Z0 = 0.0
    X0 = math.pi / 3.0
    beta = (
        params.k * params.c * Z0
        - params.k * params.A * math.exp(Z0) * math.cos(X0)
    )
    rep_good = residual_full_Z_ode(params, beta, series)
    rep_bad = residual_full_Z_ode(params, beta + 0.5, series)
    assert rep_bad.max_residual_eq1 > 100.0 * max(rep_good.max_residual_eq1, 1e-12)

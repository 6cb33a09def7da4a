"""Reference ODE integrators for validating the closed-form paths.

Two hand-rolled steppers over plain float tuples: classic fixed-step
RK4 and adaptive RKF45 (Fehlberg 4(5) with local extrapolation).  Dense
output between accepted knots uses cubic Hermite interpolation, which
keeps the interpolation error below the local truncation error of
either stepper.

Three systems are wrapped:

* the physical particle system x' = u(x, z, t), z' = v(x, z, t);
* the moving-frame system X' = kA e^Z cos X - kc, Z' = kA e^Z sin X;
* the truncated vertical model Z'' = P'(Z)/2 for a cubic P, with an
  escape event at |Z| > 10^3 and a tail correction that converts the
  event time into the true blow-up time via the remaining-time integral
  t_inf - t_e = integral from Z_e to infinity of dZ/sqrt(P(Z) + E0).
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .cubic_analysis import CubicCoeffs
from .errors import ContractViolationError, ParameterDomainError, StiffnessError
from .trajectories import TrajectorySeries, ZSeries
from .wave_field import TAU, WaveParams

State = tuple[float, ...]
RHS = Callable[[float, State], State]

# Escape threshold for the truncated vertical model.
Z_ESCAPE = 1e3

# Event location stops refining once the step is this small.
EVENT_DT = 1e-13

# Adaptive steps below this (relative to |t|) raise StiffnessError.
MIN_ADAPTIVE_DT = 1e-14

_METHODS = ("rk4", "rk45")


@dataclass(frozen=True)
class IntegratorConfig:
    """Time window and stepper settings for one integration run."""

    t_start: float
    t_end: float
    dt: float
    method: str = "rk4"
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10

    def __post_init__(self):
        if not (
            math.isfinite(self.t_start)
            and math.isfinite(self.t_end)
            and self.t_end > self.t_start
        ):
            raise ParameterDomainError(
                f"need finite t_end > t_start, got [{self.t_start}, {self.t_end}]"
            )
        if not (math.isfinite(self.dt) and 0.0 < self.dt <= self.t_end - self.t_start):
            raise ParameterDomainError(
                f"dt must lie in (0, t_end - t_start], got {self.dt}"
            )
        if self.method not in _METHODS:
            raise ParameterDomainError(
                f"method must be one of {_METHODS}, got {self.method!r}"
            )
        if self.abs_tol <= 0.0 or self.rel_tol <= 0.0:
            raise ParameterDomainError("tolerances must be positive")

    @classmethod
    def for_wave(
        cls,
        params: WaveParams,
        t_start: float,
        t_end: float,
        steps_per_period: int = 2000,
        method: str = "rk4",
    ) -> "IntegratorConfig":
        """Step size tied to the wave period, 2000 steps per period by default."""
        if steps_per_period < 1:
            raise ParameterDomainError("steps_per_period must be positive")
        dt = params.wave_period / steps_per_period
        dt = min(dt, t_end - t_start)
        return cls(t_start=t_start, t_end=t_end, dt=dt, method=method)


@dataclass(frozen=True)
class ResidualReport:
    """How well a sampled path satisfies the untruncated vertical system.

    max_residual_eq1 bounds |Z'^2 - (k^2 A^2 e^{2Z} - (kcZ - beta)^2)|,
    the energy form; max_residual_eq2 bounds |Z' - kA e^Z sin X|, the
    kinematic form, which amplifies the same gap near turning points.
    Samples inside excluded_windows (turning-point neighbourhoods where
    |Z'| < 1% of its peak, and overflow territory |Z| > 300) do not
    contribute; n_samples counts the contributing ones.
    """

    max_residual_eq1: float
    max_residual_eq2: float
    rms_residual: float
    n_samples: int
    excluded_windows: tuple[tuple[float, float], ...]


def integrate_full(
    params: WaveParams,
    x0: float,
    z0: float,
    cfg: IntegratorConfig,
    sample_times: Sequence[float] | None = None,
) -> TrajectorySeries:
    """Integrate the physical particle system x' = u, z' = v.

    Returns a trajectory tagged ``oracle-full``; moving-frame samples are
    derived through X = k(x - ct), Z = kz, and dZdt is k v along the path.
    """
    k = params.k
    c = params.c
    A = params.A

    def rhs(t: float, y: State) -> State:
        x, z = y
        theta = math.remainder(k * (x - c * t), TAU)
        envelope = A * math.exp(k * z)
        return (envelope * math.cos(theta), envelope * math.sin(theta))

    t, ys, dys, _ = _integrate(rhs, (x0, z0), cfg, sample_times, event=None)
    x = np.array([y[0] for y in ys])
    z = np.array([y[1] for y in ys])
    v = np.array([dy[1] for dy in dys])
    return TrajectorySeries(
        k=k,
        c=c,
        t=np.asarray(t),
        x=x,
        z=z,
        X=k * (x - c * np.asarray(t)),
        Z=k * z,
        case_tag="oracle-full",
        dZdt=k * v,
    )


def integrate_moving_frame(
    params: WaveParams,
    X0: float,
    Z0: float,
    cfg: IntegratorConfig,
    sample_times: Sequence[float] | None = None,
) -> TrajectorySeries:
    """Integrate the moving-frame system for (X, Z) directly.

    Equivalent to integrate_full up to the frame map; integrating here
    avoids the growing phase k c t and its rounding.
    """
    k = params.k
    c = params.c
    A = params.A

    def rhs(t: float, y: State) -> State:
        X, Z = y
        envelope = k * A * math.exp(Z)
        return (envelope * math.cos(X) - k * c, envelope * math.sin(X))

    t_list, ys, dys, _ = _integrate(rhs, (X0, Z0), cfg, sample_times, event=None)
    t = np.asarray(t_list)
    X = np.array([y[0] for y in ys])
    Z = np.array([y[1] for y in ys])
    dZdt = np.array([dy[1] for dy in dys])
    return TrajectorySeries(
        k=k,
        c=c,
        t=t,
        x=c * t + X / k,
        z=Z / k,
        X=X,
        Z=Z,
        case_tag="oracle-full",
        dZdt=dZdt,
    )


def integrate_truncated(
    coeffs: CubicCoeffs,
    Z0: float,
    dZdt0: float,
    cfg: IntegratorConfig,
    sample_times: Sequence[float] | None = None,
) -> ZSeries:
    """Integrate the truncated vertical model Z'' = P'(Z)/2.

    The first-order form is (Z, V)' = (V, P'(Z)/2), which conserves
    E = V^2 - P(Z).  Integration stops when |Z| crosses 10^3; for an
    upward escape the returned blowup_time is the event time plus the
    analytic remaining time to infinity, which converges because
    P grows cubically.
    """

    def rhs(t: float, y: State) -> State:
        Z, V = y
        return (V, 0.5 * coeffs.derivative(Z))

    def escaped(y: State) -> bool:
        return abs(y[0]) > Z_ESCAPE

    if escaped((Z0, dZdt0)):
        raise ParameterDomainError(f"initial Z={Z0} already beyond the escape threshold")

    t_list, ys, dys, event = _integrate(
        rhs, (Z0, dZdt0), cfg, sample_times, event=escaped
    )
    blowup = None
    if event is not None:
        t_event, y_event = event
        Z_e, V_e = y_event
        if Z_e > 0.0 and V_e > 0.0:
            E0 = dZdt0 * dZdt0 - coeffs.evaluate(Z0)
            blowup = t_event + _time_to_infinity(coeffs, Z_e, E0)
    return ZSeries(
        t=np.asarray(t_list),
        Z=np.array([y[0] for y in ys]),
        dZdt=np.array([y[1] for y in ys]),
        blowup_time=blowup,
    )


def residual_full_Z_ode(
    params: WaveParams, beta: float, series: TrajectorySeries
) -> ResidualReport:
    """Residuals of a sampled path against the untruncated vertical system.

    Checks both the energy form Z'^2 = k^2 A^2 e^{2Z} - (kcZ - beta)^2
    and the kinematic form Z' = kA e^Z sin X.  For closed-form series
    built from the truncated cubic, eq1 equals the truncation gap
    k^2 A^2 |e^{2Z} - 1 - 2Z - 2Z^2 - (4/3)Z^3| exactly; for oracle
    series it measures first-integral drift.  Turning-point
    neighbourhoods and |Z| > 300 are excluded (see ResidualReport).
    """
    t = series.t
    Z = series.Z
    dZdt = series.dZdt
    if dZdt is None:
        if t.size < 2:
            raise ContractViolationError("cannot difference a single-sample series")
        dZdt = np.gradient(Z, t)
    k = params.k
    kA = k * params.A
    kc = k * params.c

    include = np.abs(Z) <= 300.0
    peak = np.max(np.abs(dZdt[include])) if np.any(include) else 0.0
    include &= np.abs(dZdt) >= 0.01 * peak

    windows = _excluded_windows(t, ~include)
    if not np.any(include):
        return ResidualReport(0.0, 0.0, 0.0, 0, windows)

    Zi = Z[include]
    Xi = series.X[include]
    Vi = dZdt[include]
    envelope = kA * np.exp(Zi)
    eq1 = np.abs(Vi * Vi - (envelope * envelope - (kc * Zi - beta) ** 2))
    eq2 = np.abs(Vi - envelope * np.sin(Xi))
    rms = math.sqrt((np.sum(eq1 * eq1) + np.sum(eq2 * eq2)) / (2.0 * Zi.size))
    return ResidualReport(
        max_residual_eq1=float(np.max(eq1)),
        max_residual_eq2=float(np.max(eq2)),
        rms_residual=rms,
        n_samples=int(Zi.size),
        excluded_windows=windows,
    )


def _excluded_windows(
    t: np.ndarray, excluded: np.ndarray
) -> tuple[tuple[float, float], ...]:
    """Contiguous runs of excluded samples as (t_lo, t_hi) windows."""
    windows = []
    start = None
    for i, flag in enumerate(excluded):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            windows.append((float(t[start]), float(t[i - 1])))
            start = None
    if start is not None:
        windows.append((float(t[start]), float(t[-1])))
    return tuple(windows)


def _time_to_infinity(coeffs: CubicCoeffs, Z_e: float, E0: float) -> float:
    """Remaining time from Z_e to the blow-up, integral of dZ/sqrt(P(Z)+E0).

    Substituting Z = Z_e + u^2/(1-u)^2 maps the half line to u in [0, 1)
    with a finite integrand whose u -> 1 limit is 2/sqrt(a3); 200-node
    Gauss-Legendre quadrature then resolves it to well below 1e-6.
    """
    nodes, weights = np.polynomial.legendre.leggauss(200)
    u = 0.5 * (nodes + 1.0)
    w = 0.5 * weights
    v = (u / (1.0 - u)) ** 2
    speed_sq = coeffs.evaluate(Z_e + v) + E0
    if np.any(speed_sq <= 0.0):
        raise ContractViolationError(
            "energy integrand not positive beyond the escape point"
        )
    g = 2.0 * u / (1.0 - u) ** 3 / np.sqrt(speed_sq)
    return float(np.sum(w * g))


def _integrate(
    rhs: RHS,
    y0: State,
    cfg: IntegratorConfig,
    sample_times: Sequence[float] | None,
    event: Callable[[State], bool] | None,
) -> tuple[list[float], list[State], list[State], tuple[float, State] | None]:
    """Run one integration, returning samples and the event hit, if any.

    Knots are accumulated with their derivatives; requested sample times
    (or the knots themselves when none are given) come out of a cubic
    Hermite evaluation.  The event callable marks forbidden states; the
    crossing is located by step bisection down to EVENT_DT and the last
    good state is reported as the event state.
    """
    knots_t = [cfg.t_start]
    knots_y = [y0]
    knots_f = [rhs(cfg.t_start, y0)]
    if not all(math.isfinite(v) for v in knots_f[0]):
        raise StiffnessError(
            "right-hand side not finite at the initial state",
            t_last=cfg.t_start,
            state_last=y0,
        )
    event_hit: tuple[float, State] | None = None

    t = cfg.t_start
    y = y0
    h = cfg.dt
    adaptive = cfg.method == "rk45"
    while t < cfg.t_end:
        h_try = min(h, cfg.t_end - t)
        if adaptive:
            step = _rkf45_step(rhs, t, y, h_try)
            if step is None:
                h = 0.5 * h_try
                if h < MIN_ADAPTIVE_DT * max(1.0, abs(t)):
                    raise StiffnessError(
                        "adaptive step size underflow", t_last=t, state_last=y
                    )
                continue
            y_new, err_scale = step
            tol = max(
                cfg.abs_tol,
                cfg.rel_tol * max(max(abs(v) for v in y), max(abs(v) for v in y_new)),
            )
            if err_scale > tol:
                h = h_try * max(0.2, 0.9 * (tol / err_scale) ** 0.2)
                if h < MIN_ADAPTIVE_DT * max(1.0, abs(t)):
                    raise StiffnessError(
                        "adaptive step size underflow", t_last=t, state_last=y
                    )
                continue
            h = h_try * min(5.0, max(0.2, 0.9 * (tol / max(err_scale, 1e-300)) ** 0.2))
        else:
            y_new = _rk4_step(rhs, t, y, h_try)

        bad = not all(math.isfinite(v) for v in y_new)
        if bad or (event is not None and event(y_new)):
            if event is None:
                raise StiffnessError(
                    "state became non-finite", t_last=t, state_last=y
                )
            t_ev, y_ev = _locate_event(rhs, t, y, h_try, event)
            knots_t.append(t_ev)
            knots_y.append(y_ev)
            knots_f.append(rhs(t_ev, y_ev))
            event_hit = (t_ev, y_ev)
            break
        t += h_try
        y = y_new
        knots_t.append(t)
        knots_y.append(y)
        knots_f.append(rhs(t, y))

    if sample_times is None:
        return knots_t, knots_y, knots_f, event_hit
    return _dense_output(rhs, knots_t, knots_y, knots_f, sample_times, event_hit)


def _dense_output(
    rhs: RHS,
    knots_t: list[float],
    knots_y: list[State],
    knots_f: list[State],
    sample_times: Sequence[float],
    event_hit: tuple[float, State] | None,
) -> tuple[list[float], list[State], list[State], tuple[float, State] | None]:
    """Cubic Hermite evaluation at requested times within the solved span."""
    out_t: list[float] = []
    out_y: list[State] = []
    out_f: list[State] = []
    t_lo = knots_t[0]
    t_hi = knots_t[-1]
    previous = None
    for ts in sample_times:
        if previous is not None and ts <= previous:
            raise ParameterDomainError("sample times must increase strictly")
        previous = ts
        if ts < t_lo - 1e-12 or ts > t_hi + 1e-12:
            if event_hit is not None and ts > t_hi:
                continue  # cut short by the event
            raise ParameterDomainError(
                f"sample time {ts} outside the integrated span [{t_lo}, {t_hi}]"
            )
        ts = min(max(ts, t_lo), t_hi)
        i = bisect_right(knots_t, ts) - 1
        i = min(max(i, 0), len(knots_t) - 2)
        y = _hermite(
            knots_t[i], knots_y[i], knots_f[i],
            knots_t[i + 1], knots_y[i + 1], knots_f[i + 1],
            ts,
        )
        out_t.append(ts)
        out_y.append(y)
        out_f.append(rhs(ts, y))
    if not out_t:
        raise ParameterDomainError("no sample times fell inside the integrated span")
    return out_t, out_y, out_f, event_hit


def _hermite(
    t0: float, y0: State, f0: State, t1: float, y1: State, f1: State, ts: float
) -> State:
    h = t1 - t0
    if h <= 0.0:
        return y0
    s = (ts - t0) / h
    h00 = (1.0 + 2.0 * s) * (1.0 - s) ** 2
    h10 = s * (1.0 - s) ** 2
    h01 = s * s * (3.0 - 2.0 * s)
    h11 = s * s * (s - 1.0)
    return tuple(
        h00 * a + h10 * h * fa + h01 * b + h11 * h * fb
        for a, fa, b, fb in zip(y0, f0, y1, f1)
    )


def _locate_event(
    rhs: RHS,
    t: float,
    y: State,
    h: float,
    event: Callable[[State], bool],
) -> tuple[float, State]:
    """Bisect the step until the last good state is within EVENT_DT of the event."""
    while h > EVENT_DT:
        h_half = 0.5 * h
        y_mid = _rk4_step(rhs, t, y, h_half)
        good = all(math.isfinite(v) for v in y_mid) and not event(y_mid)
        if good:
            t += h_half
            y = y_mid
        h = h_half
    return t, y


def _rk4_step(rhs: RHS, t: float, y: State, h: float) -> State:
    k1 = rhs(t, y)
    k2 = rhs(t + 0.5 * h, _axpy(y, 0.5 * h, k1))
    k3 = rhs(t + 0.5 * h, _axpy(y, 0.5 * h, k2))
    k4 = rhs(t + h, _axpy(y, h, k3))
    return tuple(
        yi + h / 6.0 * (a + 2.0 * b + 2.0 * c + d)
        for yi, a, b, c, d in zip(y, k1, k2, k3, k4)
    )


def _rkf45_step(
    rhs: RHS, t: float, y: State, h: float
) -> tuple[State, float] | None:
    """One Fehlberg 4(5) trial step: (5th-order state, error norm) or None."""
    k1 = rhs(t, y)
    k2 = rhs(t + h / 4.0, _comb(y, h, (1.0 / 4.0,), (k1,)))
    k3 = rhs(t + 3.0 * h / 8.0, _comb(y, h, (3.0 / 32.0, 9.0 / 32.0), (k1, k2)))
    k4 = rhs(
        t + 12.0 * h / 13.0,
        _comb(
            y, h,
            (1932.0 / 2197.0, -7200.0 / 2197.0, 7296.0 / 2197.0),
            (k1, k2, k3),
        ),
    )
    k5 = rhs(
        t + h,
        _comb(
            y, h,
            (439.0 / 216.0, -8.0, 3680.0 / 513.0, -845.0 / 4104.0),
            (k1, k2, k3, k4),
        ),
    )
    k6 = rhs(
        t + 0.5 * h,
        _comb(
            y, h,
            (-8.0 / 27.0, 2.0, -3544.0 / 2565.0, 1859.0 / 4104.0, -11.0 / 40.0),
            (k1, k2, k3, k4, k5),
        ),
    )
    y5 = _comb(
        y, h,
        (16.0 / 135.0, 6656.0 / 12825.0, 28561.0 / 56430.0, -9.0 / 50.0, 2.0 / 55.0),
        (k1, k3, k4, k5, k6),
    )
    y4 = _comb(
        y, h,
        (25.0 / 216.0, 1408.0 / 2565.0, 2197.0 / 4104.0, -1.0 / 5.0),
        (k1, k3, k4, k5),
    )
    if not all(math.isfinite(v) for v in y5):
        return None
    err = max(abs(a - b) for a, b in zip(y5, y4))
    return y5, err


def _axpy(y: State, h: float, k: State) -> State:
    return tuple(yi + h * ki for yi, ki in zip(y, k))


def _comb(y: State, h: float, coeffs: tuple[float, ...], ks: tuple[State, ...]) -> State:
    out = list(y)
    for c, k in zip(coeffs, ks):
        for i, ki in enumerate(k):
            out[i] += h * c * ki
    return tuple(out)

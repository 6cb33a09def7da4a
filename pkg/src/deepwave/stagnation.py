"""Stagnation levels of the vertical motion below the wave.

A particle's vertical rate vanishes exactly where the squared envelope
meets the squared phase term,

    k^2 A^2 e^{2Z} = (k c Z - beta)^2,

which factors into two strictly convex branches

    f_plus(Z)  = k |A| e^Z + (k c Z - beta),
    f_minus(Z) = k |A| e^Z - (k c Z - beta).

A root of f_minus is a level where cos X = sign(A) (crest-aligned for
A > 0); a root of f_plus has the opposite alignment.  For c > 0 the
plus branch is strictly increasing, so it carries at most one root
while the minus branch carries at most two: never more than three
stagnation levels in total (the roles swap for direction = -1).

Each branch is scanned on a uniform grid, sign changes are polished by
a bisection-Newton hybrid, and a missed double root is recovered from
the branch's analytic minimum: f is convex with f'' = k|A| e^Z, so the
only critical point is Z_c = log(-sigma c / |A|) when it exists, and
|f(Z_c)| <= 1e-8 with f'(Z_c) = 0 flags a tangency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ContractViolationError,
    EmptyReportError,
    ParameterDomainError,
)
from .trajectories import TrajectorySeries
from .wave_field import WaveParams

# Grid windows extending beyond this would overflow exp().
Z_OVERFLOW = 700.0

RESIDUAL_RTOL = 1e-10
TANGENCY_TOL = 1e-8
DEDUPE_TOL = 1e-9

# Placement of a stagnation level relative to a sampled trajectory.
ON_TRAJECTORY = "on-trajectory"
INSIDE_BAND = "inside-band"
OUTSIDE_BAND = "outside-band"


@dataclass(frozen=True)
class StagnationSolution:
    """One stagnation level Z_star.

    branch is "plus" or "minus" (see module docstring); residual is
    |k|A| e^{Z*} - |k c Z* - beta||; tangency marks a double root found
    at the branch minimum rather than by a sign change, in which case
    the residual bound of regular roots does not apply.
    """

    Z_star: float
    branch: str
    residual: float
    tangency: bool = False


@dataclass(frozen=True)
class StagnationReport:
    solutions: tuple[StagnationSolution, ...]
    search_interval: tuple[float, float]
    grid_size: int


@dataclass(frozen=True)
class AnnotatedStagnation:
    """A stagnation level with its placement relative to one trajectory."""

    solution: StagnationSolution
    placement: str


def solve_stagnation(
    params: WaveParams,
    beta: float,
    Z_min: float = -20.0,
    Z_max: float = 5.0,
    grid: int = 4096,
) -> StagnationReport:
    """All stagnation levels in [Z_min, Z_max].

    Raises
    ------
    ParameterDomainError
        For an empty or overflowing window, or grid < 1000.
    EmptyReportError
        When the window contains no stagnation level.
    """
    if not (math.isfinite(Z_min) and math.isfinite(Z_max) and Z_min < Z_max):
        raise ParameterDomainError(
            f"need finite Z_min < Z_max, got [{Z_min}, {Z_max}]"
        )
    if Z_max > Z_OVERFLOW:
        raise ParameterDomainError(
            f"Z_max={Z_max} reaches exp() overflow territory (limit {Z_OVERFLOW})"
        )
    if grid < 1000:
        raise ParameterDomainError(f"grid must be at least 1000, got {grid}")
    if not math.isfinite(beta):
        raise ParameterDomainError(f"beta must be finite, got {beta}")

    kA = params.k * abs(params.A)
    kc = params.k * params.c
    Zg = np.linspace(Z_min, Z_max, grid)
    env = kA * np.exp(Zg)

    solutions: list[StagnationSolution] = []
    for sigma, branch in ((1.0, "plus"), (-1.0, "minus")):
        fg = env + sigma * (kc * Zg - beta)
        solutions.extend(
            _branch_roots(Zg, fg, kA, kc, beta, sigma, branch)
        )

    solutions.sort(key=lambda s: s.Z_star)
    deduped: list[StagnationSolution] = []
    for sol in solutions:
        if deduped and abs(sol.Z_star - deduped[-1].Z_star) <= DEDUPE_TOL:
            continue
        deduped.append(sol)
    if not deduped:
        raise EmptyReportError(
            f"no stagnation level in [{Z_min}, {Z_max}] for beta={beta}"
        )
    return StagnationReport(
        solutions=tuple(deduped),
        search_interval=(Z_min, Z_max),
        grid_size=grid,
    )


def stagnation_on_trajectory(
    report: StagnationReport, series: TrajectorySeries
) -> tuple[AnnotatedStagnation, ...]:
    """Place each stagnation level relative to a sampled trajectory.

    "on-trajectory" means some Z sample lies within 1e-6 of the level;
    "inside-band" means the level lies in the sampled Z range (for the
    peakon the band is unbounded below, since Z covers every level below
    its sampled peak at some time outside any finite window);
    "outside-band" otherwise.
    """
    Z = series.Z
    z_lo = -math.inf if series.case_tag == "peakon" else float(np.min(Z))
    z_hi = float(np.max(Z))
    annotated = []
    for sol in report.solutions:
        gap = float(np.min(np.abs(Z - sol.Z_star)))
        if gap < 1e-6:
            placement = ON_TRAJECTORY
        elif z_lo <= sol.Z_star <= z_hi:
            placement = INSIDE_BAND
        else:
            placement = OUTSIDE_BAND
        annotated.append(AnnotatedStagnation(solution=sol, placement=placement))
    return tuple(annotated)


def _branch_roots(
    Zg: np.ndarray,
    fg: np.ndarray,
    kA: float,
    kc: float,
    beta: float,
    sigma: float,
    branch: str,
) -> list[StagnationSolution]:
    def f(Z: float) -> float:
        return kA * math.exp(Z) + sigma * (kc * Z - beta)

    def fprime(Z: float) -> float:
        return kA * math.exp(Z) + sigma * kc

    roots: list[float] = []
    for i in np.flatnonzero(np.sign(fg[:-1]) * np.sign(fg[1:]) <= 0.0):
        lo = float(Zg[i])
        hi = float(Zg[i + 1])
        if fg[i] == 0.0 and fg[i + 1] == 0.0:
            continue  # flat stretch, impossible for a convex branch
        if fg[i + 1] == 0.0 and i + 2 < Zg.size:
            continue  # counted by the next interval
        roots.append(_refine(f, fprime, lo, hi))

    out = []
    for Z_star in roots:
        residual = _residual(kA, kc, beta, Z_star)
        if residual > RESIDUAL_RTOL * max(kA * math.exp(Z_star), 1.0):
            raise ContractViolationError(
                f"stagnation root at Z={Z_star} kept residual {residual:.3e}"
            )
        out.append(
            StagnationSolution(
                Z_star=Z_star, branch=branch, residual=residual, tangency=False
            )
        )

    # Tangency sweep: the unique critical point of this convex branch.
    if sigma * kc < 0.0:
        Zc = math.log(-sigma * kc / kA)
        if Zg[0] <= Zc <= Zg[-1] and abs(f(Zc)) <= TANGENCY_TOL:
            if all(abs(Zc - r) > 1e-6 for r in roots):
                out.append(
                    StagnationSolution(
                        Z_star=Zc,
                        branch=branch,
                        residual=_residual(kA, kc, beta, Zc),
                        tangency=True,
                    )
                )
    return out


def _residual(kA: float, kc: float, beta: float, Z: float) -> float:
    return abs(kA * math.exp(Z) - abs(kc * Z - beta))


def _refine(f, fprime, lo: float, hi: float) -> float:
    """Bisection-Newton hybrid on a bracketing interval."""
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    x = 0.5 * (lo + hi)
    for _ in range(200):
        fx = f(x)
        if fx == 0.0:
            return x
        if flo * fx < 0.0:
            hi = x
        else:
            lo, flo = x, fx
        if hi - lo <= 1e-13 * max(1.0, abs(x)):
            break
        dfx = fprime(x)
        if dfx != 0.0:
            x_newton = x - fx / dfx
            if lo < x_newton < hi:
                x = x_newton
                continue
        x = 0.5 * (lo + hi)
    return 0.5 * (lo + hi)

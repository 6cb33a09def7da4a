"""Cubic classification against dense scans, mpmath roots, and quadrature."""

from __future__ import annotations

import math
import random

import mpmath
import numpy as np
import pytest

from deepwave import (
    Case1Reduction,
    Case2Reduction,
    CubicCoeffs,
    DegenerateRootsError,
    WaveParams,
    build_cubic,
    classify_roots,
    complete_K,
    discriminant,
)
from deepwave.cubic_analysis import reduce_case1, reduce_case2
from deepwave.errors import ContractViolationError


def draw_wave(rng: random.Random) -> tuple[WaveParams, float]:
    params = WaveParams(
        k=rng.uniform(0.5, 6.0),
        a=rng.uniform(0.05, 0.3),
        g=rng.uniform(1.0, 20.0),
    )
    return params, rng.uniform(-3.0, 3.0)


def brute_real_root_count(coeffs: CubicCoeffs, grid: np.ndarray) -> int:
    """Sign changes of P on a dense grid; valid when roots are separated
    by more than two grid steps and lie inside the window."""
    P = ((coeffs.a3 * grid + coeffs.a2) * grid + coeffs.a1) * grid + coeffs.a0
    return int(np.count_nonzero(np.diff(np.signbit(P))))


def test_build_cubic_against_high_precision():
    """Coefficients recomputed at 50 digits for the three scenarios."""
    for k, beta in ((1.0, 1.0), (2.0, -1.0), (4.0, 1.0)):
        params = WaveParams(k=k, a=0.1, g=9.8)
        coeffs = build_cubic(params, beta)
        with mpmath.workdps(50):
            mk = mpmath.mpf(k)
            ma = mpmath.mpf("0.1")
            mg = mpmath.mpf("9.8")
            mb = mpmath.mpf(beta)
            mc = mpmath.sqrt(mg / mk)
            mA = ma * mc * mk
            kA_sq = mk * mk * mA * mA
            ref = (
                4 * kA_sq / 3,
                mk * mk * (2 * mA * mA - mc * mc),
                2 * mk * (mk * mA * mA + mb * mc),
                kA_sq - mb * mb,
            )
            got = (coeffs.a3, coeffs.a2, coeffs.a1, coeffs.a0)
            for g_i, r_i in zip(got, ref):
                assert g_i == pytest.approx(float(r_i), rel=1e-14, abs=1e-300)


def test_leading_coefficient_encodes_velocity_scale():
    for k, beta in ((1.0, 1.0), (2.0, -1.0), (4.0, 1.0)):
        params = WaveParams(k=k, a=0.1, g=9.8)
        coeffs = build_cubic(params, beta)
        assert math.sqrt(3.0 * coeffs.a3) / 2.0 == pytest.approx(
            params.k * abs(params.A), rel=1e-14
        )


def test_scenario_roots_against_mpmath():
    """classify_roots vs mpmath.polyroots at 50 digits."""
    expected_cases = {1.0: Case1Reduction, 2.0: Case1Reduction, 4.0: Case2Reduction}
    for k, beta in ((1.0, 1.0), (2.0, -1.0), (4.0, 1.0)):
        params = WaveParams(k=k, a=0.1, g=9.8)
        coeffs = build_cubic(params, beta)
        red = classify_roots(coeffs)
        assert isinstance(red, expected_cases[k])
        with mpmath.workdps(50):
            roots = mpmath.polyroots(
                [coeffs.a3, coeffs.a2, coeffs.a1, coeffs.a0], maxsteps=200
            )
            real_roots = sorted(
                float(r.real) for r in roots if abs(r.imag) < 1e-30
            )
        if isinstance(red, Case1Reduction):
            assert len(real_roots) == 3
            for mine, ref in zip((red.Z1, red.Z2, red.Z3), real_roots):
                assert mine == pytest.approx(ref, rel=1e-12)
        else:
            assert len(real_roots) == 1
            assert red.Z0 == pytest.approx(real_roots[0], rel=1e-12)


def test_classification_against_dense_scan():
    """Root counts vs a 10^6-point scan of [-1e4, 1e4] on 500 draws."""
    rng = random.Random(20260819)
    grid = np.linspace(-1e4, 1e4, 1_000_000)
    draws = 0
    while draws < 500:
        params, beta = draw_wave(rng)
        coeffs = build_cubic(params, beta)
        try:
            red = classify_roots(coeffs)
        except DegenerateRootsError:
            continue  # genuinely borderline draw, counts would be unstable
        if isinstance(red, Case1Reduction):
            roots = (red.Z1, red.Z2, red.Z3)
            # The scan cannot split roots closer than two grid steps.
            if min(b - a for a, b in zip(roots, roots[1:])) < 0.05:
                continue
        else:
            roots = (red.Z0,)
        if max(abs(r) for r in roots) > 9e3:
            continue
        assert brute_real_root_count(coeffs, grid) == len(roots)
        draws += 1


def test_root_residuals_and_reconstruction():
    rng = random.Random(7)
    for _ in range(300):
        params, beta = draw_wave(rng)
        coeffs = build_cubic(params, beta)
        try:
            red = classify_roots(coeffs)
        except DegenerateRootsError:
            continue
        scale = coeffs.scale()
        if isinstance(red, Case1Reduction):
            for Z in (red.Z1, red.Z2, red.Z3):
                assert abs(coeffs.evaluate(Z)) <= 1e-10 * scale
            # Rebuild the coefficients from the roots (Vieta).
            s1 = red.Z1 + red.Z2 + red.Z3
            s2 = red.Z1 * red.Z2 + red.Z1 * red.Z3 + red.Z2 * red.Z3
            s3 = red.Z1 * red.Z2 * red.Z3
            rebuilt = (
                coeffs.a3,
                -coeffs.a3 * s1,
                coeffs.a3 * s2,
                -coeffs.a3 * s3,
            )
        else:
            assert abs(coeffs.evaluate(red.Z0)) <= 1e-10 * scale
            assert red.p * red.p - 4.0 * red.q < 0.0
            rebuilt = (
                coeffs.a3,
                coeffs.a3 * (red.p - red.Z0),
                coeffs.a3 * (red.q - red.p * red.Z0),
                -coeffs.a3 * red.q * red.Z0,
            )
        for got, ref in zip(
            (coeffs.a3, coeffs.a2, coeffs.a1, coeffs.a0), rebuilt
        ):
            assert abs(got - ref) <= 1e-10 * scale


def test_sign_structure():
    """a3 > 0 forces the sign pattern -, +, -, + across the real roots."""
    rng = random.Random(99)
    checked = 0
    while checked < 60:
        params, beta = draw_wave(rng)
        coeffs = build_cubic(params, beta)
        try:
            red = classify_roots(coeffs)
        except DegenerateRootsError:
            continue
        if not isinstance(red, Case1Reduction):
            continue
        spans = [
            (red.Z1, red.Z2, 1.0),
            (red.Z2, red.Z3, -1.0),
        ]
        for lo, hi, sign in spans:
            pad = 1e-3 * (hi - lo)
            for Z in np.linspace(lo + pad, hi - pad, 100):
                assert sign * coeffs.evaluate(float(Z)) > 0.0
        below = red.Z1 - 1.0
        above = red.Z3 + 1.0
        assert coeffs.evaluate(below) < 0.0
        assert coeffs.evaluate(above) > 0.0
        checked += 1


@pytest.mark.parametrize("s", [1.0, 1e-8, 1e8])
def test_degenerate_double_root_rejected(s):
    # s (Z - 1)^2 (Z - 2) has a vanishing discriminant at every scale.
    coeffs = CubicCoeffs(a3=s, a2=-4.0 * s, a1=5.0 * s, a0=-2.0 * s)
    with pytest.raises(DegenerateRootsError):
        classify_roots(coeffs)


def test_zero_leading_coefficient_rejected():
    with pytest.raises(ContractViolationError):
        classify_roots(CubicCoeffs(a3=0.0, a2=1.0, a1=0.0, a0=-1.0))


def test_discriminant_sign_matches_root_count():
    rng = random.Random(31)
    for _ in range(200):
        params, beta = draw_wave(rng)
        coeffs = build_cubic(params, beta)
        try:
            red = classify_roots(coeffs)
        except DegenerateRootsError:
            continue
        delta = discriminant(coeffs)
        if isinstance(red, Case1Reduction):
            assert delta > 0.0
        else:
            assert delta < 0.0


def test_case1_period_against_quadrature(scenario_k1, scenario_k2):
    """2 K(k1^2) / C1 vs direct quadrature of dZ / sqrt(P) over [Z1, Z2].

    The substitution Z = Z1 + (Z2 - Z1) sin^2(phi) removes both
    square-root endpoint singularities, leaving a smooth integrand
    2 / sqrt(a3 (Z3 - Z(phi))) on [0, pi/2].
    """
    for params, beta in (scenario_k1, scenario_k2):
        coeffs = build_cubic(params, beta)
        red = classify_roots(coeffs)
        assert isinstance(red, Case1Reduction)
        nodes, weights = np.polynomial.legendre.leggauss(120)
        phi = 0.5 * (nodes + 1.0) * (math.pi / 2.0)
        w = weights * (math.pi / 4.0)
        Zphi = red.Z1 + (red.Z2 - red.Z1) * np.sin(phi) ** 2
        half_period = np.sum(w * 2.0 / np.sqrt(coeffs.a3 * (red.Z3 - Zphi)))
        closed = 2.0 * complete_K(red.k1sq) / red.C1
        assert closed == pytest.approx(2.0 * float(half_period), rel=1e-12)


def test_case1_reduction_shape(scenario_k1):
    params, beta = scenario_k1
    red = classify_roots(build_cubic(params, beta))
    assert red.Z1 < red.Z2 < red.Z3
    assert 0.0 < red.k1sq < 1.0
    assert red.C1 > 0.0
    assert red.k1sq == pytest.approx(
        (red.Z2 - red.Z1) / (red.Z3 - red.Z1), rel=1e-14
    )


def test_case2_reduction_shape(scenario_k4):
    params, beta = scenario_k4
    red = classify_roots(build_cubic(params, beta))
    coeffs = build_cubic(params, beta)
    R = math.sqrt(red.Z0 * red.Z0 + red.p * red.Z0 + red.q)
    assert 0.0 < red.k2sq < 1.0
    # C2^2 = (4/3) k^2 A^2 R = a3 R ties the frequency to the radius.
    assert red.C2 * red.C2 == pytest.approx(coeffs.a3 * R, rel=1e-12)
    assert red.k2sq == pytest.approx(
        0.5 * (1.0 - (red.Z0 + red.p / 2.0) / R), rel=1e-12
    )


def test_reduce_case1_rejects_unordered_roots():
    params = WaveParams(k=1.0, a=0.1, g=9.8)
    with pytest.raises(DegenerateRootsError):
        reduce_case1(1.0, 1.0, 2.0, params)


def test_reduce_case2_rejects_real_quadratic():
    params = WaveParams(k=1.0, a=0.1, g=9.8)
    # p^2 - 4q >= 0 means the "complex pair" is actually real.
    with pytest.raises(ContractViolationError):
        reduce_case2(0.5, -3.0, 2.0, params)

"""The self-check battery must pass on healthy scenarios, degrade to FAIL
results (not exceptions) on broken ones, and print deterministically."""

from __future__ import annotations

import pytest

from deepwave.cubic_analysis import Case1Reduction, build_cubic, classify_roots
from deepwave.errors import DegenerateRootsError
from deepwave.validation import CheckResult, run_battery
from deepwave.wave_field import WaveParams

EXPECTED_NAMES = [
    "dispersion",
    "elliptic-identities",
    "classification",
    "closed-form-vs-oracle",
    "drift",
    "frame-equivalence",
    "stagnation-oracle",
    "untruncated-residual",
    "rk4-convergence",
    "peakon-residual",
    "corrupted-beta-guard",
]


def test_battery_passes_on_reference_scenarios(all_scenarios):
    for label, params, beta in all_scenarios:
        results = run_battery(params, beta)
        assert [r.name for r in results] == EXPECTED_NAMES
        failed = [r for r in results if not r.passed]
        assert not failed, f"{label}: {[(r.name, r.detail) for r in failed]}"


def test_every_result_carries_a_detail(scenario_k1):
    params, beta = scenario_k1
    for res in run_battery(params, beta):
        assert isinstance(res, CheckResult)
        assert res.detail.strip()
        assert "\n" not in res.detail  # one report line per check


def test_battery_report_is_deterministic(scenario_k2):
    params, beta = scenario_k2
    first = run_battery(params, beta)
    second = run_battery(params, beta)
    assert first == second


def test_degenerate_scenario_fails_without_raising(scenario_k1):
    params, _ = scenario_k1
    beta = _degenerate_beta(params, 33.0, 34.0)
    results = run_battery(params, beta)
    assert [r.name for r in results] == EXPECTED_NAMES
    failed = [r for r in results if not r.passed]
    assert failed
    assert any("DegenerateRootsError" in r.detail for r in failed)
    # checks that never touch the cubic still pass
    by_name = {r.name: r for r in results}
    assert by_name["dispersion"].passed
    assert by_name["elliptic-identities"].passed


def _degenerate_beta(params: WaveParams, lo: float, hi: float) -> float:
    def tag_is_case1(b: float) -> bool:
        return isinstance(classify_roots(build_cubic(params, b)), Case1Reduction)

    assert tag_is_case1(lo) and not tag_is_case1(hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        try:
            if tag_is_case1(mid):
                lo = mid
            else:
                hi = mid
        except DegenerateRootsError:
            return mid
    pytest.fail("no degenerate discriminant window between the two cases")

"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the line per
criterion; the whole suite is sized to finish in a few minutes.
"""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from svetlichny import (
    Direction,
    SvetlichnySetting,
    chsh_max_pair,
    estimate_tau_gghz,
    expectation,
    from_amplitudes,
    gghz,
    maximal_slice,
    maximize_svetlichny,
    optimal_setting_gghz,
    optimal_setting_ms,
    smax_gghz_analytic,
    smax_ms_analytic,
    svetlichny_operator,
    swap_qubits,
    three_tangle,
)
from svetlichny.maximize import verify_family_bounds, verify_family_bounds_many
from svetlichny.states import PureState3

from conftest import haar_state, random_direction, random_unitary2

SQRT2 = math.sqrt(2.0)
KINK_THETA1 = 0.5 * math.asin(1.0 / math.sqrt(3.0))
GRID_BUDGET = 16
GRID_SEED = 123


def _report(number: int, text: str) -> None:
    print(f"ACCEPTANCE PASS [{number:2d}] {text}")


@pytest.fixture(scope="module")
def gghz_grid():
    rows = []
    for theta1 in np.linspace(0.0, math.pi / 4, 21):
        tau = math.sin(2.0 * theta1) ** 2
        s = maximize_svetlichny(gghz(theta1), budget=GRID_BUDGET, seed=GRID_SEED).s_max
        rows.append((theta1, tau, s))
    return rows


def test_criterion_01_ghz_maximal_violation():
    result = maximize_svetlichny(gghz(math.pi / 4), budget=64, seed=42)
    assert abs(result.s_max - 4.0 * SQRT2) < 1e-4
    _report(1, f"GHZ numerical maximum {result.s_max:.6f} = 4*sqrt(2) within 1e-4")


def test_criterion_02_gghz_analytic_curve(gghz_grid):
    for _, tau, s in gghz_grid:
        assert abs(s - smax_gghz_analytic(tau)) < 1e-4
    values = [s for _, _, s in gghz_grid]
    taus = [tau for _, tau, _ in gghz_grid]
    dip_index = int(np.argmin(values))
    nearest_kink = int(np.argmin([abs(t - 1.0 / 3.0) for t in taus]))
    assert dip_index == nearest_kink
    # The dip bottom itself sits between grid points; evaluate at the kink.
    s_kink = maximize_svetlichny(gghz(KINK_THETA1), budget=GRID_BUDGET, seed=GRID_SEED).s_max
    assert abs(s_kink - 4.0 * math.sqrt(2.0 / 3.0)) < 1e-3
    _report(2, f"GGHZ curve matches both branches; dip at grid point {dip_index}, kink value {s_kink:.6f}")


def test_criterion_03_nonviolation_threshold(gghz_grid):
    checked = 0
    for _, tau, s in gghz_grid:
        if tau <= 0.5 - 1e-3:
            assert s <= 4.0 + 1e-4
            checked += 1
    assert checked > 0
    _report(3, f"no violation at any of the {checked} grid points with tau <= 1/2")


def test_criterion_04_ms_analytic_curve():
    violations = 0
    for theta3 in np.linspace(0.0, math.pi / 2, 21):
        tau = math.sin(theta3) ** 2
        s = maximize_svetlichny(maximal_slice(theta3), budget=GRID_BUDGET, seed=GRID_SEED).s_max
        assert abs(s - smax_ms_analytic(tau)) < 1e-4
        if tau >= 0.01:
            assert s > 4.0
            violations += 1
    assert violations > 0
    _report(4, f"MS curve matches 4*sqrt(1+tau); {violations} grid points violate strictly")


def test_criterion_05_canonical_angle_sets():
    rng = np.random.default_rng(505)
    for theta1 in rng.uniform(0.0, math.pi / 4, 10):
        e = expectation(gghz(theta1), svetlichny_operator(optimal_setting_gghz(theta1)))
        assert abs(e - smax_gghz_analytic(math.sin(2 * theta1) ** 2)) < 1e-8
    for theta3 in rng.uniform(0.0, math.pi / 2, 10):
        e = expectation(maximal_slice(theta3), svetlichny_operator(optimal_setting_ms(theta3)))
        assert abs(e - smax_ms_analytic(math.sin(theta3) ** 2)) < 1e-8
    _report(5, "canonical GGHZ and MS settings reproduce the closed forms within 1e-8")


def test_criterion_06_family_bounds():
    rng = np.random.default_rng(2026)
    triples = rng.uniform(0.0, math.pi / 2, size=(1000, 3))
    reports = verify_family_bounds_many(triples, budget=10, seed=7)
    worst_lower = min(r.lower_slack for r in reports)
    worst_upper = min(r.upper_slack for r in reports)
    assert worst_lower >= -1e-6
    assert worst_upper >= -1e-6

    for tau in np.linspace(0.35, 1.0, 10):
        theta1 = 0.5 * math.asin(math.sqrt(tau))
        report = verify_family_bounds(theta1, math.pi / 2, math.pi / 2, budget=GRID_BUDGET, seed=61)
        assert abs(report.upper_slack) <= 1e-5
    for tau in np.linspace(0.0, 1.0, 10):
        theta3 = math.asin(math.sqrt(tau))
        report = verify_family_bounds(math.pi / 4, math.pi / 2, theta3, budget=GRID_BUDGET, seed=62)
        assert abs(report.lower_slack) <= 1e-5
    _report(
        6,
        f"1000 random family states inside both bounds (worst slacks {worst_lower:.1e}, "
        f"{worst_upper:.1e}); GGHZ/MS corners saturate within 1e-5",
    )


def test_criterion_07_tangle_properties():
    rng = np.random.default_rng(707)
    for _ in range(500):
        state = haar_state(rng)
        tau = three_tangle(state)
        for i, j in [(1, 2), (1, 3), (2, 3)]:
            assert abs(three_tangle(swap_qubits(state, i, j)) - tau) < 1e-9
        u = np.kron(np.kron(random_unitary2(rng), random_unitary2(rng)), random_unitary2(rng))
        assert abs(three_tangle(PureState3(u @ state.amplitudes)) - tau) < 1e-9
    for theta1 in np.linspace(0.0, math.pi / 2, 100):
        assert abs(three_tangle(gghz(theta1)) - math.sin(2 * theta1) ** 2) < 1e-10
    for theta3 in np.linspace(0.0, math.pi / 2, 100):
        assert abs(three_tangle(maximal_slice(theta3)) - math.sin(theta3) ** 2) < 1e-10
    _report(7, "3-tangle permutation/local-unitary invariant (500 states) and closed forms hold")


def test_criterion_08_chsh_relation():
    rng = np.random.default_rng(808)
    for _ in range(50):
        psi = rng.normal(size=4) + 1j * rng.normal(size=4)
        psi /= np.linalg.norm(psi)
        concurrence = 2.0 * abs(psi[0] * psi[3] - psi[1] * psi[2])
        expected = 2.0 * math.sqrt(1.0 + concurrence**2)
        assert abs(chsh_max_pair(psi, budget=12, seed=88) - expected) < 1e-6
    _report(8, "CHSH maximum equals 2*sqrt(1 + C^2) within 1e-6 on 50 random pairs")


def test_criterion_09_biseparable_bound():
    rng = np.random.default_rng(909)
    worst = 0.0
    for k in range(10000):
        pair = rng.normal(size=4) + 1j * rng.normal(size=4)
        single = rng.normal(size=2) + 1j * rng.normal(size=2)
        position = k % 3 + 1
        if position == 3:
            amps = np.kron(pair, single)
        elif position == 1:
            amps = np.kron(single, pair)
        else:
            amps = np.kron(pair, single).reshape(2, 2, 2).transpose(0, 2, 1).reshape(8)
        state = from_amplitudes(amps)
        setting = SvetlichnySetting(*[random_direction(rng) for _ in range(6)])
        e = abs(expectation(state, svetlichny_operator(setting)))
        worst = max(worst, e)
        assert e <= 4.0 + 1e-9
    _report(9, f"10^4 biseparable states keep |<S>| <= 4 (largest seen {worst:.6f})")


def test_criterion_10_tau_from_shots():
    for theta1 in (math.pi / 12, math.pi / 8, math.pi / 4):
        est = estimate_tau_gghz(gghz(theta1), shots_per_setting=10**6, seed=1010)
        assert abs(est.tau_hat - math.sin(2 * theta1) ** 2) < 0.02
    _report(10, "shot-based tau estimates within 0.02 at tau = 1/4, 1/2, 1 (10^6 shots/setting)")


def test_criterion_11_determinism(tmp_path):
    def run(*args):
        return subprocess.run(
            [sys.executable, "-m", "svetlichny", *args], capture_output=True, text=True
        )

    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    sweep_args = ("sweep", "--family", "gghz", "--points", "5", "--budget", "6", "--seed", "31")
    run(*sweep_args, "--out", str(a))
    run(*sweep_args, "--out", str(b))
    assert a.read_bytes() == b.read_bytes()

    est_args = ("estimate", "--family", "gghz", "--theta1", "0.6", "--shots", "50000", "--seed", "17")
    first = run(*est_args)
    second = run(*est_args)
    assert first.stdout == second.stdout
    json.loads(first.stdout)  # well-formed
    _report(11, "identical seeds give byte-identical sweep CSV and estimate JSON")

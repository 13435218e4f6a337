"""Rate-function layer: the two q-space equations, the closed-form
optimizer bundle, regime classification, and the hidden-model scale-back.

Grid values are compared against the frozen 50-digit oracle output first
(tight), then against the published 4-decimal rows (loose), so a failure
distinguishes "wrong math" from "wrong rounding".
"""

import math

import numpy as np
import pytest

from partial_l1.errors import DegenerateModelError, DomainError, SolverError
from partial_l1.ldpcore import (
    ON_CURVE_TOL,
    HiddenLdpSolution,
    LdpSolution,
    Regime,
    ldp_solution,
    ldp_solution_hidden,
    rate_curve,
    solve_beta0,
    solve_beta1,
)
from partial_l1.ptcore import Model, hidden_to_partial, solve_alpha_w
from partial_l1 import specfun

from reference_values import (
    GRID_A,
    GRID_B,
    NEAR_CURVE_A,
    RATE_EXTREME,
    TABLE_1_PUBLISHED,
    TABLE_3_PUBLISHED,
)

BETA_A = 0.25896
ETA_A = 0.5
BETA_B = 0.27153
ETA_B = 0.75

_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
_SQRT_1_OVER_PI = math.sqrt(1.0 / math.pi)


def _beta1_residual(alpha, beta, eta, beta1, q1):
    lhs = (1.0 - beta1) * _SQRT_2_OVER_PI * math.exp(-q1 * q1) / (
        (alpha - eta * beta) * math.sqrt(2.0) * q1
    )
    return abs(lhs - 1.0)


def _beta0_residual(alpha, beta, eta, q0):
    c = (alpha - eta * beta) / (alpha - beta)
    return abs(_SQRT_1_OVER_PI * math.exp(-q0 * q0) / q0 - c * specfun.erfc(q0))


def _admissible_grid(count, seed):
    rng = np.random.default_rng(seed)
    pts = []
    while len(pts) < count:
        alpha = float(rng.uniform(0.08, 0.95))
        beta = float(rng.uniform(0.01, 0.95)) * alpha
        eta = float(rng.uniform(0.0, 0.98))
        if 0.0 < beta < alpha:
            pts.append((alpha, beta, eta))
    return pts


# ----------------------------------------------------------------------
# frozen-grid agreement
# ----------------------------------------------------------------------

def test_partial_solutions_match_oracle_grid():
    for alpha, row in GRID_A.items():
        s = ldp_solution(alpha, BETA_A, ETA_A)
        got = (s.beta1, s.beta0, s.q1, s.q0, s.nu, s.a0, s.c3, s.gamma, s.rate)
        for name, g, want in zip(LdpSolution.__annotations__, got, row):
            assert g == pytest.approx(want, rel=1e-12, abs=1e-12), (alpha, name)


def test_hidden_solutions_match_oracle_grid():
    for alpha, row in GRID_B.items():
        s = ldp_solution_hidden(alpha, BETA_B, ETA_B)
        got = (s.beta1_hp, s.beta0_hp, s.beta1, s.beta0, s.q1, s.q0,
               s.nu, s.a0, s.c3, s.gamma, s.rate)
        for i, (g, want) in enumerate(zip(got, row)):
            assert g == pytest.approx(want, rel=1e-12, abs=1e-12), (alpha, i)


def test_partial_solutions_match_published_rows():
    for alpha, (b1, b0, nu, a0, c3, gamma, rate) in TABLE_1_PUBLISHED.items():
        s = ldp_solution(alpha, BETA_A, ETA_A)
        assert s.beta1 == pytest.approx(b1, abs=1e-4)
        assert s.beta0 == pytest.approx(b0, abs=1e-4)
        assert s.nu == pytest.approx(nu, abs=1e-4)
        assert s.a0 == pytest.approx(a0, abs=1e-4)
        assert s.c3 == pytest.approx(c3, abs=1e-4)
        assert s.gamma == pytest.approx(gamma, abs=1e-4)
        assert s.rate == pytest.approx(rate, abs=1e-4)


def test_hidden_solutions_match_published_rows():
    for alpha, (b1, b0, nu, a0, c3, gamma, rate) in TABLE_3_PUBLISHED.items():
        s = ldp_solution_hidden(alpha, BETA_B, ETA_B)
        assert s.beta1_hp == pytest.approx(b1, abs=1e-4)
        assert s.beta0_hp == pytest.approx(b0, abs=1e-4)
        assert s.nu == pytest.approx(nu, abs=1e-4)
        assert s.a0 == pytest.approx(a0, abs=1e-4)
        assert s.c3 == pytest.approx(c3, abs=1e-4)
        assert s.gamma == pytest.approx(gamma, abs=1e-4)
        assert s.rate == pytest.approx(rate, abs=1e-4)


# ----------------------------------------------------------------------
# the two scalar equations
# ----------------------------------------------------------------------

def test_solve_beta1_documented_points():
    b1, _ = solve_beta1(0.5, BETA_A, ETA_A)
    assert b1 == pytest.approx(0.2590, abs=1e-4)
    b1, _ = solve_beta1(0.4, BETA_A, ETA_A)
    assert b1 == pytest.approx(0.2095, abs=1e-4)


def test_solve_beta1_collapses_on_curve():
    alpha_w = solve_alpha_w(BETA_A, ETA_A, Model.PARTIAL)
    b1, _ = solve_beta1(alpha_w, BETA_A, ETA_A)
    assert b1 == pytest.approx(BETA_A, abs=1e-9)


def test_solve_beta0_documented_points():
    b0, _ = solve_beta0(0.5, BETA_A, ETA_A)
    assert b0 == pytest.approx(0.2590, abs=1e-4)
    b0, _ = solve_beta0(0.4, BETA_A, ETA_A)
    assert b0 == pytest.approx(-0.2306, abs=1e-4)
    b0, _ = solve_beta0(0.6, BETA_A, ETA_A)
    assert b0 == pytest.approx(0.4946, abs=1e-4)


def test_defining_residuals_over_admissible_grid():
    # both equation residuals <= 1e-11 on 200 random admissible points
    for alpha, beta, eta in _admissible_grid(200, seed=31):
        beta1, q1 = solve_beta1(alpha, beta, eta)
        assert _beta1_residual(alpha, beta, eta, beta1, q1) <= 1e-11
        assert beta1 == pytest.approx(1.0 - (1.0 - alpha) / specfun.erf(q1), rel=1e-12)
        beta0, q0 = solve_beta0(alpha, beta, eta)
        assert _beta0_residual(alpha, beta, eta, q0) <= 1e-11
        assert beta0 == pytest.approx(1.0 - (1.0 - alpha) / specfun.erf(q0), rel=1e-12)


def test_beta0_requires_unknown_support():
    # eta = 1 makes c = 1: the lower equation loses its root
    with pytest.raises(DegenerateModelError):
        solve_beta0(0.5, 0.25, 1.0)


def test_admissibility_checks():
    with pytest.raises(DomainError):
        ldp_solution(0.5, 0.5, 0.5)
    with pytest.raises(DomainError):
        ldp_solution(0.5, 0.0, 0.5)
    with pytest.raises(DomainError):
        ldp_solution(0.5, 0.25, 1.5)
    with pytest.raises(DomainError):
        ldp_solution_hidden(0.5, 0.6, 0.5)  # (2-eta)*beta = 0.9 but beta >= alpha


# ----------------------------------------------------------------------
# closed-form bundle structure
# ----------------------------------------------------------------------

def test_optimizer_algebra_holds_off_curve():
    for alpha, beta, eta in _admissible_grid(60, seed=7):
        s = ldp_solution(alpha, beta, eta)
        if s.regime is Regime.ON_CURVE:
            continue
        assert s.nu == pytest.approx(math.sqrt(2.0) * s.q1, rel=1e-14)
        assert s.a0 == pytest.approx(s.nu / (math.sqrt(2.0) * s.q0), rel=1e-13)
        assert s.gamma == pytest.approx(math.sqrt(alpha) / (2.0 * s.a0), rel=1e-13)
        assert s.c3 == pytest.approx(
            (1.0 - s.a0 ** 2) * math.sqrt(alpha) / s.a0, rel=1e-10, abs=1e-13
        )
        # gamma = c3 / (2 (1 - a0^2)) whenever a0 != 1
        assert s.gamma == pytest.approx(
            s.c3 / (2.0 * (1.0 - s.a0 ** 2)), rel=1e-10
        )


def test_rate_is_nonpositive_everywhere():
    for alpha, beta, eta in _admissible_grid(120, seed=13):
        s = ldp_solution(alpha, beta, eta)
        assert s.rate <= 0.0


def test_rate_survives_extreme_admissible_corners():
    # tiny beta or eta near 1 push q0 past the point where erf(q0) rounds
    # to 1 and beta0 collapses onto alpha; the log term must be evaluated
    # through erfc(q0) to stay finite there
    for (alpha, beta, eta), want in RATE_EXTREME.items():
        s = ldp_solution(alpha, beta, eta)
        assert math.isfinite(s.rate)
        assert s.rate == pytest.approx(want, rel=1e-12)


def test_regime_sign_convention():
    for alpha, (want_rate, want_c3) in NEAR_CURVE_A.items():
        s = ldp_solution(alpha, BETA_A, ETA_A)
        assert s.rate == pytest.approx(want_rate, rel=1e-9)
        assert s.c3 == pytest.approx(want_c3, rel=1e-9)
        if alpha < 0.5:
            assert s.regime is Regime.LOWER_TAIL
            assert s.c3 < 0.0 and s.a0 > 1.0
        else:
            assert s.regime is Regime.UPPER_TAIL
            assert s.c3 > 0.0 and s.a0 < 1.0


def test_on_curve_point_snaps_to_degenerate_solution():
    alpha_w = solve_alpha_w(BETA_A, ETA_A, Model.PARTIAL)
    s = ldp_solution(alpha_w, BETA_A, ETA_A)
    assert s.regime is Regime.ON_CURVE
    assert s.rate == 0.0
    assert s.c3 == 0.0
    assert s.a0 == 1.0
    assert s.beta1 == BETA_A and s.beta0 == BETA_A
    assert s.q1 == s.q0
    assert s.nu == pytest.approx(math.sqrt(2.0) * s.q1, rel=1e-15)
    assert s.gamma == pytest.approx(0.5 * math.sqrt(alpha_w), rel=1e-15)


def test_near_curve_points_are_not_snapped():
    # the documented benchmark beta is a 5-decimal rounding, so alpha = 0.5
    # sits 1.4e-6 off the exact curve: well outside the 1e-9 snap window
    s = ldp_solution(0.5, BETA_A, ETA_A)
    assert s.regime is Regime.LOWER_TAIL
    assert s.c3 != 0.0
    assert abs(0.5 - solve_alpha_w(BETA_A, ETA_A, Model.PARTIAL)) > ON_CURVE_TOL


# ----------------------------------------------------------------------
# documented single-point examples
# ----------------------------------------------------------------------

def test_upper_tail_documented_point():
    s = ldp_solution(0.6, BETA_A, ETA_A)
    for got, want in zip((s.nu, s.a0, s.c3, s.gamma, s.rate),
                         (0.8218, 0.6534, 0.6793, 0.5927, -0.0220)):
        assert got == pytest.approx(want, abs=1e-4)


def test_lower_tail_documented_point():
    s = ldp_solution(0.4, BETA_A, ETA_A)
    for got, want in zip((s.nu, s.a0, s.c3, s.gamma, s.rate),
                         (1.1725, 1.7900, -0.7788, 0.1767, -0.0270)):
        assert got == pytest.approx(want, abs=1e-4)


@pytest.mark.xfail(
    reason="alpha = 0.5 with the 5-decimal benchmark beta is 1.4e-6 off "
    "the exact curve, leaving c3 = -9.4e-6 and a0 - 1 = 6.6e-6; a 1e-6 "
    "tolerance on both is unattainable at these rounded parameters",
    strict=True,
)
def test_benchmark_center_collapses_to_exact_degeneracy():
    s = ldp_solution(0.5, BETA_A, ETA_A)
    assert s.c3 == pytest.approx(0.0, abs=1e-6)
    assert s.a0 == pytest.approx(1.0, abs=1e-6)
    assert s.rate == pytest.approx(0.0, abs=1e-6)


def test_benchmark_center_attainable_envelope():
    # honest companion: the leftover degeneracy gap at the rounded
    # parameters, frozen from the oracle
    s = ldp_solution(0.5, BETA_A, ETA_A)
    assert s.c3 == pytest.approx(0.0, abs=2e-5)
    assert s.a0 == pytest.approx(1.0, abs=2e-5)
    assert s.rate == pytest.approx(0.0, abs=1e-9)
    assert s.c3 == pytest.approx(GRID_A[0.50][6], rel=1e-9)
    assert s.a0 == pytest.approx(GRID_A[0.50][5], rel=1e-12)


def test_hidden_upper_tail_documented_point():
    s = ldp_solution_hidden(0.6, BETA_B, ETA_B)
    got = (s.beta1_hp, s.beta0_hp, s.nu, s.a0, s.c3, s.gamma, s.rate)
    want = (0.3122, 0.4422, 0.9464, 0.5848, 0.8715, 0.6623, -0.0284)
    for g, w in zip(got, want):
        assert g == pytest.approx(w, abs=1e-4)


def test_hidden_lower_tail_documented_point():
    s = ldp_solution_hidden(0.4, BETA_B, ETA_B)
    assert s.beta0_hp == pytest.approx(-0.3336, abs=1e-4)
    assert s.c3 == pytest.approx(-1.4259, abs=1e-4)


@pytest.mark.xfail(
    reason="same rounding as the partial benchmark: the hidden center "
    "alpha = 0.5 sits 3.4e-6 off-curve with c3 = -3.1e-5",
    strict=True,
)
def test_hidden_benchmark_center_collapses_to_exact_degeneracy():
    s = ldp_solution_hidden(0.5, BETA_B, ETA_B)
    assert s.c3 == pytest.approx(0.0, abs=1e-6)
    assert s.rate == pytest.approx(0.0, abs=1e-6)


def test_hidden_benchmark_center_attainable_envelope():
    s = ldp_solution_hidden(0.5, BETA_B, ETA_B)
    assert s.c3 == pytest.approx(0.0, abs=1e-4)
    assert s.rate == pytest.approx(0.0, abs=1e-9)
    assert s.c3 == pytest.approx(GRID_B[0.50][8], rel=1e-9)


# ----------------------------------------------------------------------
# hidden scale-back
# ----------------------------------------------------------------------

def test_hidden_equals_transformed_partial():
    rng = np.random.default_rng(41)
    checked = 0
    while checked < 50:
        eta_hp = float(rng.uniform(0.0, 1.0))
        alpha = float(rng.uniform(0.1, 0.9))
        beta_hp = float(rng.uniform(0.05, 0.95)) * alpha / (2.0 - eta_hp)
        if beta_hp <= 0.0:
            continue
        hid = ldp_solution_hidden(alpha, beta_hp, eta_hp)
        bt, et = hidden_to_partial(beta_hp, eta_hp)
        par = ldp_solution(alpha, bt, et)
        scale = 2.0 - eta_hp
        assert abs(hid.beta1_hp * scale - par.beta1) <= 1e-12
        assert abs(hid.beta0_hp * scale - par.beta0) <= 1e-12
        for field in ("nu", "a0", "c3", "gamma", "rate", "q1", "q0"):
            assert abs(getattr(hid, field) - getattr(par, field)) <= 1e-12, field
        assert hid.regime is par.regime
        checked += 1


def test_hidden_solution_type_carries_both_parameterizations():
    s = ldp_solution_hidden(0.55, BETA_B, ETA_B)
    assert isinstance(s, HiddenLdpSolution)
    assert isinstance(s, LdpSolution)
    assert s.beta1_hp == pytest.approx(s.beta1 / (2.0 - ETA_B), rel=1e-15)
    assert s.beta0_hp == pytest.approx(s.beta0 / (2.0 - ETA_B), rel=1e-15)


# ----------------------------------------------------------------------
# rate_curve
# ----------------------------------------------------------------------

def test_rate_curve_matches_published_rates_partial():
    grid = [0.40, 0.45, 0.50, 0.55, 0.60]
    want = [-0.0270, -0.0063, -0.0000, -0.0057, -0.0220]
    out = rate_curve(BETA_A, ETA_A, Model.PARTIAL, grid)
    assert [a for a, _ in out] == grid
    for (_, s), w in zip(out, want):
        assert s.rate == pytest.approx(w, abs=1e-4)


def test_rate_curve_matches_published_rates_hidden():
    grid = [0.40, 0.45, 0.50, 0.55, 0.60]
    want = [-0.0413, -0.0090, 0.0, -0.0075, -0.0284]
    out = rate_curve(BETA_B, ETA_B, Model.HIDDEN_PARTIAL, grid)
    for (_, s), w in zip(out, want):
        assert s.rate == pytest.approx(w, abs=1e-4)


def test_rate_curve_on_curve_single_point():
    alpha_w = solve_alpha_w(BETA_A, ETA_A, Model.PARTIAL)
    out = rate_curve(BETA_A, ETA_A, Model.PARTIAL, [alpha_w])
    assert len(out) == 1
    assert abs(out[0][1].rate) <= 1e-9


def test_rate_decreases_away_from_curve():
    alpha_w = solve_alpha_w(BETA_A, ETA_A, Model.PARTIAL)
    up = [ldp_solution(a, BETA_A, ETA_A).rate
          for a in np.linspace(alpha_w + 0.01, 0.9, 12)]
    assert all(x > y for x, y in zip(up, up[1:]))
    down = [ldp_solution(a, BETA_A, ETA_A).rate
            for a in np.linspace(alpha_w - 0.01, 0.30, 12)]
    assert all(x > y for x, y in zip(down, down[1:]))


def test_rate_curve_validates_grid_and_propagates():
    with pytest.raises(DomainError):
        rate_curve(BETA_A, ETA_A, Model.PARTIAL, [0.5, 0.4])
    with pytest.raises(SolverError, match="alpha"):
        # first grid point is below beta: inadmissible, and the error
        # must say at which alpha the sweep died
        rate_curve(BETA_A, ETA_A, Model.PARTIAL, [0.2, 0.5])

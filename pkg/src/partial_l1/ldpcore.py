"""Large-deviations rate function for partial and hidden-partial recovery.

Two scalar equations pin the whole solution bundle.  Both are solved in
q-space where they are strictly monotone on explicit brackets:

  beta1:  (1-alpha)*sqrt(2/pi)*exp(-q^2) / (erf(q)*(alpha-eta*beta)*sqrt(2)*q) = 1
  beta0:  sqrt(1/pi)*exp(-q0^2)/q0 = c*erfc(q0),   c = (alpha-eta*beta)/(alpha-beta)

with beta_i = 1 - (1-alpha)/erf(q_i).  The closed-form optimizers follow:

  nu = sqrt(2)*q1,  A0 = q1/q0,  c3 = (1-A0^2)*sqrt(alpha)/A0,  gamma = sqrt(alpha)/(2*A0)

and the rate is

  I = (alpha-eta*beta)*log(q1/q0) + (1-beta)*log((1-beta)/(1-beta1))
      + beta*(1-eta)*log((alpha-beta)*(1-beta0) / ((alpha-beta0)*(1-beta1))).

On the PT curve everything collapses (beta1 = beta0 = beta, A0 = 1, c3 = 0,
rate = 0); points within 1e-9 of the curve in alpha are snapped to that
exact degenerate solution so the sign of c3 is never decided by rounding.
"""

import enum
import math
from dataclasses import dataclass

from . import specfun
from .errors import DegenerateModelError, DomainError, SolverError
from .ptcore import Model, _bisect_newton, hidden_to_partial, solve_alpha_w

__all__ = [
    "Regime",
    "LdpSolution",
    "HiddenLdpSolution",
    "solve_beta1",
    "solve_beta0",
    "ldp_solution",
    "ldp_solution_hidden",
    "rate_curve",
    "ON_CURVE_TOL",
]

_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
_SQRT_1_OVER_PI = math.sqrt(1.0 / math.pi)
_SQRT2 = math.sqrt(2.0)

# |alpha - alpha_w| below this is classified as on the PT curve.
ON_CURVE_TOL = 1e-9


class Regime(enum.Enum):
    UPPER_TAIL = "upper-tail"
    LOWER_TAIL = "lower-tail"
    ON_CURVE = "on-curve"


@dataclass(frozen=True)
class LdpSolution:
    """Closed-form LDP solution bundle at one (alpha, beta, eta)."""

    beta1: float
    beta0: float
    q1: float
    q0: float
    nu: float
    a0: float
    c3: float
    gamma: float
    rate: float
    regime: Regime


@dataclass(frozen=True)
class HiddenLdpSolution(LdpSolution):
    """Hidden-model solution: the transformed-partial bundle plus the
    scaled-back beta1/beta0 in the hidden parameterization."""

    beta1_hp: float = math.nan
    beta0_hp: float = math.nan


def _check_admissible(alpha, beta, eta):
    if not 0.0 < beta < alpha < 1.0:
        raise DomainError(
            "LDP solutions need 0 < beta < alpha < 1, got alpha=%r beta=%r"
            % (alpha, beta)
        )
    if not 0.0 <= eta <= 1.0:
        raise DomainError("eta must lie in [0, 1], got %r" % (eta,))


def solve_beta1(alpha, beta, eta):
    """Solve the upper equation; returns (beta1, q1).

    The q-space left side decreases monotonically from +inf to 0, so the
    upper bracket endpoint is found by geometric expansion from 1.
    """
    _check_admissible(alpha, beta, eta)
    denom = (alpha - eta * beta) * _SQRT2

    def g(q):
        return (1.0 - alpha) * _SQRT_2_OVER_PI * math.exp(-q * q) / (
            specfun.erf(q) * denom * q
        ) - 1.0

    hi = 1.0
    for _ in range(60):
        if g(hi) < 0.0:
            break
        hi *= 2.0
    else:
        raise SolverError("beta1 bracket expansion failed at alpha=%r beta=%r eta=%r"
                          % (alpha, beta, eta))
    q1 = _bisect_newton(g, 1e-14, hi)
    beta1 = 1.0 - (1.0 - alpha) / specfun.erf(q1)
    return beta1, q1


def solve_beta0(alpha, beta, eta):
    """Solve the lower equation; returns (beta0, q0).

    The unique root lies in (0, 1/sqrt(2c(c-1))).  beta0 may legitimately
    be negative; only q0 > 0 is structurally required.  At eta = 1 the
    constant c degenerates to 1 and the equation has no root (the whole
    support is known, so there is no lower-tail construction).
    """
    _check_admissible(alpha, beta, eta)
    c = (alpha - eta * beta) / (alpha - beta)
    if c <= 1.0:
        raise DegenerateModelError(
            "beta0 equation has no root when c = (alpha-eta*beta)/(alpha-beta) <= 1 "
            "(eta=%r, beta=%r): no unknown support remains" % (eta, beta)
        )

    def h(q):
        return _SQRT_1_OVER_PI * math.exp(-q * q) / q - c * specfun.erfc(q)

    hi = 1.0 / math.sqrt(2.0 * c * (c - 1.0))
    if h(hi) >= 0.0:
        # right endpoint clipped the root through rounding; widen once
        hi *= 1.1
        if h(hi) >= 0.0:
            raise SolverError(
                "beta0 bracket failed: h(%r)=%r at alpha=%r beta=%r eta=%r"
                % (hi, h(hi), alpha, beta, eta)
            )
    q0 = _bisect_newton(h, 1e-14, hi)
    beta0 = 1.0 - (1.0 - alpha) / specfun.erf(q0)
    return beta0, q0


def ldp_solution(alpha, beta, eta):
    """Full closed-form LDP solution for the partial model."""
    _check_admissible(alpha, beta, eta)
    alpha_w = solve_alpha_w(beta, eta, Model.PARTIAL)
    if abs(alpha - alpha_w) <= ON_CURVE_TOL:
        q = specfun.erfinv((1.0 - alpha) / (1.0 - beta))
        return LdpSolution(
            beta1=beta, beta0=beta, q1=q, q0=q,
            nu=_SQRT2 * q, a0=1.0, c3=0.0,
            gamma=0.5 * math.sqrt(alpha), rate=0.0,
            regime=Regime.ON_CURVE,
        )
    beta1, q1 = solve_beta1(alpha, beta, eta)
    beta0, q0 = solve_beta0(alpha, beta, eta)
    nu = _SQRT2 * q1
    a0 = q1 / q0
    # (1 - a0)*(1 + a0) keeps c3 accurate when a0 is near 1 (near the curve)
    c3 = (1.0 - a0) * (1.0 + a0) * math.sqrt(alpha) / a0
    gamma = math.sqrt(alpha) / (2.0 * a0)
    # last term rewritten through beta_i = 1 - (1-alpha)/erf(q_i):
    #   (alpha-beta)(1-beta0) / ((alpha-beta0)(1-beta1))
    #     = (alpha-beta) erf(q1) / ((1-alpha) erfc(q0))
    # which stays finite when q0 is large enough that erf(q0) rounds to 1
    # and beta0 collapses onto alpha (small beta, or eta near 1)
    rate = (
        (alpha - eta * beta) * math.log(q1 / q0)
        + (1.0 - beta) * math.log((1.0 - beta) / (1.0 - beta1))
        + beta * (1.0 - eta) * (
            math.log((alpha - beta) * specfun.erf(q1) / (1.0 - alpha))
            - specfun.log_erfc(q0)
        )
    )
    # the exact rate is <= 0; clamp the last-bit rounding noise right at the curve
    rate = min(rate, 0.0)
    regime = Regime.UPPER_TAIL if alpha > alpha_w else Regime.LOWER_TAIL
    return LdpSolution(
        beta1=beta1, beta0=beta0, q1=q1, q0=q0,
        nu=nu, a0=a0, c3=c3, gamma=gamma, rate=rate, regime=regime,
    )


def ldp_solution_hidden(alpha, beta_hp, eta_hp):
    """Hidden-partial LDP solution via the substitution, betas scaled back."""
    if not 0.0 <= eta_hp <= 1.0:
        raise DomainError("eta must lie in [0, 1], got %r" % (eta_hp,))
    scale = 2.0 - eta_hp
    if beta_hp <= 0.0 or scale * beta_hp >= 1.0:
        raise DomainError(
            "hidden model needs 0 < beta and (2-eta)*beta < 1, got beta=%r eta=%r"
            % (beta_hp, eta_hp)
        )
    bt, et = hidden_to_partial(beta_hp, eta_hp)
    base = ldp_solution(alpha, bt, et)
    return HiddenLdpSolution(
        beta1=base.beta1, beta0=base.beta0, q1=base.q1, q0=base.q0,
        nu=base.nu, a0=base.a0, c3=base.c3, gamma=base.gamma,
        rate=base.rate, regime=base.regime,
        beta1_hp=base.beta1 / scale, beta0_hp=base.beta0 / scale,
    )


def rate_curve(beta, eta, model, alpha_grid):
    """LDP solutions along an increasing alpha grid; errors carry the alpha."""
    alpha_grid = list(alpha_grid)
    if any(b <= a for a, b in zip(alpha_grid, alpha_grid[1:])):
        raise DomainError("alpha grid must be strictly increasing")
    solve = ldp_solution if model is Model.PARTIAL else ldp_solution_hidden
    out = []
    for a in alpha_grid:
        try:
            out.append((a, solve(a, beta, eta)))
        except (DomainError, SolverError) as exc:
            raise SolverError("rate_curve failed at alpha=%r: %s" % (a, exc)) from exc
    return out

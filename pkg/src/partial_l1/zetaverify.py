"""The zeta objective of the probabilistic route, its analytic gradient,
and an independent derivative-free minimizer.

zeta(c3, nu, A0) reproduces the LDP rate at the closed-form optimizers and
is stationary there.  The module certifies both facts numerically, hence
"verify": nothing here feeds the closed-form pipeline, it only checks it.

Variational structure (established numerically and used by the minimizer):

  upper tail   rate = min over c3 >= 0, nu >= 0, 0 < A0 < 1 of zeta
  lower tail   rate = min over c3 <= 0 of [ max over nu >= 0, A0 > 1 of zeta ]

i.e. the lower tail is a saddle: for fixed c3 < 0 the objective is
maximized in (nu, A0), and the resulting value is minimized in c3.

Stability notes: with x = nu/(sqrt(2)*A0) the first weight is

  w1 = exp(-nu^2/2)*erfcx(x)/A0 + erf(nu/sqrt(2))

which never overflows even as A0 -> 0, and 1 - A0^2 is always computed as
(1-A0)(1+A0) so points near the phase curve keep full precision.
"""

import math
from dataclasses import dataclass

from scipy.special import erfcx as _erfcx

from .errors import DomainError
from .ldpcore import Regime, ldp_solution
from . import specfun

__all__ = [
    "ZetaPoint",
    "i_sph",
    "zeta",
    "zeta_grad_analytic",
    "minimize_zeta_numeric",
]

_SQRT2 = math.sqrt(2.0)
_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ZetaPoint:
    """A candidate (c3, nu, A0) for the zeta objective."""

    c3: float
    nu: float
    a0: float

    def __post_init__(self):
        if self.nu < 0.0:
            raise DomainError("nu must be >= 0, got %r" % (self.nu,))
        if self.a0 <= 0.0:
            raise DomainError("a0 must be > 0, got %r" % (self.a0,))
        if self.a0 == 1.0 and self.c3 != 0.0:
            raise DomainError(
                "a0 = 1 is only admissible together with c3 = 0 (removable limit)"
            )


def i_sph(c3, alpha):
    """Spherical exponent term; the single formula covers both signs of c3."""
    if not 0.0 < alpha < 1.0:
        raise DomainError("alpha must lie in (0, 1), got %r" % (alpha,))
    gamma_hat = (c3 - math.sqrt(c3 * c3 + 4.0 * alpha)) / 4.0
    return gamma_hat * c3 - 0.5 * alpha * math.log1p(-c3 / (2.0 * gamma_hat))


def _check_params(alpha, beta, eta):
    if not 0.0 < beta < alpha < 1.0:
        raise DomainError(
            "zeta needs 0 < beta < alpha < 1, got alpha=%r beta=%r" % (alpha, beta)
        )
    if not 0.0 <= eta <= 1.0:
        raise DomainError("eta must lie in [0, 1], got %r" % (eta,))


def _zeta_raw(alpha, beta, eta, c3, nu, a0):
    # the optimizer-facing core: no ZetaPoint construction, barrier at a0=1
    if a0 == 1.0:
        return 0.0 if c3 == 0.0 else math.inf
    onem_a2 = (1.0 - a0) * (1.0 + a0)
    x = nu / (_SQRT2 * a0)
    expm = math.exp(-0.5 * nu * nu)
    w1 = expm * float(_erfcx(x)) / a0 + specfun.erf(nu / _SQRT2)
    log_w2 = onem_a2 * nu * nu / (2.0 * a0 * a0) - math.log(a0)
    return (
        -0.5 * c3 * c3
        + i_sph(c3, alpha)
        + (1.0 - beta) * math.log(w1)
        + beta * (1.0 - eta) * log_w2
        - beta * eta * math.log(a0)
        + 0.5 * c3 * c3 / onem_a2
    )


def zeta(alpha, beta, eta, point):
    """Evaluate the zeta objective at a ZetaPoint."""
    _check_params(alpha, beta, eta)
    return _zeta_raw(alpha, beta, eta, point.c3, point.nu, point.a0)


def zeta_grad_analytic(alpha, beta, eta, point):
    """Analytic gradient (d_c3, d_nu, d_a0); undefined at a0 = 1."""
    _check_params(alpha, beta, eta)
    c3, nu, a0 = point.c3, point.nu, point.a0
    if a0 == 1.0:
        raise DomainError("the analytic gradient requires a0 != 1")
    onem_a2 = (1.0 - a0) * (1.0 + a0)
    x = nu / (_SQRT2 * a0)
    E = float(_erfcx(x))
    G = specfun.erf(nu / _SQRT2)
    expm = math.exp(-0.5 * nu * nu)
    w1 = expm * E / a0 + G

    d_c3 = -c3 + c3 / onem_a2 + 0.5 * (c3 - math.sqrt(c3 * c3 + 4.0 * alpha))

    bracket = (
        beta * (1.0 - eta) * nu * G * a0
        + (1.0 - beta * eta) * nu * expm * E
        - (1.0 - beta) * _SQRT_2_OVER_PI * a0 * expm
    )
    d_nu = onem_a2 * bracket / (w1 * a0 ** 3)

    ell = -expm * (E * (a0 * a0 + nu * nu) - _SQRT_2_OVER_PI * a0 * nu) / (
        a0 ** 4 * w1
    )
    d_a0 = (
        (1.0 - beta) * ell
        - beta * (1.0 - eta) * nu * nu / a0 ** 3
        - beta / a0
        + c3 * c3 * a0 / (onem_a2 * onem_a2)
    )
    return d_c3, d_nu, d_a0


def _golden(f, lo, hi, tol):
    """Golden-section minimum of f on [lo, hi]; never evaluates the endpoints."""
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1 = f(x1)
    f2 = f(x2)
    while hi - lo > tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INVPHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INVPHI * (hi - lo)
            f2 = f(x2)
    if f1 <= f2:
        return x1, f1
    return x2, f2


def _coord_descent_min(f, start, boxes, rounds=600, tol=1e-10):
    """Cyclic coordinate descent with golden-section line searches.

    The round cap is generous because the descent zigzags along curved
    valleys (linear convergence, contraction factor around 0.95 per
    round on the upper-tail objective); the moved-based exit fires once
    the iterate is within ~1e-7 of the valley floor.
    """
    point = list(start)
    value = f(point)
    for _ in range(rounds):
        moved = 0.0
        for i, (lo, hi) in enumerate(boxes):
            def line(t, i=i):
                trial = list(point)
                trial[i] = t
                return f(trial)

            t_best, v_best = _golden(line, lo, hi, tol)
            if v_best < value:
                moved = max(moved, abs(t_best - point[i]))
                point[i] = t_best
                value = v_best
        if moved < 1e-8:
            break
    return point, value


def minimize_zeta_numeric(alpha, beta, eta, regime=None):
    """Derivative-free optimization of zeta; returns (ZetaPoint, value).

    Restarted from three seeds: the closed-form point scaled by 0.8 and
    1.2, plus a neutral seed.  The reduction over seeds is deterministic
    (best value, ties to the lowest seed index), so thread counts or
    evaluation order cannot change the result.
    """
    _check_params(alpha, beta, eta)
    sol = ldp_solution(alpha, beta, eta)
    if regime is None:
        regime = sol.regime
    if regime is Regime.UPPER_TAIL or regime is Regime.ON_CURVE:
        return _minimize_upper(alpha, beta, eta, sol)
    if regime is Regime.LOWER_TAIL:
        return _minimize_lower(alpha, beta, eta, sol)
    raise DomainError("unknown regime %r" % (regime,))


def _minimize_upper(alpha, beta, eta, sol):
    f = lambda p: _zeta_raw(alpha, beta, eta, p[0], p[1], p[2])
    c3_hi = max(3.0 * sol.c3, 1.0)
    nu_hi = 2.0 * sol.nu + 1.0
    boxes = [(0.0, c3_hi), (0.0, nu_hi), (0.05, 1.0 - 1e-9)]
    seeds = [
        (0.8 * sol.c3, 0.8 * sol.nu, max(0.8 * sol.a0, 0.06)),
        (min(1.2 * sol.c3, c3_hi), min(1.2 * sol.nu, nu_hi), min(1.2 * sol.a0, 1.0 - 1e-6)),
        (0.5, 1.0, 0.7),
    ]
    best = None
    for seed in seeds:
        point, value = _coord_descent_min(f, seed, boxes)
        if best is None or value < best[1]:
            best = (point, value)
    point, value = best
    return ZetaPoint(c3=point[0], nu=point[1], a0=point[2]), value


def _minimize_lower(alpha, beta, eta, sol):
    nu_hi = 2.0 * sol.nu + 1.0
    a0_hi = max(3.0 * sol.a0, 2.0)
    inner_boxes = [(0.0, nu_hi), (1.0 + 1e-9, a0_hi)]
    c3_lo = min(3.0 * sol.c3, sol.c3 - 0.5, -1e-6)
    # warm start carried across outer evaluations: the inner argmax moves
    # smoothly with c3, so each inner ascent is nearly converged already
    state = {}

    def g(c3, warm_key):
        neg = lambda p: -_zeta_raw(alpha, beta, eta, c3, p[0], p[1])
        start = state.get(warm_key, (sol.nu, min(max(1.0 + 1e-6, sol.a0), a0_hi)))
        point, neg_value = _coord_descent_min(neg, start, inner_boxes, rounds=40)
        state[warm_key] = tuple(point)
        return point, -neg_value

    seeds = [
        (0.8 * sol.c3, (0.8 * sol.nu, max(1.0 + 1e-6, 0.8 * sol.a0))),
        (1.2 * sol.c3, (min(1.2 * sol.nu, nu_hi), min(1.2 * sol.a0, a0_hi))),
        (-0.5, (1.0, 1.3)),
    ]
    best = None
    for idx, (c3_seed, inner_start) in enumerate(seeds):
        state[idx] = inner_start
        lo = max(c3_lo, min(2.0 * c3_seed, c3_seed - 0.25))

        def outer(c3, idx=idx):
            _, value = g(c3, idx)
            return value

        c3_best, value = _golden(outer, lo, 0.0, 1e-10)
        inner_point, value = g(c3_best, idx)
        if best is None or value < best[1]:
            best = ((c3_best, inner_point[0], inner_point[1]), value)
    point, value = best
    return ZetaPoint(c3=point[0], nu=point[1], a0=point[2]), value

"""Weak phase-transition characterizations and threshold solvers.

The scalar xi(alpha, beta, eta) crosses 1 exactly at the weak threshold:
it is strictly decreasing in beta on [0, alpha) and strictly increasing in
alpha on (beta, 1], which makes plain bisection unconditionally safe for
both solve_beta_w and solve_alpha_w.  The hidden-partial model reduces to
the partial one through

    beta <- (2 - eta) * beta,    eta <- 1 / (2 - eta),

and every hidden routine goes through that substitution.
"""

import enum
import math
from dataclasses import dataclass

from . import specfun
from .errors import DomainError, SolverError

__all__ = [
    "Model",
    "ModelParams",
    "PtPoint",
    "xi_partial",
    "xi_hidden",
    "solve_beta_w",
    "solve_alpha_w",
    "pt_curve",
]

_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
_SQRT2 = math.sqrt(2.0)

# Endpoint guard for bisection brackets: xi is singular as beta -> alpha.
_EPS = 1e-12


class Model(enum.Enum):
    PARTIAL = "partial"
    HIDDEN_PARTIAL = "hidden"


@dataclass(frozen=True)
class ModelParams:
    """Problem geometry (alpha = m/n, beta = k/n, eta = known fraction)."""

    model: Model
    alpha: float
    beta: float
    eta: float

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise DomainError("alpha must lie in (0, 1), got %r" % (self.alpha,))
        if not 0.0 <= self.eta <= 1.0:
            raise DomainError("eta must lie in [0, 1], got %r" % (self.eta,))
        if self.beta < 0.0:
            raise DomainError("beta must be nonnegative, got %r" % (self.beta,))
        if self.model is Model.PARTIAL:
            if self.beta >= self.alpha:
                raise DomainError(
                    "partial model requires beta < alpha, got beta=%r alpha=%r"
                    % (self.beta, self.alpha)
                )
        elif self.model is Model.HIDDEN_PARTIAL:
            if (2.0 - self.eta) * self.beta >= 1.0:
                raise DomainError(
                    "hidden model requires (2 - eta) * beta < 1, got beta=%r eta=%r"
                    % (self.beta, self.eta)
                )
            if self.beta >= self.alpha:
                raise DomainError(
                    "hidden model requires beta < alpha, got beta=%r alpha=%r"
                    % (self.beta, self.alpha)
                )
        else:
            raise DomainError("unknown model %r" % (self.model,))


@dataclass(frozen=True)
class PtPoint:
    """One point of a weak phase-transition curve.

    residual is |xi - 1| at the solution.  Points that failed to solve
    (only possible through per-point propagation in pt_curve) carry
    beta_w = nan and residual = inf.
    """

    alpha: float
    beta_w: float
    residual: float


def xi_partial(alpha, beta, eta):
    """The partial-model threshold function; equals 1 exactly on the PT curve."""
    _check_ranges(alpha, beta, eta)
    u = (1.0 - alpha) / (1.0 - beta)
    if not 0.0 < u < 1.0:
        raise DomainError(
            "xi_partial needs (1-alpha)/(1-beta) in (0,1); beta=%r >= alpha=%r"
            % (beta, alpha)
        )
    q = specfun.erfinv(u)
    return (1.0 - beta) * _SQRT_2_OVER_PI * math.exp(-q * q) / (
        (alpha - eta * beta) * _SQRT2 * q
    )


def xi_hidden(alpha, beta_hp, eta_hp):
    """Hidden-partial threshold function, written in the hidden parameters."""
    _check_ranges(alpha, beta_hp, eta_hp)
    bt = (2.0 - eta_hp) * beta_hp
    if bt >= 1.0:
        raise DomainError(
            "xi_hidden needs (2-eta)*beta < 1, got beta=%r eta=%r" % (beta_hp, eta_hp)
        )
    u = (1.0 - alpha) / (1.0 - bt)
    if not 0.0 < u < 1.0:
        raise DomainError(
            "xi_hidden erfinv argument left (0,1): (2-eta)*beta=%r >= alpha=%r"
            % (bt, alpha)
        )
    q = specfun.erfinv(u)
    return (1.0 - bt) * _SQRT_2_OVER_PI * math.exp(-q * q) / ((alpha - beta_hp) * _SQRT2 * q)


def hidden_to_partial(beta_hp, eta_hp):
    """Map hidden-partial (beta, eta) to the equivalent partial parameters."""
    return (2.0 - eta_hp) * beta_hp, 1.0 / (2.0 - eta_hp)


def solve_beta_w(alpha, eta, model):
    """Solve xi(alpha, beta, eta) = 1 for beta.

    Returns a PtPoint.  Bisection on [0, alpha - eps] (hidden: the interval
    mapped back through the substitution), then three Newton polish steps
    with a finite-difference derivative.
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError("alpha must lie in (0, 1), got %r" % (alpha,))
    if not 0.0 <= eta <= 1.0:
        raise DomainError("eta must lie in [0, 1], got %r" % (eta,))
    if model is Model.PARTIAL:
        xi = lambda b: xi_partial(alpha, b, eta)
        hi = alpha - _EPS
    elif model is Model.HIDDEN_PARTIAL:
        xi = lambda b: xi_hidden(alpha, b, eta)
        # the transformed beta must stay below alpha
        hi = alpha / (2.0 - eta) - _EPS
    else:
        raise DomainError("unknown model %r" % (model,))
    g = lambda b: xi(b) - 1.0
    beta_w = _bisect_newton(g, 0.0, hi)
    return PtPoint(alpha=alpha, beta_w=beta_w, residual=abs(g(beta_w)))


def solve_alpha_w(beta, eta, model):
    """Solve xi(alpha, beta, eta) = 1 for alpha; xi - 1 is increasing in alpha."""
    if not 0.0 < beta < 1.0:
        raise DomainError("beta must lie in (0, 1), got %r" % (beta,))
    if not 0.0 <= eta <= 1.0:
        raise DomainError("eta must lie in [0, 1], got %r" % (eta,))
    if model is Model.PARTIAL:
        xi = lambda a: xi_partial(a, beta, eta)
        lo = beta + _EPS
    elif model is Model.HIDDEN_PARTIAL:
        xi = lambda a: xi_hidden(a, beta, eta)
        bt = (2.0 - eta) * beta
        if bt >= 1.0:
            raise DomainError(
                "hidden model requires (2-eta)*beta < 1, got beta=%r eta=%r" % (beta, eta)
            )
        lo = bt + _EPS
    else:
        raise DomainError("unknown model %r" % (model,))
    g = lambda a: xi(a) - 1.0
    return _bisect_newton(g, lo, 1.0 - _EPS, increasing=True)


def pt_curve(eta, model, alpha_grid):
    """Weak-threshold curve over an increasing alpha grid.

    Solver failures are propagated per point: the failed point is marked
    with beta_w = nan, residual = inf and the sweep continues.
    """
    alpha_grid = list(alpha_grid)
    for a in alpha_grid:
        if not 0.0 < a < 1.0:
            raise DomainError("grid values must lie in (0, 1), got %r" % (a,))
    if any(b <= a for a, b in zip(alpha_grid, alpha_grid[1:])):
        raise DomainError("alpha grid must be strictly increasing")
    points = []
    for a in alpha_grid:
        try:
            points.append(solve_beta_w(a, eta, model))
        except (DomainError, SolverError):
            points.append(PtPoint(alpha=a, beta_w=math.nan, residual=math.inf))
    return points


def _check_ranges(alpha, beta, eta):
    if not 0.0 < alpha < 1.0:
        raise DomainError("alpha must lie in (0, 1), got %r" % (alpha,))
    if not 0.0 <= eta <= 1.0:
        raise DomainError("eta must lie in [0, 1], got %r" % (eta,))
    if beta < 0.0:
        raise DomainError("beta must be nonnegative, got %r" % (beta,))


def _bisect_newton(g, lo, hi, increasing=False, width=1e-12, newton_steps=3,
                   fd_step=1e-7):
    """Bisect a strictly monotone g to `width`, then Newton-polish.

    `increasing` states the expected monotonicity so the bracket check can
    produce a meaningful diagnostic.  The Newton steps use a central
    finite-difference derivative and are discarded if they leave the
    original bracket.
    """
    lo0, hi0 = lo, hi
    glo, ghi = g(lo), g(hi)
    want = (glo < 0.0 < ghi) if increasing else (ghi < 0.0 < glo)
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    if not want:
        raise SolverError(
            "bracket failure: g(%r)=%r, g(%r)=%r (expected a sign change, "
            "monotone %s)" % (lo, glo, hi, ghi, "increasing" if increasing else "decreasing")
        )
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        gm = g(mid)
        if gm == 0.0:
            return mid
        if (gm > 0.0) == increasing:
            hi = mid
        else:
            lo = mid
    x = 0.5 * (lo + hi)
    for _ in range(newton_steps):
        h = fd_step * max(1.0, abs(x))
        # keep the difference stencil inside the bracket, where g is defined
        h = min(h, 0.5 * (hi0 - x), 0.5 * (x - lo0))
        if h <= 0.0:
            break
        deriv = (g(x + h) - g(x - h)) / (2.0 * h)
        if deriv == 0.0:
            break
        x_new = x - g(x) / deriv
        if not lo0 < x_new < hi0:
            break
        x = x_new
    return x

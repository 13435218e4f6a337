"""High-dimensional-geometry route to the rate function.

The decomposition

    Psi_net = psi_com + psi_int - psi_ext

is an independent second route to the LDP rate: psi_com is closed-form,
while psi_int and psi_ext are 1-D minimizations

    psi_int = min_{y>=0} (alpha-eta*beta)*y^2 + (alpha-beta)*log(erfc(y)) - (alpha-beta)*log 2
    psi_ext = min_{y>=0} (alpha-eta*beta)*y^2 - (1-alpha)*log(erf(y))

whose minimizers coincide with q0 and q1 of the LDP equations.  Both
objectives are convex with coercive tails, so the derivative has a single
sign change and bisection on it is safe.  Everything here is built on
specfun only; the ClosedForm method additionally borrows beta0/beta1 from
ldpcore to place the minimizers without searching.
"""

import enum
import math
from dataclasses import dataclass

from . import specfun
from .errors import DomainError, SolverError
from .ptcore import _bisect_newton

__all__ = [
    "PsiMethod",
    "GeometryDecomposition",
    "psi_com",
    "psi_int",
    "psi_ext",
    "psi_net",
]

_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)
_LOG2 = math.log(2.0)


class PsiMethod(enum.Enum):
    CLOSED_FORM = "closed-form"
    DIRECT_MIN = "direct-min"


@dataclass(frozen=True)
class GeometryDecomposition:
    psi_com: float
    psi_int: float
    psi_ext: float
    psi_net: float
    y_int: float
    y_ext: float


def _check(alpha, beta, eta):
    if not 0.0 < beta < alpha < 1.0:
        raise DomainError(
            "geometry route needs 0 < beta < alpha < 1, got alpha=%r beta=%r"
            % (alpha, beta)
        )
    if not 0.0 <= eta <= 1.0:
        raise DomainError("eta must lie in [0, 1], got %r" % (eta,))


def psi_com(alpha, beta):
    """Combinatorial exponent (pure closed form)."""
    if not 0.0 < beta < alpha < 1.0:
        raise DomainError(
            "psi_com needs 0 < beta < alpha < 1, got alpha=%r beta=%r" % (alpha, beta)
        )
    ab = alpha - beta
    return (
        ab * _LOG2
        - ab * math.log(ab / (1.0 - beta))
        - (1.0 - alpha) * math.log((1.0 - alpha) / (1.0 - beta))
    )


def _int_objective(alpha, beta, eta, y):
    return (alpha - eta * beta) * y * y + (alpha - beta) * specfun.log_erfc(y) \
        - (alpha - beta) * _LOG2


def _int_derivative(alpha, beta, eta, y):
    # d/dy log(erfc(y)) = -(2/sqrt(pi)) / erfcx(y)
    return 2.0 * (alpha - eta * beta) * y \
        - (alpha - beta) * _TWO_OVER_SQRT_PI * specfun._inv_erfcx(y)


def _ext_objective(alpha, beta, eta, y):
    return (alpha - eta * beta) * y * y - (1.0 - alpha) * math.log(specfun.erf(y))


def _ext_derivative(alpha, beta, eta, y):
    return 2.0 * (alpha - eta * beta) * y \
        - (1.0 - alpha) * _TWO_OVER_SQRT_PI * math.exp(-y * y) / specfun.erf(y)


def _minimize_1d(objective, derivative, what):
    """Locate the sign change of the (monotone) derivative, then evaluate.

    Expansion stops at y = 1e7: beyond that the derivative's two terms
    agree to within rounding for the non-coercive eta = 1 case, so a sign
    change found further out would be cancellation noise, not a minimum.
    """
    lo, hi = 1e-8, 10.0
    if derivative(lo) >= 0.0:
        raise SolverError("%s derivative not negative at y=%r" % (what, lo))
    while derivative(hi) <= 0.0:
        hi *= 2.0
        if hi > 1e7:
            raise SolverError("%s derivative never changes sign (eta = 1?)" % (what,))
    y = _bisect_newton(derivative, lo, hi, increasing=True)
    return objective(y), y


def psi_int(alpha, beta, eta, method=PsiMethod.CLOSED_FORM):
    """Internal-angle exponent; returns (value, y_int)."""
    _check(alpha, beta, eta)
    if method is PsiMethod.CLOSED_FORM:
        from .ldpcore import solve_beta0

        beta0, _ = solve_beta0(alpha, beta, eta)
        y = specfun.erfinv((1.0 - alpha) / (1.0 - beta0))
        return _int_objective(alpha, beta, eta, y), y
    if method is PsiMethod.DIRECT_MIN:
        return _minimize_1d(
            lambda y: _int_objective(alpha, beta, eta, y),
            lambda y: _int_derivative(alpha, beta, eta, y),
            "psi_int",
        )
    raise DomainError("unknown method %r" % (method,))


def psi_ext(alpha, beta, eta, method=PsiMethod.CLOSED_FORM):
    """External-angle exponent; returns (value, y_ext)."""
    _check(alpha, beta, eta)
    if method is PsiMethod.CLOSED_FORM:
        from .ldpcore import solve_beta1

        beta1, _ = solve_beta1(alpha, beta, eta)
        y = specfun.erfinv((1.0 - alpha) / (1.0 - beta1))
        return _ext_objective(alpha, beta, eta, y), y
    if method is PsiMethod.DIRECT_MIN:
        return _minimize_1d(
            lambda y: _ext_objective(alpha, beta, eta, y),
            lambda y: _ext_derivative(alpha, beta, eta, y),
            "psi_ext",
        )
    raise DomainError("unknown method %r" % (method,))


def psi_net(alpha, beta, eta, method=PsiMethod.DIRECT_MIN):
    """Assemble the full decomposition.

    Defaults to DIRECT_MIN so the route shares nothing with ldpcore and the
    equality Psi_net = I_ldp is a genuine cross-check of two pipelines.
    """
    com = psi_com(alpha, beta)
    v_int, y_int = psi_int(alpha, beta, eta, method)
    v_ext, y_ext = psi_ext(alpha, beta, eta, method)
    return GeometryDecomposition(
        psi_com=com,
        psi_int=v_int,
        psi_ext=v_ext,
        psi_net=com + v_int - v_ext,
        y_int=y_int,
        y_ext=y_ext,
    )

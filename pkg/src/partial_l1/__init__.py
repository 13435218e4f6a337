"""Phase transitions and large-deviations rates for partial l1 recovery.

The package computes, for random Gaussian linear systems, where l1-style
recovery of a planted sparse vector succeeds, how fast the failure (or
success) probability decays in the ambient dimension, and it cross-checks
those answers through independent routes:

  ptcore      weak phase-transition curves (partial and hidden-partial)
  ldpcore     closed-form rate functions on both sides of the curve
  geomcheck   the combinatorial-geometry decomposition of the same rate
  zetaverify  the variational objective, its gradient, a numeric minimizer
  simlab      Monte Carlo LP laboratory and Gaussian-width formulas
  specfun     the scalar special functions everything rests on
  cli         command-line front end (pt / ldp / verify / sim)
"""

__version__ = "0.1.0"

from .errors import (
    DegenerateModelError,
    DomainError,
    LpError,
    PartialL1Error,
    SolverError,
)
from .geomcheck import GeometryDecomposition, PsiMethod, psi_com, psi_ext, psi_int, psi_net
from .ldpcore import (
    HiddenLdpSolution,
    LdpSolution,
    Regime,
    ldp_solution,
    ldp_solution_hidden,
    rate_curve,
    solve_beta0,
    solve_beta1,
)
from .ptcore import (
    Model,
    ModelParams,
    PtPoint,
    pt_curve,
    solve_alpha_w,
    solve_beta_w,
    xi_hidden,
    xi_partial,
)
from .zetaverify import ZetaPoint, i_sph, minimize_zeta_numeric, zeta, zeta_grad_analytic

__all__ = [
    "__version__",
    "PartialL1Error", "DomainError", "DegenerateModelError", "SolverError", "LpError",
    "Model", "ModelParams", "PtPoint",
    "xi_partial", "xi_hidden", "solve_beta_w", "solve_alpha_w", "pt_curve",
    "Regime", "LdpSolution", "HiddenLdpSolution",
    "solve_beta1", "solve_beta0", "ldp_solution", "ldp_solution_hidden", "rate_curve",
    "PsiMethod", "GeometryDecomposition", "psi_com", "psi_int", "psi_ext", "psi_net",
    "ZetaPoint", "i_sph", "zeta", "zeta_grad_analytic", "minimize_zeta_numeric",
    "SimConfig", "Instance", "SimEstimate",
    "sample_instance", "solve_weighted_l1", "run_trials",
    "gaussian_width_closed_form", "gaussian_width_pg_oracle",
]


def __getattr__(name):
    # simlab pulls in scipy.optimize; defer that import until it is asked for
    _simlab_names = {
        "SimConfig", "Instance", "SimEstimate", "sample_instance",
        "solve_weighted_l1", "run_trials", "gaussian_width_closed_form",
        "gaussian_width_pg_oracle",
    }
    if name in _simlab_names:
        from . import simlab

        return getattr(simlab, name)
    raise AttributeError("module %r has no attribute %r" % (__name__, name))

"""Weak-threshold curves for the partial and hidden-partial programs.

Prints beta_w(alpha) for a few support-knowledge fractions and shows the
two anchor points quoted throughout: (alpha, eta) = (0.5, 0.5) for the
partial model and (0.5, 0.75) for the hidden one.
"""

import numpy as np

from partial_l1.ptcore import Model, pt_curve, solve_beta_w

alphas = list(np.round(np.arange(0.30, 0.91, 0.10), 2))

print("partial model, beta_w by eta")
print("alpha   " + "  ".join("eta=%.2f" % e for e in (0.0, 0.25, 0.5, 0.75)))
curves = {e: pt_curve(e, Model.PARTIAL, alphas) for e in (0.0, 0.25, 0.5, 0.75)}
for i, a in enumerate(alphas):
    row = "  ".join("%8.5f" % curves[e][i].beta_w for e in (0.0, 0.25, 0.5, 0.75))
    print("%5.2f  %s" % (a, row))

print()
print("anchors:")
print("  partial  beta_w(0.5, eta=0.5)  = %.6f (published 0.25896)"
      % solve_beta_w(0.5, 0.5, Model.PARTIAL).beta_w)
print("  hidden   beta_w(0.5, eta=0.75) = %.6f (published 0.27153)"
      % solve_beta_w(0.5, 0.75, Model.HIDDEN_PARTIAL).beta_w)

print()
print("hidden model at eta=0.75 vs partial at eta=0.5:")
hidden = pt_curve(0.75, Model.HIDDEN_PARTIAL, alphas)
for i, a in enumerate(alphas):
    print("%5.2f  hidden %8.5f  partial %8.5f"
          % (a, hidden[i].beta_w, curves[0.5][i].beta_w))

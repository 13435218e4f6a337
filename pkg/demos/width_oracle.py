"""Gaussian width of the failure set: closed form vs projected gradient.

The closed form reduces the width to a one-dimensional minimization in
nu; the oracle maximizes the linear objective directly over the feasible
cone intersected with the unit ball.  Gaps should sit at solver noise.
"""

import numpy as np

from partial_l1.simlab import gaussian_width_closed_form, gaussian_width_pg_oracle

rng = np.random.default_rng(7)

print("   n    k   known   closed form      oracle        gap")
for _ in range(12):
    n = int(rng.integers(10, 51))
    k = int(rng.integers(1, n // 2 + 1))
    eta_count = int(rng.integers(0, k + 1))
    h = rng.standard_normal(n)
    cf = gaussian_width_closed_form(h, k, eta_count)
    pg = gaussian_width_pg_oracle(h, k, eta_count, seed=int(rng.integers(2 ** 31)))
    print("%4d  %3d  %5d   %12.8f  %12.8f   %8.2e" % (n, k, eta_count, cf, pg, abs(cf - pg)))

print()
print("edge cases: width(0) = %.1f, width with k = 0 stays below ||h||_2"
      % gaussian_width_closed_form(np.zeros(10), 3, 1))
h = rng.standard_normal(20)
print("  k=0: %.6f <= %.6f" % (gaussian_width_closed_form(h, 0, 0), np.linalg.norm(h)))

# ===========================================================
# rate_tables.py
# Rebuilds the two rate-function tables (upper/lower tail
# optimizers and decay rates) straight from ldpcore.
# Equivalent CLI:
#   partial-l1 ldp --model partial --eta 0.5 --beta 0.25896 \
#       --alphas 0.40,0.45,0.50,0.55,0.60
# ===========================================================

from partial_l1.ldpcore import ldp_solution, ldp_solution_hidden

ALPHAS = (0.40, 0.45, 0.50, 0.55, 0.60)

print("partial model, beta = 0.25896, eta = 0.5")
print("alpha   beta1    beta0      nu      a0      c3    gamma    rate")
for a in ALPHAS:
    s = ldp_solution(a, 0.25896, 0.5)
    print("%5.2f  %7.4f  %7.4f  %6.4f  %6.4f  %7.4f  %6.4f  %7.4f"
          % (a, s.beta1, s.beta0, s.nu, s.a0, s.c3, s.gamma, s.rate))

print()
print("hidden model, beta = 0.27153, eta = 0.75 (native-scale supports)")
print("alpha   beta1    beta0      nu      a0      c3    gamma    rate")
for a in ALPHAS:
    s = ldp_solution_hidden(a, 0.27153, 0.75)
    print("%5.2f  %7.4f  %7.4f  %6.4f  %6.4f  %7.4f  %6.4f  %7.4f"
          % (a, s.beta1_hp, s.beta0_hp, s.nu, s.a0, s.c3, s.gamma, s.rate))

print()
print("sign(c3) tracks which side of the threshold alpha sits on;")
print("the rate is 0 exactly on the curve and negative on both sides.")

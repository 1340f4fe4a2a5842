"""Why the tuned scales shrink like R/k, and what fixes R.

For power-cut mappings applied to series with factorial-times-geometric
tails, a steepest-descent argument pins the scale trajectory: rho_k ~ R/k
with R = mu(alpha) * A, where A is the inverse growth constant of the series
and mu solves a two-equation saddle system.  This script tabulates mu over
the benchmark exponents and checks the predictions used elsewhere.
"""

from mpmath import mp

from resum import d0_exact_rate, predicted_R, solve_saddle

mp.dps = 40

print("saddle constants by mapping exponent:")
print("  alpha    mu             saddle lambda")
for alpha in ("1.5", "2", "2.5", "3", "4"):
    sol = solve_saddle(alpha)
    print("  %-5s    %-12s   %s" % (
        alpha, mp.nstr(sol.mu, 11), mp.nstr(sol.lambda_saddle, 11)))
print()

R, rate = d0_exact_rate()
print("d=0 partition function, quadratic map (exact two-saddle analysis):")
print("   R = %s   error rate exp(-3/R) = %s" % (mp.nstr(R, 11), mp.nstr(rate, 11)))
print()

print("predicted scale constants R = mu * A:")
print("   oscillator (alpha=3/2, A=8):    %s" % mp.nstr(predicted_R("1.5", 8), 6))
print("   d=0, quartic map (alpha=4, A=3/2): %s" % mp.nstr(predicted_R(4, "1.5"), 6))

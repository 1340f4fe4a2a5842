"""Strong-coupling limit of the zero-dimensional quartic partition function.

Z(g) behaves like g^(-1/4) times a known amplitude as g -> infinity.  The
order-dependent mapping reaches that limit directly: the mapped variable
hits 1 there, and the truncated mapped series evaluated at the tuned scale
converges geometrically to the amplitude.  The tuned scales themselves
shrink like R/k with R fixed by a transcendental equation, and the error
decays like exp(-3k/R).
"""

from mpmath import mp

from resum import (
    MappingFamily,
    MappingSpec,
    RhoSelectionCriterion,
    build_rho_table,
    convergence_study,
    d0_partition_coeffs,
    d0_partition_value,
    d0_exact_rate,
)

mp.dps = 64

KMAX = 40
series = d0_partition_coeffs(KMAX + 2)
mapping = MappingSpec(MappingFamily.POWER_CUT, 2, prefactor_p="0.5")
table = build_rho_table(series, mapping)
amplitude = d0_partition_value(mp.inf)
R, rate = d0_exact_rate()

print("amplitude lim g^(1/4) Z(g) = %s" % mp.nstr(amplitude, 20))
print("predicted scale constant R = %s, error rate per order %s" % (
    mp.nstr(R, 10), mp.nstr(rate, 10)))
print()

study = convergence_study(table, RhoSelectionCriterion(), KMAX, mp.inf,
                          oracle=amplitude)
print(" k   rho_k * k      value              |error|")
for k in range(4, KMAX + 1, 4):
    rep = study.report(k)
    print("%3d   %-10s   %-18s %s" % (
        k, mp.nstr(rep.rho * k, 6), mp.nstr(rep.value, 12),
        mp.nstr(abs(rep.delta), 3)))

print()
print("scale-trajectory fit: 1/(k rho_k) -> %s  (prediction 1/R = %s)" % (
    mp.nstr(study.inv_rho_fit.parity_mean_slope, 6), mp.nstr(1 / R, 6)))
print("error-decay fit:      d ln|err| / dk = %s  (prediction -3/R = %s)" % (
    mp.nstr(study.rate_fit.slope, 6), mp.nstr(-3 / R, 6)))

"""Ground-state energy of the quartic anharmonic oscillator.

The perturbation series for H = p^2/2 + x^2/2 + (g/4!) x^4 diverges like
(-1)^(k+1) 8^(-k) k!; the mapping with a three-halves exponent sums it at
any coupling, all the way to the pure-quartic limit.  An oscillator-basis
diagonalization supplies the exact values to grade against.
"""

from mpmath import mp

from resum import (
    MappingFamily,
    MappingSpec,
    RhoSelectionCriterion,
    anharmonic_ground_coeffs,
    anharmonic_ground_value,
    build_rho_table,
    odm_value,
    ratio_growth_constant,
)

mp.dps = 50

ORDER = 40
series = anharmonic_ground_coeffs(ORDER)
print("first coefficients:", [mp.nstr(c, 8) for c in series.coeffs[:5]])
print("inverse growth constant estimate: %s (exact 8)" % mp.nstr(
    ratio_growth_constant(series, 8), 6))
print()

# E = calE / sqrt(1 - lambda): prefactor exponent -1/2 with the 3/2 map.
mapping = MappingSpec(MappingFamily.POWER_CUT, "1.5", prefactor_p="-0.5")
table = build_rho_table(series, mapping)
criterion = RhoSelectionCriterion(smallness_factor="1e6")

print("finite coupling, k = %d:" % (ORDER - 1))
print("   g     summed            diagonalization    |error|")
for g in ("0.5", "2", "10", "50"):
    rep = odm_value(table, ORDER - 1, criterion, mp.mpf(g))
    exact = anharmonic_ground_value(g)
    print("%5s   %-16s %-18s %s" % (
        g, mp.nstr(rep.value, 10), mp.nstr(exact, 10),
        mp.nstr(abs(rep.value - exact), 3)))

print()
amp = anharmonic_ground_value(mp.inf)
rep = odm_value(table, ORDER - 1, criterion, mp.inf)
print("strong coupling: E(g) ~ amplitude * g^(1/3)")
print("   summed amplitude:          %s" % mp.nstr(rep.value, 12))
print("   pure-quartic eigenvalue:   %s" % mp.nstr(amp, 12))
print("   relative error:            %s" % mp.nstr(abs(rep.value - amp) / amp, 3))

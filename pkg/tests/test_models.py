"""Generators for the benchmark series and their independent oracles."""

import pytest
from mpmath import mp, mpf

from resum import (
    DomainError,
    anharmonic_ground_coeffs,
    anharmonic_ground_value,
    d0_partition_coeffs,
    d0_partition_value,
    eta_over_g2_series,
    nu_inv_series,
    ratio_growth_constant,
    rg_series,
)
from resum.models import _even_sector_bands, _lowest_even_eigenvalue


class TestD0Coefficients:
    def test_normalization(self):
        assert d0_partition_coeffs(0).coeffs == (mpf(1),)

    def test_low_orders_against_moment_oracle(self):
        # Independent route: coefficient k is (-1/24)^k <x^(4k)> / k! with the
        # moment taken by quadrature against the Gaussian weight.
        z = d0_partition_coeffs(2)
        for k in (1, 2):
            moment = mp.quad(
                lambda x: x ** (4 * k) * mp.exp(-x * x / 2), [-mp.inf, mp.inf]
            ) / mp.sqrt(2 * mp.pi)
            expect = (mpf(-1) / 24) ** k * moment / mp.factorial(k)
            assert abs(z.coeffs[k] - expect) < mpf("1e-40")
        assert z.coeffs[1] == mpf(-1) / 8
        assert abs(z.coeffs[2] - mpf(35) / 384) < mpf("1e-62")

    def test_growth_constant(self):
        est = ratio_growth_constant(d0_partition_coeffs(60), 10)
        assert abs(est - mpf("1.5")) / mpf("1.5") < mpf("0.05")

    def test_signs_alternate_from_first_order(self):
        z = d0_partition_coeffs(20)
        for k in range(1, 20):
            assert z.coeffs[k] * z.coeffs[k + 1] < 0


class TestD0Value:
    def test_gaussian_limit(self):
        assert abs(d0_partition_value(0) - 1) < mpf("1e-50")

    def test_rejects_negative_coupling(self):
        with pytest.raises(DomainError):
            d0_partition_value(-1)

    def test_two_quadrature_schemes_agree(self):
        a = d0_partition_value(5)
        b = d0_partition_value(5, quad_method="gauss-legendre")
        assert abs(a - b) < mpf("1e-20")

    def test_partial_sum_bound_at_small_coupling(self):
        g = mpf("0.1")
        z = d0_partition_coeffs(11)
        partial = z.eval(g, terms=11)
        exact = d0_partition_value(g)
        first_omitted = abs(z.coeffs[11]) * g ** 11
        assert abs(partial - exact) <= first_omitted

    def test_strong_coupling_amplitude(self):
        amp = d0_partition_value(mp.inf)
        closed = mpf("0.5") * mpf(24) ** mpf("0.25") * mp.sqrt(mp.pi) / mp.gamma(mpf(3) / 4)
        assert amp == closed
        # quadrature at large coupling approaches the amplitude like g^(-1/2)
        g = mpf("1e8")
        assert abs(d0_partition_value(g) * g ** mpf("0.25") - amp) < mpf("2e-4")


class TestOscillatorCoefficients:
    def test_harmonic_limit(self):
        assert anharmonic_ground_coeffs(0).coeffs == (mpf(1) / 2,)

    def test_first_order(self):
        assert anharmonic_ground_coeffs(1).coeffs[1] == mpf(1) / 32

    def test_second_order_sum_over_states(self):
        # E_2 = -sum_n |<n|x^4/24|0>|^2 / n over the two reachable states.
        v02 = (2 * 0 + 3) * mp.sqrt(mpf(1) * 2) / 2 / 24
        v04 = mp.sqrt(mpf(1) * 2 * 3 * 4) / 4 / 24
        expect = -(v02 ** 2 / 2 + v04 ** 2 / 4)
        got = anharmonic_ground_coeffs(2).coeffs[2]
        assert abs(got - expect) < mpf("1e-55")
        assert abs(got + mpf(7) / 1536) < mpf("1e-55")

    def test_growth_constant(self):
        est = ratio_growth_constant(anharmonic_ground_coeffs(60), 10)
        assert abs(est - 8) / 8 < mpf("0.05")

    def test_signs_alternate_from_second_order(self):
        e = anharmonic_ground_coeffs(12)
        for k in range(2, 12):
            assert e.coeffs[k] * e.coeffs[k + 1] < 0


class TestOscillatorValue:
    def test_harmonic_limit(self):
        assert anharmonic_ground_value(0) == mpf(1) / 2

    def test_rejects_negative_coupling(self):
        with pytest.raises(DomainError):
            anharmonic_ground_value(-2)

    def test_partial_sums_bracket_small_coupling(self):
        g = mpf("0.01")
        e = anharmonic_ground_coeffs(4)
        partial = e.eval(g, terms=4)
        exact = anharmonic_ground_value(g)
        bound = abs(e.coeffs[4]) * g ** 4 * 10
        assert abs(partial - exact) <= bound

    def test_two_basis_sizes_agree(self):
        g = mpf(1)
        bands_a = _even_sector_bands(60, mpf(2), mpf("0.5"), g / 24)
        bands_b = _even_sector_bands(110, mpf(2), mpf("0.5"), g / 24)
        ea = _lowest_even_eigenvalue(*bands_a, rel_tol=mpf("1e-30"))
        eb = _lowest_even_eigenvalue(*bands_b, rel_tol=mpf("1e-30"))
        assert abs(ea - eb) / abs(eb) < mpf("1e-8")
        assert abs(eb - anharmonic_ground_value(1)) / eb < mpf("1e-12")

    def test_amplitude_stable_across_basis_scalings(self):
        c4 = mpf(1) / 24
        values = []
        for omega in (mpf(1), mpf("1.6")):
            bands = _even_sector_bands(140, omega, mpf(0), c4)
            values.append(_lowest_even_eigenvalue(*bands, rel_tol=mpf("1e-30")))
        assert abs(values[0] - values[1]) / values[1] < mpf("1e-8")
        assert abs(values[1] - anharmonic_ground_value(mp.inf)) < mpf("1e-8")

    def test_basis_cap_resource_error(self):
        from resum import ResourceError

        with pytest.raises(ResourceError):
            anharmonic_ground_value(1, max_basis=50)


class TestRgSeries:
    def test_published_coefficients(self):
        rg = rg_series()
        assert rg.beta.coeffs[3] == mpf(-308) / 729
        assert rg.gamma_inv.coeffs[1] == mpf(-1) / 6
        assert rg.eta.coeffs[0] == 0 and rg.eta.coeffs[1] == 0
        assert rg.beta.order == 7 and rg.gamma_inv.order == 7 and rg.eta.order == 7
        assert abs(rg.large_order_a - mpf("0.147774232")) == 0

    def test_eta_over_g2(self):
        stripped = eta_over_g2_series()
        assert stripped.order == 5
        assert stripped.coeffs[0] == mpf("0.0109739368")

    def test_nu_inv_leading_terms(self):
        nu_inv = nu_inv_series()
        # 1/nu = gamma^-1 (2 - eta): constant 2, then 2*(-1/6)
        assert nu_inv.coeffs[0] == 2
        assert abs(nu_inv.coeffs[1] + mpf(1) / 3) < mpf("1e-60")
        # order-2: 2/27 - eta_2 * 1
        expect = mpf(2) / 27 - mpf("0.0109739368")
        assert abs(nu_inv.coeffs[2] - expect) < mpf("1e-55")

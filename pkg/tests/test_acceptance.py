"""Acceptance suite: every graded criterion at its stated tolerance.

Run with ``pytest -s tests/test_acceptance.py`` to see one PASS/FAIL line per
criterion.  The heavy table rebuilds are shared module-scoped fixtures; the
whole suite completes in a few minutes at 64-digit precision.
"""

import random

import pytest
from mpmath import mp, mpf

from resum import (
    BorelConfig,
    MappingFamily,
    MappingSpec,
    PowerSeries,
    RhoSelectionCriterion,
    SelectionMode,
    binomial_series,
    borel_sum,
    build_rho_table,
    compose,
    d0_partition_coeffs,
    anharmonic_ground_coeffs,
    fixed_point,
    multiply,
    pade_eval,
    pade_fit,
    revert,
    rg_series,
    scale,
    zeta_series,
)
from resum import benchmarks


def report(criterion, name, result):
    line = "ACCEPTANCE %s [%s]: %s" % (criterion, name, "PASS" if result else "FAIL")
    print(line)
    return result


def assert_benchmark(criterion, result, names=None):
    checks = result.checks if names is None else [
        c for c in result.checks if any(c.name.startswith(n) for n in names)
    ]
    ok = all(c.passed for c in checks)
    detail = "; ".join("%s (observed %s, target %s)" % (c.name, c.observed, c.target)
                       for c in checks if not c.passed)
    report(criterion, result.table_id, ok)
    assert ok, detail


@pytest.fixture(scope="module")
def precision():
    with mp.workdps(64):
        yield


@pytest.fixture(scope="module")
def saddle_result(precision):
    return benchmarks.run_saddle_table()


@pytest.fixture(scope="module")
def d0_strong_result(precision):
    return benchmarks.run_d0_strong()


@pytest.fixture(scope="module")
def d0_g5_result(precision):
    return benchmarks.run_d0_g5()


@pytest.fixture(scope="module")
def oscillator_result(precision):
    return benchmarks.run_oscillator()


@pytest.fixture(scope="module")
def phi4_fixed_point_result(precision):
    return benchmarks.run_phi4_fixed_point()


@pytest.fixture(scope="module")
def phi4_exponents_result(precision):
    return benchmarks.run_phi4_exponents()


@pytest.fixture(scope="module")
def borel_map_result(precision):
    return benchmarks.run_borel_map_exponents()


def test_criterion_1_saddle_constants(saddle_result):
    assert_benchmark("1", saddle_result, names=("mu[", "lambda[", "residuals["))


def test_criterion_2_exact_rate(saddle_result):
    assert_benchmark("2", saddle_result, names=("exact-rate", "R/A"))


def test_criterion_3_d0_strong_coupling(d0_strong_result):
    assert_benchmark("3", d0_strong_result)


def test_criterion_4_d0_alternative_mapping(d0_g5_result):
    assert_benchmark("4", d0_g5_result)


def test_criterion_5_oscillator(oscillator_result):
    assert_benchmark("5", oscillator_result)


def test_criterion_6_phi4_fixed_point(phi4_fixed_point_result):
    assert_benchmark("6", phi4_fixed_point_result)


def test_criterion_7_phi4_exponents(phi4_exponents_result):
    assert_benchmark("7", phi4_exponents_result)


def test_criterion_8_borel_mapping(borel_map_result):
    assert_benchmark("8", borel_map_result)


class TestCriterion9PropertySuite:
    """Always-runnable identities, independent of any published number."""

    def test_series_algebra_identities(self, precision):
        a = PowerSeries(("1", "0.5", "-2", "1/3"))
        b = PowerSeries(("2", "-1", "0.25", "4"))
        c = PowerSeries(("-1", "3", "1", "0.125"))
        assert multiply(a, b) == multiply(b, a)
        left = multiply(multiply(a, b), c)
        right = multiply(a, multiply(b, c))
        assert all(abs(x - y) <= mpf("1e-58") * max(1, abs(x))
                   for x, y in zip(left.coeffs, right.coeffs))
        prod = multiply(binomial_series("1.75", 8), binomial_series("-1.75", 8))
        assert abs(prod.coeffs[0] - 1) < mpf("1e-58")
        assert all(abs(x) < mpf("1e-58") for x in prod.coeffs[1:])
        ok = report("9", "series-algebra", True)
        assert ok

    def test_reexpansion_identity_three_sources(self, precision):
        rng = random.Random(20260808)
        cases = (
            (d0_partition_coeffs(10),
             MappingSpec(MappingFamily.POWER_CUT, 2, prefactor_p="0.5")),
            (anharmonic_ground_coeffs(10),
             MappingSpec(MappingFamily.POWER_CUT, "1.5", prefactor_p="-0.5")),
            (rg_series().beta,
             MappingSpec(MappingFamily.SHIFTED_POWER, "1.5")),
        )
        ok = True
        for source, mapping in cases:
            order = source.order
            table = build_rho_table(source, mapping)
            for _ in range(2):
                rho = mpf(str(round(rng.uniform(0.2, 3.0), 6)))
                lam_of_g = revert(scale(zeta_series(mapping, order), rho), var=source.var)
                mapped = PowerSeries(table.lambda_coeffs(rho, order), "lambda")
                back = multiply(
                    compose(binomial_series(mapping.prefactor_p, order, "lambda"), lam_of_g),
                    compose(mapped, lam_of_g),
                )
                for k in range(order + 1):
                    scale_k = max(1, abs(source.coeffs[k]))
                    ok = ok and abs(back.coeffs[k] - source.coeffs[k]) < scale_k * mpf("1e-45")
        assert report("9", "odm-reexpansion", ok)

    def test_pade_rational_exactness(self, precision):
        # source = (1 + 2g) / (1 + g/2 - g^2/4), expanded then refit
        num = (mpf(1), mpf(2))
        den = (mpf(1), mpf("0.5"), mpf("-0.25"))
        coeffs = []
        for k in range(9):
            acc = num[k] if k < len(num) else mpf(0)
            for j in range(1, min(k, 2) + 1):
                acc -= den[j] * coeffs[k - j]
            coeffs.append(acc)
        approx = pade_fit(PowerSeries(tuple(coeffs)), 1, 2)
        ok = all(abs(x - y) < mpf("1e-55") for x, y in zip(approx.numerator, num))
        ok = ok and all(abs(x - y) < mpf("1e-55") for x, y in zip(approx.denominator, den))
        g = mpf("0.37")
        want = (1 + 2 * g) / (1 + g / 2 - g * g / 4)
        ok = ok and abs(pade_eval(approx, g) - want) < mpf("1e-55")
        assert report("9", "pade-exactness", ok)

    def test_borel_polynomial_consistency(self, precision):
        poly = PowerSeries((mpf(1), mpf(-2), mpf(3), mpf("0.5"))).pad(160)
        cfg = BorelConfig(a=1, sigma="0.5")
        ok = True
        for g in (mpf("0.5"), mpf(1)):
            want = poly.eval(g)
            ok = ok and abs(borel_sum(poly, cfg, g) - want) < mpf("1e-12") * max(1, abs(want))
        assert report("9", "borel-polynomial", ok)

    def test_borel_alternating_factorial_oracle(self, precision):
        s = PowerSeries(tuple((-1) ** k * mp.factorial(k) for k in range(35)))
        cfg = BorelConfig(a=1, sigma=0)
        ok = True
        for g in (mpf("0.5"), mpf(1), mpf(2)):
            oracle = mp.quad(lambda t: mp.exp(-t) / (1 + g * t), [0, mp.inf])
            ok = ok and abs(borel_sum(s, cfg, g) - oracle) < mpf("1e-8")
        assert report("9", "borel-oracle", ok)

    def test_toy_fixed_point_exact(self, precision):
        toy = PowerSeries((mpf(0), mpf(-1), mpf(1), mpf(0), mpf(0), mpf(0)), "gtilde")
        table = build_rho_table(toy, MappingSpec(
            MappingFamily.SHIFTED_POWER, 1, beta_covariant=True))
        criterion = RhoSelectionCriterion(mode=SelectionMode.STATIONARY_FIRST,
                                          smallness_factor=1)
        ok = True
        for k in range(2, 6):
            fp = fixed_point(table, k, criterion)
            ok = ok and abs(fp.g_star - 1) < mpf("1e-55")
            ok = ok and abs(fp.omega - 1) < mpf("1e-55")
        assert report("9", "toy-fixed-point", ok)

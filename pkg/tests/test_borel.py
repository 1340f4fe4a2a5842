"""Borel-Leroy transform, disk mapping, Laplace summation, rational variant."""

import pytest
from mpmath import mp, mpf

from resum import (
    BorelConfig,
    PowerSeries,
    SummabilityError,
    UsageError,
    borel_leroy_transform,
    borel_pade_sum,
    borel_sum,
    conformal_map_coeffs,
    rg_series,
)
from resum.borel import u_of_z


def alternating_factorial(order):
    return PowerSeries(tuple((-1) ** k * mp.factorial(k) for k in range(order + 1)))


def test_transform_factorial():
    b = borel_leroy_transform(PowerSeries(tuple(mp.factorial(k) for k in range(6))), 0)
    assert all(abs(c - 1) < mpf("1e-60") for c in b.coeffs)


def test_transform_alternating():
    b = borel_leroy_transform(alternating_factorial(5), 0)
    assert all(abs(abs(c) - 1) < mpf("1e-60") for c in b.coeffs)
    assert b.coeffs[1] == -1


def test_transform_beta_third_coefficient():
    rg = rg_series()
    b = borel_leroy_transform(rg.beta, 2)
    want = (mpf(-308) / 729) / mp.gamma(6)
    assert abs(b.coeffs[3] - want) < mpf("1e-60")


def test_transform_rejects_negative_sigma():
    with pytest.raises(UsageError):
        borel_leroy_transform(alternating_factorial(3), -1)


def test_map_identity_series():
    b = PowerSeries((mpf(0), mpf(1), mpf(0), mpf(0)), "z")
    mapped = conformal_map_coeffs(b, 4)
    assert mapped.coeffs == (mpf(0), mpf(1), mpf(2), mpf(3))


def test_map_constant_unchanged():
    b = PowerSeries((mpf("3.25"), mpf(0)), "z")
    mapped = conformal_map_coeffs(b, 1)
    assert mapped.coeffs[0] == mpf("3.25")
    assert mapped.coeffs[1] == 0


def test_map_point_identities():
    a = mpf("0.25")
    assert u_of_z(mpf(0), a) == 0
    assert abs(u_of_z(mpf(-1) / a, a) + 1) < mpf("1e-60")
    assert abs(u_of_z(mpf("1e12"), a) - 1) < mpf("1e-5")


def test_map_continues_beyond_radius():
    # 1/(1+z) has radius 1; the mapped partial sums converge at z = 10.
    order = 40
    b = PowerSeries(tuple(mpf(-1) ** k for k in range(order + 1)), "z")
    mapped = conformal_map_coeffs(b, 1)
    u = u_of_z(mpf(10), 1)
    total = mpf(0)
    partials = []
    for k, c in enumerate(mapped.coeffs):
        total += c * u ** k
        partials.append(total)
    want = mpf(1) / 11
    assert abs(partials[-1] - want) < mpf("1e-6")
    assert abs(partials[-1] - want) < abs(partials[10] - want)


def test_borel_sum_alternating_factorial():
    cfg = BorelConfig(a=1, sigma=0)
    got = borel_sum(alternating_factorial(30), cfg, 1, full_output=True)
    oracle = mp.quad(lambda t: mp.exp(-t) / (1 + t), [0, mp.inf])
    assert abs(got.value - oracle) <= 10 * (got.truncation_error + got.quadrature_error)
    assert abs(got.value - oracle) < mpf("1e-8")


def test_borel_sum_convergent_exponential():
    e = PowerSeries(tuple(1 / mp.factorial(k) for k in range(20)))
    cfg = BorelConfig(a=1, sigma=0)
    out = borel_sum(e, cfg, 1, full_output=True)
    assert abs(out.value - mp.e) <= 10 * (out.truncation_error + out.quadrature_error)


def test_borel_sum_constant_preserved():
    for sigma in (0, "1.5"):
        c = PowerSeries((mpf("2.25"), mpf(0), mpf(0)))
        cfg = BorelConfig(a=1, sigma=sigma)
        assert abs(borel_sum(c, cfg, 1) - mpf("2.25")) < mpf("1e-20")


def test_borel_sum_polynomial_consistency():
    # Polynomial sources are their own transform target: the Gamma weights
    # cancel term by term once the mapped expansion is padded long enough
    # (the pad controls the u-tail of the composed series).
    poly = PowerSeries((mpf(2), mpf(-3), mpf("0.5"), mpf(0))).pad(160)
    cfg = BorelConfig(a=1, sigma=0)
    for g in (mpf("0.5"), mpf(2)):
        want = 2 - 3 * g + mpf("0.5") * g * g
        assert abs(borel_sum(poly, cfg, g) - want) < mpf("1e-13") * max(1, abs(want))


def test_borel_sum_sigma_independence():
    s = alternating_factorial(30)
    for g in (mpf("0.5"), mpf(1), mpf(2)):
        outs = [borel_sum(s, BorelConfig(a=1, sigma=sig), g, full_output=True)
                for sig in (0, 1)]
        budget = sum(o.truncation_error + o.quadrature_error for o in outs)
        assert abs(outs[0].value - outs[1].value) <= 10 * budget


def test_borel_pade_alternating_factorial():
    got = borel_pade_sum(alternating_factorial(10), 0, 0, 1, 1)
    oracle = mp.quad(lambda t: mp.exp(-t) / (1 + t), [0, mp.inf])
    assert abs(got - oracle) < mpf("1e-30")


def test_borel_pade_rational_source():
    # Source whose transform is rational: f_k = k! / 2^k -> B = 1/(1 - z/2),
    # pole on the positive axis -> summability violation.
    s = PowerSeries(tuple(mp.factorial(k) / mpf(2) ** k for k in range(8)))
    with pytest.raises(SummabilityError):
        borel_pade_sum(s, 0, 0, 1, 1)


def test_borel_pade_m_zero_matches_plain_integral():
    poly = PowerSeries((mpf(1), mpf(2), mpf(3), mpf(0), mpf(0)))
    got = borel_pade_sum(poly, 0, 2, 0, mpf("0.7"))
    want = 1 + 2 * mpf("0.7") + 3 * mpf("0.49")
    assert abs(got - want) < mpf("1e-25")


def test_borel_pade_large_orders_reproduce_rational():
    # Rational source 2/(1 + g/2): the transform is entire, so a large
    # rational fit plus the Laplace integral reproduces the function at a
    # coupling where the fit covers the weighted range.
    den = (mpf(1), mpf("0.5"))
    coeffs = []
    for k in range(13):
        acc = (mpf(2) if k == 0 else mpf(0))
        for j in range(1, min(k, 1) + 1):
            acc -= den[j] * coeffs[k - j]
        coeffs.append(acc)
    s = PowerSeries(tuple(coeffs))
    got = borel_pade_sum(s, 0, 6, 6, mpf("0.3"))
    want = 2 / (1 + mpf("0.3") / 2)
    assert abs(got - want) < mpf("1e-10")


def test_config_validation():
    with pytest.raises(UsageError):
        BorelConfig(a=0)
    with pytest.raises(UsageError):
        BorelConfig(a=1, sigma=-1)
    with pytest.raises(UsageError):
        BorelConfig(a=1, truncation=0)
    with pytest.raises(UsageError):
        borel_sum(alternating_factorial(4), BorelConfig(a=1), -1)

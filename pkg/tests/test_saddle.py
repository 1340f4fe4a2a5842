"""Convergence-constant solvers: the saddle system and the exact d=0 rate."""

import pytest
from mpmath import mp, mpf

from resum import UsageError, d0_exact_rate, predicted_R, solve_saddle

REFERENCE = {
    "1.5": ("4.031233504", "0.2429640300"),
    "2": ("4.466846120", "0.2136524524"),
    "2.5": ("4.895690188", "0.1896450439"),
    "3": ("5.3168634291", "0.1699396648"),
    "4": ("6.1359656420", "0.14003129119"),
}


@pytest.mark.parametrize("alpha", sorted(REFERENCE))
def test_tabulated_pairs(alpha):
    mu_ref, neg_lam_ref = REFERENCE[alpha]
    sol = solve_saddle(alpha)
    assert abs(sol.mu - mpf(mu_ref)) <= mpf("1e-8")
    assert abs(-sol.lambda_saddle - mpf(neg_lam_ref)) <= mpf("1e-8")
    assert max(sol.residuals) < mpf("1e-12")


def test_mu_increases_with_alpha():
    mus = [solve_saddle(a).mu for a in ("1.5", "2", "2.5", "3", "4")]
    assert all(b > a for a, b in zip(mus, mus[1:]))


def test_alpha_range():
    with pytest.raises(UsageError):
        solve_saddle(1)


def test_exact_rate_values():
    # Relative comparison: the quoted R is a 10-digit print whose final digit
    # sits a hair outside its own defining transcendental equation.
    R, rate = d0_exact_rate()
    assert abs(R - mpf("4.526638689")) / mpf("4.526638689") <= mpf("1e-9")
    assert abs(rate - mpf("0.5154353381")) / mpf("0.5154353381") <= mpf("1e-9")
    assert abs(R / mpf("1.5") - mpf("3.017759126")) / mpf(3) <= mpf("1e-9")


def test_rate_identity():
    R, rate = d0_exact_rate()
    assert abs(rate - mp.exp(-3 / R)) < mpf("1e-60")


def test_predicted_scale_constants():
    assert abs(predicted_R("1.5", 8) - mpf("32.25")) < mpf("0.001")
    assert abs(predicted_R(4, "1.5") - mpf("9.2039")) <= mpf("1e-4")
    assert abs(predicted_R(2, 1) - solve_saddle(2).mu) == 0
    with pytest.raises(UsageError):
        predicted_R(2, -1)

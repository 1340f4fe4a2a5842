"""Benchmark series generators and their independent numeric oracles.

Three classic strongly divergent expansions drive the test and benchmark
suites:

* the zero-dimensional quartic partition function
  ``Z(g) = (2*pi)^(-1/2) Integral dx exp(-x^2/2 - g x^4/4!)``,
* the ground-state energy of the quartic anharmonic oscillator
  ``H = p^2/2 + x^2/2 + (g/4!) x^4``,
* the seven-loop renormalization-group functions of the three-dimensional
  scalar phi^4 model (beta function and the exponent series gamma^-1, eta).

Coefficient generators are exact recursions at working precision; the value
oracles (adaptive quadrature, harmonic-basis diagonalization) are deliberately
independent of every summation algorithm in this package so they can arbitrate
accuracy claims.
"""

from dataclasses import dataclass

import numpy as np
from mpmath import mp, mpf
from scipy.linalg import eig_banded

from .errors import DomainError, ResourceError, UsageError
from .precision import to_mpf, workdps
from .series import PowerSeries, multiply

# Inverse growth constants A = 1/a of the quartic coupling expansions,
# f_k ~ (-1)^k k^b A^(-k) k!, by space dimension.  d=0 and d=1 are checked
# against the generators below; d=2 and d=3 are documented constants only.
LARGE_ORDER_A = {
    0: "1.5",
    1: "8",
    2: "35.10268957367896",
    3: "113.38350781527714",
}

# Borel-plane singularity parameter of the d=3 beta-function series.
RG_LARGE_ORDER_A_PARAM = "0.147774232"


def d0_partition_coeffs(K, digits=None):
    """Expansion coefficients of the d=0 partition function through order K.

    Gaussian moments give ``Z_k = (-1/24)^k (4k-1)!! / k!`` which the stable
    ratio recursion ``Z_k = -Z_{k-1} (4k-1)(4k-3) / (24 k)`` reproduces
    without ever forming the factorials.
    """
    if K < 0:
        raise UsageError("K must be >= 0")
    with workdps(digits):
        coeffs = [mpf(1)]
        for k in range(1, K + 1):
            coeffs.append(-coeffs[-1] * (4 * k - 1) * (4 * k - 3) / (24 * k))
        return PowerSeries(coeffs, "g")


def d0_partition_value(g, digits=None, quad_method="tanh-sinh"):
    """Numeric value of the d=0 partition integral at coupling ``g >= 0``.

    ``g = inf`` returns the strong-coupling amplitude
    ``lim g^(1/4) Z(g) = (1/2) 24^(1/4) sqrt(pi) / Gamma(3/4)``.
    ``quad_method`` selects the mpmath node family, so two calls with
    different methods act as independent cross-checks.
    """
    with workdps(digits):
        g = to_mpf(g) if g != mp.inf else mp.inf
        if g == mp.inf:
            return mpf("0.5") * mpf(24) ** mpf("0.25") * mp.sqrt(mp.pi) / mp.gamma(mpf(3) / 4)
        if g < 0:
            raise DomainError("integral diverges for g < 0")
        with mp.extradps(10):
            val = mp.quad(
                lambda x: mp.exp(-x * x / 2 - g * x ** 4 / 24),
                [0, mp.inf],
                method=quad_method,
            )
            val = 2 * val / mp.sqrt(2 * mp.pi)
        return +val


def _x4_even_elements(n):
    """Nonzero <n|x^4|m> in the unit-frequency oscillator basis, m = n, n+2, n+4."""
    d0 = (6 * n * n + 6 * n + 3) / mpf(4)
    d2 = (2 * n + 3) * mp.sqrt((n + 1) * (n + 2)) / 2
    d4 = mp.sqrt((n + 1) * (n + 2) * (n + 3) * (n + 4)) / 4
    return d0, d2, d4


def anharmonic_ground_coeffs(K, digits=None):
    """Ground-state perturbation coefficients E_k of ``H = p^2/2 + x^2/2 + (g/4!) x^4``.

    Rayleigh-Schrodinger recursion in the oscillator basis.  The quartic
    perturbation couples ``|n>`` to ``|n +- 2>, |n +- 4>`` only, so order k
    involves even states up to ``|4k>`` and the whole recursion costs O(K^2).
    The recursion cancels many leading digits between orders, hence the
    generous internal guard precision.
    """
    if K < 0:
        raise UsageError("K must be >= 0")
    with workdps(digits):
        target_dps = mp.dps
        with mp.workdps(target_dps + 2 * K + 10):
            nmax = 4 * K + 4
            # W[n][.] = <n|x^4/24|m> for m = n-4, n-2, n, n+2, n+4 (even n).
            w = {}
            for n in range(0, nmax + 1, 2):
                d0, d2, d4 = _x4_even_elements(n)
                w[n] = (d0 / 24, d2 / 24, d4 / 24)
            energies = [mpf(1) / 2]
            # psi[j][n] for even n > 0; intermediate normalization <0|psi_j> = delta_j0.
            psi = [{0: mpf(1)}]
            for j in range(1, K + 1):
                prev = psi[j - 1]
                applied = {}
                for n, c in prev.items():
                    if c == 0:
                        continue
                    d0, d2, d4 = w[n]
                    applied[n] = applied.get(n, mpf(0)) + d0 * c
                    applied[n + 2] = applied.get(n + 2, mpf(0)) + d2 * c
                    applied[n + 4] = applied.get(n + 4, mpf(0)) + d4 * c
                    if n >= 2:
                        dm2 = w[n - 2][1]
                        applied[n - 2] = applied.get(n - 2, mpf(0)) + dm2 * c
                    if n >= 4:
                        dm4 = w[n - 4][2]
                        applied[n - 4] = applied.get(n - 4, mpf(0)) + dm4 * c
                energies.append(applied.get(0, mpf(0)))
                cur = {}
                for n, v in applied.items():
                    if n == 0:
                        continue
                    acc = -v
                    for i in range(1, j):
                        c_prev = psi[j - i].get(n)
                        if c_prev is not None:
                            acc += energies[i] * c_prev
                    cur[n] = acc / n
                psi.append(cur)
            coeffs = [+e for e in energies]
        return PowerSeries(coeffs, "g")


def _banded_lu_solve(rows, rhs):
    """Solve a small banded system by Gaussian elimination with partial pivoting.

    ``rows`` is a list of dicts {column: value}; consumed destructively.
    """
    n = len(rows)
    x = list(rhs)
    order = list(range(n))
    for i in range(n):
        # Pivot among the rows that still carry column i (bandwidth 2 below).
        pivot = i
        pmax = abs(rows[order[i]].get(i, mpf(0)))
        for r in range(i + 1, min(i + 3, n)):
            v = abs(rows[order[r]].get(i, mpf(0)))
            if v > pmax:
                pmax, pivot = v, r
        if pmax == 0:
            raise ZeroDivisionError("singular banded matrix")
        if pivot != i:
            order[i], order[pivot] = order[pivot], order[i]
            x[i], x[pivot] = x[pivot], x[i]
        prow = rows[order[i]]
        pval = prow[i]
        for r in range(i + 1, min(i + 3, n)):
            row = rows[order[r]]
            v = row.get(i)
            if v is None or v == 0:
                continue
            f = v / pval
            for c, pv in prow.items():
                if c > i:
                    row[c] = row.get(c, mpf(0)) - f * pv
            del row[i]
            x[r] -= f * x[i]
    for i in range(n - 1, -1, -1):
        row = rows[order[i]]
        acc = x[i]
        for c, v in row.items():
            if c > i:
                acc -= v * x[c]
        x[i] = acc / row[i]
    return x


def _band_matvec(diag, off1, off2, v):
    n = len(diag)
    out = []
    for i in range(n):
        acc = diag[i] * v[i]
        if i >= 1:
            acc += off1[i - 1] * v[i - 1]
        if i + 1 < n:
            acc += off1[i] * v[i + 1]
        if i >= 2:
            acc += off2[i - 2] * v[i - 2]
        if i + 2 < n:
            acc += off2[i] * v[i + 2]
        out.append(acc)
    return out


def _lowest_even_eigenvalue(diag, off1, off2, rel_tol):
    """Lowest eigenvalue of a symmetric pentadiagonal matrix at working precision.

    A float64 `scipy.linalg.eig_banded` pass seeds a Rayleigh-quotient
    inverse iteration run on the mpmath bands; the banded solves keep each
    sweep linear in the matrix size.
    """
    n = len(diag)
    band = np.zeros((3, n))
    band[0, :] = [float(x) for x in diag]
    band[1, : n - 1] = [float(x) for x in off1[: n - 1]]
    band[2, : n - 2] = [float(x) for x in off2[: n - 2]]
    vals, vecs = eig_banded(band, lower=True, select="i", select_range=(0, 0))
    sigma = mpf(vals[0])
    x = [mpf(v) for v in vecs[:, 0]]

    def rows_for(shift):
        rows = []
        for i in range(n):
            row = {i: diag[i] - shift}
            if i >= 1:
                row[i - 1] = off1[i - 1]
            if i + 1 < n:
                row[i + 1] = off1[i]
            if i >= 2:
                row[i - 2] = off2[i - 2]
            if i + 2 < n:
                row[i + 2] = off2[i]
            rows.append(row)
        return rows

    last = None
    for _ in range(60):
        try:
            y = _banded_lu_solve(rows_for(sigma), x)
        except ZeroDivisionError:
            sigma += abs(sigma) * mpf(10) ** (-mp.dps) + mpf(10) ** (-mp.dps)
            continue
        norm = mp.sqrt(mp.fsum(v * v for v in y))
        x = [v / norm for v in y]
        hx = _band_matvec(diag, off1, off2, x)
        new_sigma = mp.fsum(a * b for a, b in zip(x, hx))
        if last is not None and abs(new_sigma - sigma) <= rel_tol * max(1, abs(new_sigma)):
            return new_sigma
        last, sigma = sigma, new_sigma
    raise ResourceError("inverse iteration did not stabilize")


def _even_sector_bands(nbasis, omega, c2, c4):
    """Pentadiagonal even-sector bands of ``p^2/2 + c2 x^2 + c4 x^4`` in a
    frequency-``omega`` oscillator basis."""
    diag, off1, off2 = [], [], []
    for m in range(nbasis):
        n = 2 * m
        x4_0, x4_2, x4_4 = _x4_even_elements(n)
        half_n = n + mpf(1) / 2
        ssq = mp.sqrt((n + 1) * (n + 2)) / 2
        diag.append(omega / 2 * half_n + c2 / omega * half_n + c4 / omega ** 2 * x4_0)
        off1.append(-omega / 2 * ssq + c2 / omega * ssq + c4 / omega ** 2 * x4_2)
        off2.append(c4 / omega ** 2 * x4_4)
    return diag, off1, off2


def anharmonic_ground_value(g, digits=None, rel_tol=None, max_basis=3000):
    """Ground-state energy of the quartic anharmonic oscillator at ``g >= 0``.

    Diagonalizes the even sector of the scaled oscillator basis, growing the
    basis until the eigenvalue is stable to ``rel_tol`` (default
    ``10^(10 - digits)``, i.e. well beyond the 1e-12 the contract promises).
    ``g = inf`` returns the strong-coupling amplitude ``lim g^(-1/3) E(g)``,
    the ground energy of ``p^2/2 + x^4/24``.
    """
    with workdps(digits):
        if rel_tol is None:
            rel_tol = mpf(10) ** (10 - mp.dps)
        else:
            rel_tol = to_mpf(rel_tol)
        strong = g == mp.inf
        if not strong:
            g = to_mpf(g)
            if g < 0:
                raise DomainError("eigenvalue problem unstable for g < 0")
            if g == 0:
                return mpf(1) / 2
        with mp.extradps(15):
            if strong:
                c2, c4 = mpf(0), mpf(1) / 24
                omega = (6 * c4) ** (mpf(1) / 3) * 2
            else:
                c2, c4 = mpf(1) / 2, g / 24
                omega = max(mpf(1), (6 * c4) ** (mpf(1) / 3) * 2)
            nbasis = 48
            prev = None
            while nbasis <= max_basis:
                bands = _even_sector_bands(nbasis, omega, c2, c4)
                val = _lowest_even_eigenvalue(*bands, rel_tol=rel_tol / 10)
                if prev is not None and abs(val - prev) <= rel_tol * abs(val):
                    return +val
                prev = val
                nbasis = nbasis * 2
        raise ResourceError(
            "eigenvalue not stable to %s within %d basis states" % (rel_tol, max_basis)
        )


@dataclass(frozen=True)
class RgSeriesSet:
    """Seven-loop d=3 renormalization-group series in the rescaled coupling."""

    beta: PowerSeries
    gamma_inv: PowerSeries
    eta: PowerSeries
    large_order_a: object

    def __post_init__(self):
        if self.beta.order != 7 or self.gamma_inv.order != 7 or self.eta.order != 7:
            raise UsageError("RG series are seven-loop: order 7 expected")
        if self.beta.coeffs[0] != 0 or self.beta.coeffs[1] != -1 or self.beta.coeffs[2] != 1:
            raise UsageError("beta series must start -g + g^2")


_BETA_COEFFS = ("0", "-1", "1", "-308/729", "0.3510695977",
                "-0.3765268283", "0.49554751", "-0.749689")
_GAMMA_INV_COEFFS = ("1", "-1/6", "1/27", "-0.0230696212", "0.0198868202",
                     "-0.0224595215", "0.0303679053", "-0.046877951")
_ETA_COEFFS = ("0", "0", "0.0109739368", "0.0009142222", "0.0017962228",
               "-0.0006537035", "0.0012749100", "-0.001697694")


def rg_series(digits=None):
    """The published seven-loop series, parsed at working precision."""
    with workdps(digits):
        return RgSeriesSet(
            beta=PowerSeries(_BETA_COEFFS, "gtilde"),
            gamma_inv=PowerSeries(_GAMMA_INV_COEFFS, "gtilde"),
            eta=PowerSeries(_ETA_COEFFS, "gtilde"),
            large_order_a=to_mpf(RG_LARGE_ORDER_A_PARAM),
        )


def eta_over_g2_series(digits=None):
    """The eta series with its leading ``g^2`` stripped (order 5)."""
    with workdps(digits):
        eta = rg_series().eta
        return PowerSeries(eta.coeffs[2:], eta.var)


def nu_inv_series(digits=None):
    """Series of ``1/nu = (2 - eta) / gamma`` through order 7.

    Built from the published series via the exact exponent relation
    ``gamma = nu (2 - eta)``, providing an independently summable route to
    ``nu``.
    """
    with workdps(digits):
        rg = rg_series()
        two_minus_eta = PowerSeries(
            tuple((2 if k == 0 else 0) - c for k, c in enumerate(rg.eta.coeffs)),
            rg.eta.var,
        )
        return multiply(rg.gamma_inv, two_minus_eta)

"""The order-dependent change of variables.

A mapping ``g = rho * zeta(lambda)`` trades the physical coupling for a
variable confined to the unit interval, with an adjustable scale ``rho``.
Re-expanding a series through the mapping (optionally with a ``(1-lambda)^p``
prefactor split off, or with the covariant weight used for beta functions)
produces coefficients that are polynomials in ``rho`` -- the raw material the
order-by-order tuning in :mod:`resum.odm` works on.
"""

import enum
from dataclasses import dataclass, field

from mpmath import mp, mpf

from .errors import DomainError, SolverError, UsageError
from .precision import to_mpf, tolerance
from .series import PowerSeries, binomial_series, _mul_trunc


class MappingFamily(enum.Enum):
    # g = rho * lambda / (1 - lambda)^alpha: power-law growth with a cut
    POWER_CUT = "power-cut"
    # g = rho * ((1 - lambda)^(-alpha) - 1): no new singularity at lambda = 1
    SHIFTED_POWER = "shifted-power"


@dataclass(frozen=True)
class MappingSpec:
    """A mapping family with its exponent, prefactor and covariance flag.

    ``prefactor_p`` declares the split ``physical(g) = (1-lambda)^p * f(lambda)``
    whose lambda-side series the table construction expands.
    ``beta_covariant`` instead applies the flow-covariance weight
    ``(1-lambda)^(alpha+1) / (alpha rho)``; it requires a source that starts
    at first order and excludes a plain prefactor.
    """

    family: MappingFamily
    alpha: object
    prefactor_p: object = 0
    beta_covariant: bool = False

    def __post_init__(self):
        alpha = to_mpf(self.alpha)
        p = to_mpf(self.prefactor_p)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "prefactor_p", p)
        if self.family is MappingFamily.POWER_CUT and not alpha > 1:
            raise UsageError("power-cut mapping requires alpha > 1")
        if self.family is MappingFamily.SHIFTED_POWER and not alpha > 0:
            raise UsageError("shifted-power mapping requires alpha > 0")
        if self.beta_covariant and p != 0:
            raise UsageError("beta-covariant tables exclude a plain prefactor")
        if self.beta_covariant and self.family is not MappingFamily.SHIFTED_POWER:
            raise UsageError(
                "the covariant weight (1-lambda)^(alpha+1)/(alpha rho) belongs "
                "to the shifted-power family"
            )


def zeta_series(mapping, order, var="lambda"):
    """Taylor coefficients of the mapping profile ``zeta(lambda)`` through ``order``.

    Power-cut: ``lambda (1-lambda)^(-alpha)``; shifted-power:
    ``(1-lambda)^(-alpha) - 1`` (linear coefficient ``alpha``; the scale is
    absorbed by ``rho``, so rho values are not comparable across families).
    """
    if order < 1:
        raise UsageError("order must be >= 1")
    binom = binomial_series(-mapping.alpha, order, var)
    if mapping.family is MappingFamily.POWER_CUT:
        coeffs = (mpf(0),) + binom.coeffs[:order]
    else:
        coeffs = (mpf(0),) + binom.coeffs[1:]
    return PowerSeries(coeffs, var)


def zeta_value(mapping, lam):
    """``zeta`` evaluated pointwise; accepts real or complex ``lambda != 1``."""
    one_minus = 1 - lam
    if mapping.family is MappingFamily.POWER_CUT:
        return lam * one_minus ** (-mapping.alpha)
    return one_minus ** (-mapping.alpha) - 1


def g_of_lambda(lam, rho, mapping):
    """The physical coupling at a point of the mapped interval."""
    return rho * zeta_value(mapping, lam)


def lambda_of_g(g, rho, mapping):
    """Invert ``g = rho zeta(lambda)`` on the principal branch ``lambda in [0, 1)``.

    ``g = inf`` maps to ``lambda = 1`` exactly.  Safeguarded Newton from an
    asymptotics-aware seed, with bisection fallback; accurate to
    ``10^(6 - digits)`` relative.
    """
    rho = to_mpf(rho)
    if rho <= 0:
        raise UsageError("rho must be positive")
    if g == mp.inf:
        return mpf(1)
    g = to_mpf(g)
    if g < 0:
        raise DomainError("inversion implemented on the real branch g >= 0 only")
    if g == 0:
        return mpf(0)
    alpha = mapping.alpha
    w = g / rho
    # Seed from the two ends of the interval.
    if mapping.family is MappingFamily.POWER_CUT:
        seed = 1 - (1 / w) ** (1 / alpha) if w > 1 else w / (1 + w)
    else:
        seed = 1 - (1 + w) ** (-1 / alpha)
    lo, hi = mpf(0), mpf(1)
    lam = min(max(seed, tolerance()), 1 - tolerance())
    tol = tolerance(6)
    for _ in range(mp.prec + 40):
        one_minus = 1 - lam
        if mapping.family is MappingFamily.POWER_CUT:
            val = lam * one_minus ** (-alpha) - w
            deriv = one_minus ** (-alpha - 1) * (1 + (alpha - 1) * lam)
        else:
            val = one_minus ** (-alpha) - 1 - w
            deriv = alpha * one_minus ** (-alpha - 1)
        if val == 0:
            return lam
        if val > 0:
            hi = lam
        else:
            lo = lam
        step = val / deriv
        nxt = lam - step
        if not (lo < nxt < hi):
            nxt = (lo + hi) / 2
        if abs(nxt - lam) <= tol * max(abs(lam), tolerance()):
            return nxt
        lam = nxt
    raise SolverError("mapping inversion did not converge")


@dataclass(frozen=True)
class RhoPolynomialTable:
    """Coefficients of the mapped series as polynomials in the scale ``rho``.

    ``polys[k][j]`` multiplies ``rho^j`` in the order-``k`` lambda
    coefficient; each polynomial has degree at most ``k``.
    """

    polys: tuple
    mapping: MappingSpec
    source_order: int
    source: PowerSeries = field(repr=False, compare=False, default=None)

    def __len__(self):
        return len(self.polys)

    def poly(self, k):
        return self.polys[k]

    def eval_poly(self, k, rho):
        acc = mpf(0)
        for c in reversed(self.polys[k]):
            acc = acc * rho + c
        return acc

    def eval_dpoly(self, k, rho):
        acc = mpf(0)
        poly = self.polys[k]
        for j in range(len(poly) - 1, 0, -1):
            acc = acc * rho + j * poly[j]
        return acc

    def lambda_coeffs(self, rho, order=None):
        """The numeric lambda-series ``P_0(rho) .. P_order(rho)``."""
        if order is None:
            order = self.source_order
        return tuple(self.eval_poly(k, rho) for k in range(order + 1))


def build_rho_table(source, mapping, order=None):
    """Expand ``source`` through the mapping into polynomials in ``rho``.

    Plain case: the table holds the series of
    ``(1-lambda)^(-p) * source(rho zeta(lambda))``, i.e.
    ``polys[k][n] = f_n [lambda^k] (1-lambda)^(-p) zeta^n``.
    Covariant case (source starting at first order):
    ``(1-lambda)^(alpha+1)/(alpha rho) * source(rho zeta(lambda))`` with the
    leading ``rho`` cancelled against the source's vanishing constant term.
    """
    if source.order < 1:
        raise UsageError("source series must have order >= 1")
    if mapping.beta_covariant and source.coeffs[0] != 0:
        raise UsageError("beta-covariant tables need a source with zero constant term")
    K = source.order if order is None else min(order, source.order)
    if mapping.beta_covariant:
        weight = binomial_series(mapping.alpha + 1, K, "lambda")
    else:
        weight = binomial_series(-mapping.prefactor_p, K, "lambda")
    zeta = zeta_series(mapping, K)
    polys = [[mpf(0)] * (k + 1) for k in range(K + 1)]
    shift = 1 if mapping.beta_covariant else 0
    cur = list(weight.coeffs)  # running product weight * zeta^n
    for n in range(0, K + 1):
        if n > 0:
            cur = _mul_trunc(cur, zeta.coeffs, K)
        fn = source.coeffs[n]
        if mapping.beta_covariant:
            if n == 0:
                continue
            fn = fn / mapping.alpha
        if fn == 0:
            continue
        col = n - shift
        # cur[k] vanishes below k = n because zeta starts at first order.
        for k in range(n, K + 1):
            polys[k][col] += fn * cur[k]
    return RhoPolynomialTable(
        polys=tuple(tuple(p) for p in polys),
        mapping=mapping,
        source_order=K,
        source=source,
    )

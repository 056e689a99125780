"""Closed-form asymptotics and the constant Lambda_alpha.

Lambda_alpha = 4 sqrt(3) (pi e^{-gamma})^{1/(2 alpha)} (alpha/6)^{1/(4 alpha)} Pi_alpha,
    log Pi_alpha = sum_{l>=1} [ 1/(2 alpha l) + log(1 - {alpha l}/(alpha l)) ].

The infinite sum is cut at N.  For alpha with partial quotients <= A the
omitted tail is bounded by

    (3A/(alpha N)) (log N + 1/2) + (3 alpha N - 2) / (6 alpha N (alpha N - 1)),

which rests on the discrepancy estimate |S_alpha(x)| <= (3/2) A log x.  The
floating-point error of the partial sum is bounded separately and added to
the radius, so [lambda_lo, lambda_hi] is an honest enclosure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import chain

import mpmath
import numpy as np

from .alpha import Alpha, enclosure
from .beatty import iter_blocks
from .counting import DISTINCT, UNRESTRICTED, count_distinct, count_unrestricted
from .errors import DomainError, MissingBoundError
from .saddle import CLOSED_FORM, EstimateReport

_GAMMA_DIGITS = 80
# built at full precision; mpf() at the default 53 bits would truncate the literal
with mpmath.workdps(_GAMMA_DIGITS + 10):
    EULER_GAMMA = mpmath.mpf(
        "0.57721566490153286060651209008240243104215933593992359880576723488486772677766467")

_U = 2.0 ** -53

# the two tables of Beatty(sqrt 2) data: n values for q and for p
REFERENCE_Q_NS = (50, 100, 200, 400, 800, 1600)
REFERENCE_P_NS = (25, 50, 100, 200, 400, 800)


@dataclass(frozen=True)
class LambdaEstimate:
    alpha_spec: str
    N: int
    A: int
    log_pi_alpha: float
    error_radius: float
    rounding_radius: float
    lambda_lo: mpmath.mpf
    lambda_hi: mpmath.mpf
    conditional: bool = False

    @property
    def central(self) -> float:
        return float((self.lambda_lo + self.lambda_hi) / 2)

    @property
    def radius(self) -> float:
        return self.error_radius + self.rounding_radius


# ----------------------------------------------------------------------
# truncated product
# ----------------------------------------------------------------------

def _sigma_m_parts(a: Alpha, N: int):
    """Terms 1/(2 alpha l) - log1p({alpha l}/floor(alpha l)) chunk by chunk, with error bounds.

    Since 1 - f/(alpha l) = b/(b + f) with b = floor(alpha l), the log term is
    -log1p(f/b); b is exact, f is within ``err`` of the true fractional part.
    """
    for _, b, f, err in iter_blocks(a, N):
        bf = b.astype(np.float64)
        t1 = 0.5 / (bf + f)
        t2 = -np.log1p(f / bf)
        # |d term/d f| <= 2/b; a few ulps for each elementary operation
        fp = 2.0 * err / bf + 8 * _U * (np.abs(t1) + np.abs(t2))
        yield t1 + t2, fp


def sigma_m_certified(a: Alpha, N: int) -> tuple[float, float]:
    """(partial sum through N, bound on its floating-point error)."""
    if N <= 10:
        raise DomainError(f"N must be > 10, got {N}")
    terms, fps = [], []
    for t, fp in _sigma_m_parts(a, N):
        terms.append(t)
        fps.append(float(fp.sum()))
    value = math.fsum(chain.from_iterable(terms))
    radius = math.fsum(fps) * (1 + 1e-10) + abs(value) * _U
    return value, radius


def sigma_m(a: Alpha, N: int) -> float:
    """sum_{l<=N} [1/(2 alpha l) + log(1 - {alpha l}/(alpha l))], the log of the truncated product."""
    return sigma_m_certified(a, N)[0]


def _resolve_A(a: Alpha, A: int | None) -> int:
    if A is None:
        A = a.quotient_bound
    if A is None:
        raise MissingBoundError(
            f"no partial-quotient bound known for {a.spec}; supply one explicitly")
    if A < 1:
        raise DomainError(f"A must be >= 1, got {A}")
    return A


def _alpha_iv(a: Alpha, bits: int = 160):
    lo, hi = enclosure(a, bits)
    return mpmath.iv.mpf([mpmath.mpf((lo, -bits)), mpmath.mpf((hi, -bits))])


def error_bound(a: Alpha, N: int, A: int | None = None) -> float:
    """Upper bound on |log Pi_alpha - sigma_m(a, N)| for partial quotients <= A."""
    if N <= 10:
        raise DomainError(f"N must be > 10, got {N}")
    A = _resolve_A(a, A)
    iv = mpmath.iv
    with mpmath.workprec(96):
        iv.prec = 96
        al = _alpha_iv(a)
        aN = al * N
        b = 3 * A / aN * (iv.log(N) + iv.mpf(0.5)) + (3 * aN - 2) / (6 * aN * (aN - 1))
        return math.nextafter(float(b.b), math.inf)


def _gamma_iv():
    eps = mpmath.mpf(10) ** -(_GAMMA_DIGITS - 1)
    return mpmath.iv.mpf([EULER_GAMMA - eps, EULER_GAMMA + eps])


def lambda_prefactor_iv(a: Alpha, prec: int = 128):
    """Interval for 4 sqrt(3) (pi e^{-gamma})^{1/(2 alpha)} (alpha/6)^{1/(4 alpha)}."""
    iv = mpmath.iv
    iv.prec = prec
    al = _alpha_iv(a, prec + 32)
    log_pre = (iv.log(48) / 2
               + (iv.log(iv.pi) - _gamma_iv()) / (2 * al)
               + iv.log(al / 6) / (4 * al))
    return iv.exp(log_pre)


def lambda_constant(a: Alpha, N: int, A: int | None = None) -> LambdaEstimate:
    """Enclosure of Lambda_alpha from the first N factors of the product."""
    A = _resolve_A(a, A)
    log_pi, fp_radius = sigma_m_certified(a, N)
    radius = error_bound(a, N, A)
    iv = mpmath.iv
    iv.prec = 128
    with mpmath.workprec(128):
        # radius + fp_radius and log_pi -+ r are exact at 128 bits
        r = mpmath.mpf(radius) + mpmath.mpf(fp_radius)
        lp = iv.mpf([mpmath.mpf(log_pi) - r, mpmath.mpf(log_pi) + r])
        lam = lambda_prefactor_iv(a) * iv.exp(lp)
        # raw endpoint tuples; converting through mpf(x.a) would round to 53 bits
        lo, hi = (mpmath.mpf(e) for e in lam._mpi_)
    return LambdaEstimate(a.spec, N, A, log_pi, radius, fp_radius, lo, hi, a.conditional)


def c_alpha_constant(a: Alpha, L: int, convention: str = "limit") -> float:
    """Constant term c_alpha of L_alpha(t) = pi^2/(6 alpha t) + (1 - 1/alpha)/2 log t + c_alpha + o(1).

    With ``convention="limit"`` the product sum enters with a minus sign,
    which is the value L_alpha actually approaches.  ``"printed"`` keeps the
    plus sign of the published statement for comparison.  The truncated sum
    carries no rigorous tail bound.
    """
    if L <= 10:
        raise DomainError(f"L must be > 10, got {L}")
    al = a.value
    base = (float(EULER_GAMMA) / (2 * al) - 0.5 * math.log(2 * math.pi)
            + 0.5 * (1 - 1 / al) * math.log(al))
    s = sigma_m(a, L)
    if convention == "limit":
        return base - s
    if convention == "printed":
        return base + s
    raise DomainError(f"unknown convention {convention!r}")


# ----------------------------------------------------------------------
# closed-form estimates
# ----------------------------------------------------------------------

def q_constant(a: Alpha) -> float:
    """2^{2 - 1/(2 alpha)} (3 alpha)^{1/4}."""
    al = a.value
    return 2 ** (2 - 1 / (2 * al)) * (3 * al) ** 0.25


def log_q_hat(a: Alpha, n: int) -> float:
    """log of n^{-3/4} exp(pi sqrt(n/(3 alpha))), the estimate stripped of its constant."""
    return math.pi * math.sqrt(n / (3 * a.value)) - 0.75 * math.log(n)


def log_p_hat(a: Alpha, n: int) -> float:
    """log of n^{-1 + 1/(4 alpha)} exp(pi sqrt(2n/(3 alpha)))."""
    al = a.value
    return math.pi * math.sqrt(2 * n / (3 * al)) - (1 - 1 / (4 * al)) * math.log(n)


def theorem_q_estimate(a: Alpha, n: int) -> EstimateReport:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    al = a.value
    log_value = (math.pi * math.sqrt(n / (3 * al)) - (2 - 1 / (2 * al)) * math.log(2)
                 - 0.25 * math.log(3 * al) - 0.75 * math.log(n))
    return EstimateReport.from_log(n, DISTINCT, CLOSED_FORM, log_value)


def theorem_p_estimate(a: Alpha, n: int, lam: LambdaEstimate) -> EstimateReport:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if lam.alpha_spec != a.spec:
        raise DomainError(f"Lambda was computed for {lam.alpha_spec}, not {a.spec}")
    base = log_p_hat(a, n)
    log_value = base - math.log(lam.central)
    interval = (base - float(mpmath.log(lam.lambda_hi)), base - float(mpmath.log(lam.lambda_lo)))
    return EstimateReport.from_log(n, UNRESTRICTED, CLOSED_FORM, log_value,
                                   log_interval=interval)


@dataclass(frozen=True)
class TableRow:
    n: int
    exact: int
    hat: mpmath.mpf
    ratio: mpmath.mpf
    theorem: EstimateReport | None = None


def reproduce_table(a: Alpha, kind: str, ns, lam: LambdaEstimate | None = None) -> list[TableRow]:
    """Rows (n, exact count, constant-free estimate, estimate/exact, full estimate)."""
    ns = list(ns)
    if kind in ("q", DISTINCT):
        table, log_hat = count_distinct(a, max(ns)), log_q_hat
    elif kind in ("p", UNRESTRICTED):
        table, log_hat = count_unrestricted(a, max(ns)), log_p_hat
    else:
        raise DomainError(f"unknown partition kind {kind!r}")
    rows = []
    with mpmath.workdps(30):
        for n in ns:
            exact = table[n]
            hat = mpmath.exp(mpmath.mpf(log_hat(a, n)))
            if log_hat is log_q_hat:
                theorem = theorem_q_estimate(a, n)
            else:
                theorem = theorem_p_estimate(a, n, lam) if lam is not None else None
            rows.append(TableRow(n, exact, hat, hat / exact, theorem))
    return rows

import math

import gmpy2
import mpmath
import pytest

from beatty_partitions.alpha import parse_alpha, with_quotient_bound
from beatty_partitions.asympt import (
    EULER_GAMMA, REFERENCE_P_NS, REFERENCE_Q_NS, c_alpha_constant, error_bound, lambda_constant,
    lambda_prefactor_iv, log_p_hat, log_q_hat, q_constant, reproduce_table, sigma_m,
    sigma_m_certified, theorem_p_estimate, theorem_q_estimate,
)
from beatty_partitions.counting import DISTINCT, UNRESTRICTED
from beatty_partitions.errors import DomainError, MissingBoundError

Q_RATIOS = {50: 4.65225, 100: 4.60774, 200: 4.57534, 400: 4.55105, 800: 4.53334, 1600: 4.52097}
P_RATIOS = {25: 6.09291, 50: 5.98154, 100: 5.91802, 200: 5.87448, 400: 5.84483, 800: 5.82401}


def _bound_oracle(alpha, N, A):
    with mpmath.workdps(40):
        aN = alpha * N
        return (3 * A / aN * (mpmath.log(N) + 0.5)
                + (3 * aN - 2) / (6 * aN * (aN - 1)))


@pytest.fixture(scope="module")
def sigma_ref(sqrt2):
    return sigma_m_certified(sqrt2, 10 ** 7)


@pytest.fixture(scope="module")
def lam6(sqrt2):
    return lambda_constant(sqrt2, 10 ** 6)


def test_sigma_m_single_term_oracle(sqrt2):
    # l = 1 term plus the next ten, straight from mpmath
    with mpmath.workdps(40):
        r2 = mpmath.sqrt(2)
        ref = mpmath.fsum(1 / (2 * r2 * ell) + mpmath.log(1 - (r2 * ell - mpmath.floor(r2 * ell)) / (r2 * ell))
                          for ell in range(1, 12))
        first = 1 / (2 * r2) + mpmath.log(1 - (r2 - 1) / r2)
    assert float(first) == pytest.approx(0.35355339 + math.log(1 / math.sqrt(2)), abs=1e-8)
    assert sigma_m(sqrt2, 11) == pytest.approx(float(ref), abs=1e-15)


def test_sigma_m_vs_mpmath_sum(golden):
    N = 3000
    with mpmath.workdps(30):
        x = golden.mpf(120)
        ref = mpmath.fsum(1 / (2 * x * ell) + mpmath.log(1 - (x * ell - mpmath.floor(x * ell)) / (x * ell))
                          for ell in range(1, N + 1))
    value, radius = sigma_m_certified(golden, N)
    assert abs(value - float(ref)) <= radius + 1e-16
    assert radius < 1e-13


def test_sigma_m_million(sqrt2):
    assert sigma_m(sqrt2, 10 ** 6) == pytest.approx(-0.127496, abs=6.11e-5)


@pytest.mark.parametrize("N", [10 ** 3, 10 ** 4, 10 ** 5])
def test_error_bound_honesty(sqrt2, sigma_ref, N):
    gap = abs(sigma_ref[0] - sigma_m(sqrt2, N))
    assert gap <= error_bound(sqrt2, N, 2) + error_bound(sqrt2, 10 ** 7, 2)


def test_doubling_tail(sqrt2):
    for N in (1000, 20000):
        gap = abs(sigma_m(sqrt2, 2 * N) - sigma_m(sqrt2, N))
        assert gap <= error_bound(sqrt2, N) + error_bound(sqrt2, 2 * N)


def test_error_bound_examples(sqrt2):
    assert error_bound(sqrt2, 10 ** 6, 2) == pytest.approx(6.11e-5, abs=5e-8)
    assert error_bound(sqrt2, 10 ** 6, 2) <= 6.11e-5
    # the quoted 0.0316 is a loose rounding of 0.03178
    b3 = error_bound(sqrt2, 10 ** 3, 2)
    assert b3 == pytest.approx(0.0316, rel=1e-2)
    for N in (11, 10 ** 3, 10 ** 6, 10 ** 9):
        ref = _bound_oracle(mpmath.sqrt(2), N, 2)
        b = error_bound(sqrt2, N, 2)
        # an upper bound, and tight
        assert ref <= b <= ref * (1 + 1e-14)


def test_error_bound_monotone(sqrt2):
    vals = [error_bound(sqrt2, N, 2) for N in (11, 100, 10 ** 4, 10 ** 6, 10 ** 8, 10 ** 12)]
    assert all(u > v for u, v in zip(vals, vals[1:]))
    assert vals[-1] < 1e-9


def test_error_bound_errors(sqrt2):
    with pytest.raises(MissingBoundError):
        error_bound(parse_alpha("e"), 1000)
    with pytest.raises(DomainError):
        error_bound(sqrt2, 10, 2)
    with pytest.raises(DomainError):
        error_bound(sqrt2, 1000, 0)
    with pytest.raises(MissingBoundError):
        lambda_constant(parse_alpha("pi"), 1000)


def test_lambda_interval(lam6):
    assert lam6.N == 10 ** 6 and lam6.A == 2 and not lam6.conditional
    assert 5.7731 < lam6.lambda_lo < lam6.lambda_hi < 5.7739
    assert lam6.central == pytest.approx(5.773, abs=1e-3)
    assert abs(lam6.log_pi_alpha + 0.127496) <= 6.11e-5
    width = float(lam6.lambda_hi - lam6.lambda_lo)
    assert width < 2 * 6.2e-5 * lam6.central


def test_lambda_assembly(sqrt2, lam6):
    with mpmath.workdps(40):
        al = mpmath.sqrt(2)
        pre = (4 * mpmath.sqrt(3) * (mpmath.pi * mpmath.exp(-mpmath.euler)) ** (1 / (2 * al))
               * (al / 6) ** (1 / (4 * al)))
        r = mpmath.mpf(lam6.error_radius) + lam6.rounding_radius
        lo = pre * mpmath.exp(lam6.log_pi_alpha - r)
        hi = pre * mpmath.exp(lam6.log_pi_alpha + r)
        assert abs(lam6.lambda_lo - lo) < 1e-30
        assert abs(lam6.lambda_hi - hi) < 1e-30
        # outward: the stored endpoints never cut into the exact interval
        assert lam6.lambda_lo <= lo and hi <= lam6.lambda_hi
        iv = lambda_prefactor_iv(sqrt2)
        assert iv.a <= pre <= iv.b


def test_lambda_nesting(sqrt2, lam6):
    lam7 = lambda_constant(sqrt2, 10 ** 7)
    assert lam7.lambda_hi - lam7.lambda_lo < lam6.lambda_hi - lam6.lambda_lo
    # both contain the true value, so they overlap, and the finer one sits inside the coarser
    assert lam6.lambda_lo <= lam7.lambda_lo and lam7.lambda_hi <= lam6.lambda_hi


def test_lambda_conditional_bound():
    e = with_quotient_bound(parse_alpha("e"), 50)
    lam = lambda_constant(e, 1000)
    assert lam.conditional and lam.A == 50


def test_euler_gamma_literal():
    with gmpy2.context(precision=300):
        ref = gmpy2.const_euler()
        with mpmath.workdps(90):
            text = mpmath.nstr(EULER_GAMMA, 85)
        assert abs(gmpy2.mpfr(text) - ref) < gmpy2.mpfr(10) ** -78


def test_c_alpha(sqrt2):
    c6 = c_alpha_constant(sqrt2, 10 ** 6)
    assert abs(c_alpha_constant(sqrt2, 2 * 10 ** 6) - c6) < 1e-3
    printed = c_alpha_constant(sqrt2, 10 ** 6, "printed")
    # the two conventions differ by twice the product sum
    assert printed - c6 == pytest.approx(2 * sigma_m(sqrt2, 10 ** 6), abs=1e-12)
    with pytest.raises(DomainError):
        c_alpha_constant(sqrt2, 5)


def test_q_constant(sqrt2):
    assert q_constant(sqrt2) == pytest.approx(4.493, abs=5e-4)
    with mpmath.workdps(30):
        r2 = mpmath.sqrt(2)
        ref = 2 ** (2 - 1 / (2 * r2)) * (3 * r2) ** 0.25
    assert q_constant(sqrt2) == pytest.approx(float(ref), rel=1e-14)


def test_hat_values(sqrt2):
    assert math.exp(log_q_hat(sqrt2, 50)) == pytest.approx(2568.04, abs=0.01)
    assert math.exp(log_q_hat(sqrt2, 1600)) == pytest.approx(1.23780e24, rel=5e-6)
    assert math.exp(log_p_hat(sqrt2, 25)) == pytest.approx(3412.03, abs=0.01)
    assert math.exp(log_p_hat(sqrt2, 800)) == pytest.approx(1.27599e24, rel=5e-6)


def test_theorem_q(sqrt2):
    est = theorem_q_estimate(sqrt2, 1600)
    assert est.kind == DISTINCT
    assert est.log_value == pytest.approx(log_q_hat(sqrt2, 1600) - math.log(q_constant(sqrt2)), abs=1e-12)
    with pytest.raises(DomainError):
        theorem_q_estimate(sqrt2, 0)


def test_theorem_p(sqrt2, lam6):
    est = theorem_p_estimate(sqrt2, 800, lam6)
    assert est.kind == UNRESTRICTED
    lo, hi = est.log_interval
    assert lo < est.log_value < hi
    assert hi - lo < 2e-4
    with pytest.raises(DomainError):
        theorem_p_estimate(parse_alpha("sqrt:3"), 800, lam6)


def test_table_ratios(sqrt2, lam6):
    rows_q = reproduce_table(sqrt2, "q", REFERENCE_Q_NS)
    rows_p = reproduce_table(sqrt2, "p", REFERENCE_P_NS, lam6)
    for r in rows_q:
        assert float(r.ratio) == pytest.approx(Q_RATIOS[r.n], abs=5e-6)
    for r in rows_p:
        assert float(r.ratio) == pytest.approx(P_RATIOS[r.n], abs=5e-6)
    # p-hat/p decreases toward Lambda
    ratios = [float(r.ratio) for r in rows_p]
    assert all(u > v > lam6.central for u, v in zip(ratios, ratios[1:]))
    # with the constant, the estimates land near the exact counts
    assert 0.98 < math.exp(rows_p[-1].theorem.log_value - math.log(rows_p[-1].exact)) < 1.02
    assert rows_p[0].theorem is not None
    assert reproduce_table(sqrt2, "p", [25])[0].theorem is None


def test_table_bad_kind(sqrt2):
    with pytest.raises(DomainError):
        reproduce_table(sqrt2, "x", [10])

import math
import random

import mpmath
import pytest

from beatty_partitions.alpha import parse_alpha
from beatty_partitions.counting import count_distinct, count_unrestricted
from beatty_partitions.errors import BracketError, DomainError
from beatty_partitions.genfun import L_alpha_deriv
from beatty_partitions.saddle import (
    P_EQUATION, Q_EQUATION, SADDLE_POINT, decimal_exp, estimate_p_saddle, estimate_q_saddle,
    solve_increasing, solve_p_saddle, solve_q_saddle,
)


def _g(a, n, t):
    return L_alpha_deriv(a, t, 1, 1e-11).value + n


def _h(a, n, t):
    return L_alpha_deriv(a, t, 1, 1e-11).value - 2 * L_alpha_deriv(a, 2 * t, 1, 1e-11).value + n


@pytest.fixture(scope="module")
def exact(sqrt2):
    return count_unrestricted(sqrt2, 800), count_distinct(sqrt2, 800)


def test_p_saddle_100(sqrt2):
    sol = solve_p_saddle(sqrt2, 100)
    assert sol.equation == P_EQUATION and sol.n == 100
    lead = math.pi / math.sqrt(600 * math.sqrt(2))
    # first-order correction -(1 - 1/alpha)/(4n)
    assert sol.t_star == pytest.approx(lead - (1 - 1 / math.sqrt(2)) / 400, rel=2e-3)
    assert sol.residual < 1e-4
    lo, hi = sol.bracket
    assert lo < sol.t_star < hi


@pytest.mark.parametrize("n", [10, 100, 1000])
def test_sign_change_around_root(sqrt2, n):
    t = solve_p_saddle(sqrt2, n).t_star
    assert _g(sqrt2, n, 0.9 * t) < 0 < _g(sqrt2, n, 1.1 * t)
    x = solve_q_saddle(sqrt2, n).t_star
    assert _h(sqrt2, n, 0.9 * x) < 0 < _h(sqrt2, n, 1.1 * x)


def test_random_roots_unique():
    rng = random.Random(7)
    specs = ["sqrt:2", "pi", "surd:1,1,2,5", "sqrt:3", "e"]
    for _ in range(20):
        a = parse_alpha(rng.choice(specs))
        n = rng.randint(5, 3000)
        t = solve_p_saddle(a, n).t_star
        grid = [t * 2 ** (k / 4) for k in range(-12, 13)]
        signs = [_g(a, n, s) > 0 for s in grid]
        assert sum(1 for u, v in zip(signs, signs[1:]) if u != v) == 1


def test_scaling_limits(sqrt2):
    cp = math.pi / math.sqrt(6 * math.sqrt(2))
    cq = math.pi / math.sqrt(12 * math.sqrt(2))
    # the quoted approximations 1.0787 and 0.7628 agree to about 3 digits
    assert cp == pytest.approx(1.0787, abs=5e-4) and cq == pytest.approx(0.7628, abs=5e-4)
    gaps_p = [abs(solve_p_saddle(sqrt2, n).t_star * math.sqrt(n) - cp) for n in (100, 400, 1600)]
    assert gaps_p[0] > gaps_p[1] > gaps_p[2]
    for n in (100, 400, 1600):
        assert solve_q_saddle(sqrt2, n).t_star * math.sqrt(n) == pytest.approx(cq, rel=1e-3)


def test_first_order_correction_trend(sqrt2):
    # (pi/sqrt(6 alpha n) - t*) n -> (1 - 1/alpha)/4
    target = (1 - 1 / math.sqrt(2)) / 4
    vals = []
    for n in (10 ** 2, 10 ** 3, 10 ** 4, 10 ** 5):
        t = solve_p_saddle(sqrt2, n).t_star
        vals.append((math.pi / math.sqrt(6 * math.sqrt(2) * n) - t) * n)
    assert all(abs(v - target) / target < 0.2 for v in vals)


def test_residuals(sqrt2, golden):
    for a in (sqrt2, golden):
        for n in (1, 50, 1600):
            assert solve_p_saddle(a, n).residual < 1e-6 * n
            assert solve_q_saddle(a, n).residual < 1e-6 * n
    assert solve_q_saddle(sqrt2, 1600).residual < 1e-3


def test_estimates_near_exact(sqrt2, exact):
    p, q = exact
    ep, eq = estimate_p_saddle(sqrt2, 800), estimate_q_saddle(sqrt2, 800)
    assert 0.8 < math.exp(ep.log_value - math.log(p[800])) < 1.2
    assert 0.8 < math.exp(eq.log_value - math.log(q[800])) < 1.2
    assert ep.variant == eq.variant == SADDLE_POINT
    assert ep.saddle.equation == P_EQUATION and eq.saddle.equation == Q_EQUATION


def test_ratio_trend(sqrt2, exact):
    p, q = exact
    ns = (100, 200, 400, 800)
    rp = [abs(estimate_p_saddle(sqrt2, n).log_value - math.log(p[n])) for n in ns]
    rq = [abs(estimate_q_saddle(sqrt2, n).log_value - math.log(q[n])) for n in ns]
    assert all(u > v for u, v in zip(rp, rp[1:]))
    assert all(u > v for u, v in zip(rq, rq[1:]))


def test_leading_exponents(sqrt2):
    al = math.sqrt(2)
    prev_p = prev_q = None
    for n in (100, 1000, 10000):
        rp = abs(estimate_p_saddle(sqrt2, n).log_value - 2 * math.pi * math.sqrt(n / (6 * al))) / math.sqrt(n)
        rq = abs(estimate_q_saddle(sqrt2, n).log_value - math.pi * math.sqrt(n / (3 * al))) / math.sqrt(n)
        assert prev_p is None or rp < prev_p
        assert prev_q is None or rq < prev_q
        prev_p, prev_q = rp, rq


def test_value_string(sqrt2):
    est = estimate_q_saddle(sqrt2, 100)
    with mpmath.workdps(30):
        ref = mpmath.exp(mpmath.mpf(est.log_value))
    assert mpmath.mpf(est.value) == pytest.approx(ref, rel=1e-11)
    # no float overflow for huge estimates
    big = estimate_p_saddle(sqrt2, 10 ** 6)
    assert "e+" in big.value and math.isfinite(big.log_value)


def test_decimal_exp():
    assert decimal_exp(0.0) == "1.0"
    assert decimal_exp(math.log(2.5), 6) == "2.5"


def test_deterministic(sqrt2):
    a, b = solve_q_saddle(sqrt2, 777), solve_q_saddle(sqrt2, 777)
    assert a == b


def test_solver_on_simple_function():
    root, res, (lo, hi), it = solve_increasing(lambda t: t * t - 2, lambda t: 2 * t, 1.0)
    assert root == pytest.approx(math.sqrt(2), rel=1e-12)
    assert lo < root < hi and it < 20


def test_solver_bracket_failure():
    with pytest.raises(BracketError):
        solve_increasing(lambda t: -1.0, lambda t: 1.0, 1.0)
    with pytest.raises(BracketError):
        solve_increasing(lambda t: 1.0, lambda t: 1.0, 1.0)


def test_bad_n(sqrt2):
    with pytest.raises(DomainError):
        solve_p_saddle(sqrt2, 0)
    with pytest.raises(DomainError):
        estimate_q_saddle(sqrt2, -3)

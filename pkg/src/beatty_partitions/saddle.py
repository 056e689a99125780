"""Saddle-point estimates for p_alpha(n) and q_alpha(n).

For p the saddle t solves L'(t) + n = 0; for q it solves
L'(t) - 2 L'(2t) + n = 0.  Both left sides are strictly increasing in t, so
the root is bracketed by expanding around the leading-order guess and then
refined by Newton steps that fall back to bisection whenever they would leave
the current bracket.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .alpha import Alpha
from .errors import BracketError, DomainError
from .genfun import L_alpha, L_alpha_deriv

P_EQUATION = "P"
Q_EQUATION = "Q"
SADDLE_POINT = "SaddlePoint"
CLOSED_FORM = "ClosedForm"

MAX_DOUBLINGS = 60
MAX_ITERATIONS = 200
RTOL = 1e-12
SERIES_TOL = 1e-11


@dataclass(frozen=True)
class SaddleSolution:
    n: int
    equation: str
    t_star: float
    residual: float
    bracket: tuple[float, float]
    iterations: int


@dataclass(frozen=True)
class EstimateReport:
    n: int
    kind: str
    variant: str
    log_value: float
    value: str | None = None
    log_interval: tuple[float, float] | None = None
    saddle: SaddleSolution | None = None

    @classmethod
    def from_log(cls, n, kind, variant, log_value, **extra):
        return cls(n, kind, variant, log_value, value=decimal_exp(log_value), **extra)


def decimal_exp(log_value: float, digits: int = 12) -> str:
    """exp(log_value) as a decimal string, free of float overflow."""
    with mpmath.workdps(digits + 10):
        return mpmath.nstr(mpmath.exp(mpmath.mpf(log_value)), digits)


def _p_functions(a: Alpha, n: int):
    def g(t):
        return L_alpha_deriv(a, t, 1, SERIES_TOL).value + n

    def dg(t):
        return L_alpha_deriv(a, t, 2, SERIES_TOL).value

    return g, dg


def _q_functions(a: Alpha, n: int):
    def h(t):
        return (L_alpha_deriv(a, t, 1, SERIES_TOL).value
                - 2 * L_alpha_deriv(a, 2 * t, 1, SERIES_TOL).value + n)

    def dh(t):
        return (L_alpha_deriv(a, t, 2, SERIES_TOL).value
                - 4 * L_alpha_deriv(a, 2 * t, 2, SERIES_TOL).value)

    return h, dh


def solve_increasing(f, df, guess: float, rtol: float = RTOL):
    """Root of a strictly increasing f on (0, inf) near ``guess``.

    Returns (root, residual, bracket, iterations).
    """
    lo, hi = guess / 2, guess * 2
    f_lo, f_hi = f(lo), f(hi)
    doublings = 0
    while f_lo >= 0:
        hi, f_hi = lo, f_lo
        lo /= 2
        f_lo = f(lo)
        doublings += 1
        if doublings > MAX_DOUBLINGS:
            raise BracketError("no sign change below the initial guess")
    while f_hi <= 0:
        lo, f_lo = hi, f_hi
        hi *= 2
        f_hi = f(hi)
        doublings += 1
        if doublings > MAX_DOUBLINGS:
            raise BracketError("no sign change above the initial guess")

    t = min(max(guess, lo), hi)
    if not lo < t < hi:
        t = 0.5 * (lo + hi)
    ft = f(t)
    for it in range(1, MAX_ITERATIONS + 1):
        if ft < 0:
            lo = t
        elif ft > 0:
            hi = t
        else:
            break
        step = ft / df(t)
        if abs(step) <= rtol * t:
            break
        t_new = t - step
        if not lo < t_new < hi:
            t_new = 0.5 * (lo + hi)
        t, ft = t_new, f(t_new)
        if hi - lo <= rtol * t:
            break
    else:
        raise BracketError(f"no convergence within {MAX_ITERATIONS} iterations")

    # certify a tight strict bracket around the returned root
    w = 16 * rtol * t
    if f(t - w) < 0 < f(t + w):
        lo, hi = t - w, t + w
    return t, abs(ft), (lo, hi), it


def _check_n(n):
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")


def solve_p_saddle(a: Alpha, n: int) -> SaddleSolution:
    """Root y of L'(y) + n = 0."""
    _check_n(n)
    guess = math.pi / math.sqrt(6 * a.value * n)
    t, res, br, it = solve_increasing(*_p_functions(a, n), guess)
    return SaddleSolution(n, P_EQUATION, t, res, br, it)


def solve_q_saddle(a: Alpha, n: int) -> SaddleSolution:
    """Root x of L'(x) - 2 L'(2x) + n = 0."""
    _check_n(n)
    guess = math.pi / math.sqrt(12 * a.value * n)
    t, res, br, it = solve_increasing(*_q_functions(a, n), guess)
    return SaddleSolution(n, Q_EQUATION, t, res, br, it)


def estimate_p_saddle(a: Alpha, n: int) -> EstimateReport:
    sol = solve_p_saddle(a, n)
    y = sol.t_star
    L = L_alpha(a, y, SERIES_TOL).value
    L2 = L_alpha_deriv(a, y, 2, SERIES_TOL).value
    log_value = L + n * y - 0.5 * math.log(2 * math.pi * L2)
    return EstimateReport.from_log(n, "Unrestricted", SADDLE_POINT, log_value, saddle=sol)


def estimate_q_saddle(a: Alpha, n: int) -> EstimateReport:
    sol = solve_q_saddle(a, n)
    x = sol.t_star
    L = L_alpha(a, x, SERIES_TOL).value - L_alpha(a, 2 * x, SERIES_TOL).value
    L2 = (L_alpha_deriv(a, x, 2, SERIES_TOL).value
          - 4 * L_alpha_deriv(a, 2 * x, 2, SERIES_TOL).value)
    log_value = L + n * x - 0.5 * math.log(2 * math.pi * L2)
    return EstimateReport.from_log(n, "Distinct", SADDLE_POINT, log_value, saddle=sol)

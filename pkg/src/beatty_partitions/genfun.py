"""Log generating function L_alpha(t) and the pieces of its exact splitting

    L_alpha(t) = L_1(alpha t) + (t/2) D(alpha t) + R_alpha(t) + E_alpha(t).

All series here have terms dominated by exp(-t*b) with b running over a
strictly increasing integer sequence whose gaps are at least g (g = floor(alpha)
for Beatty parts, g = 1 for the plain integers).  Truncation indices are chosen
from the resulting geometric tail majorants: if B is the first omitted part,
the omitted parts are >= B + g*k, k = 0, 1, ..., which gives closed-form
bounds.  Each ``SeriesValue.tail_bound`` is such a bound, never an estimate.

Evaluation is in binary64 with exactly rounded summation (``math.fsum``);
terms are formed with ``expm1``/``log1p`` so no cancellation occurs for small t.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import chain

import numpy as np

from .alpha import Alpha, floor_multiple
from .beatty import iter_blocks
from .errors import DomainError, ToleranceError

MAX_TERMS = 10 ** 8
_QUAD_ABS_FLOOR = 1e-30
_QUAD_MAX_DEPTH = 40


@dataclass(frozen=True)
class SeriesValue:
    value: float
    tail_bound: float
    terms_used: int

    def __float__(self) -> float:
        return self.value


# ----------------------------------------------------------------------
# tail majorants; B = first omitted part, g = minimal gap between parts
# ----------------------------------------------------------------------

def _geo(t, g):
    r = math.exp(-t * g)
    return r, -math.expm1(-t * g)


def _tail_log(t, B, g):
    # -log(1-x) <= x/(1-x)
    r, one_r = _geo(t, g)
    return math.exp(-t * B) / (-math.expm1(-t * B) * one_r)


def _tail_d1(t, B, g):
    # b e^{-tb}/(1-e^{-tb}); b e^{-tb} decreasing once t b >= 1
    if t * B < 1:
        return math.inf
    r, one_r = _geo(t, g)
    s = B / one_r + g * r / one_r ** 2
    return math.exp(-t * B) / -math.expm1(-t * B) * s


def _tail_d2(t, B, g):
    # b^2 e^{-tb}/(1-e^{-tb})^2; b^2 e^{-tb} decreasing once t b >= 2
    if t * B < 2:
        return math.inf
    r, one_r = _geo(t, g)
    s = B * B / one_r + 2 * B * g * r / one_r ** 2 + g * g * r * (1 + r) / one_r ** 3
    return math.exp(-t * B) / math.expm1(-t * B) ** 2 * s


def _tail_R(t, B, g):
    # |t*saw(x)/(e^{tx}-1)| <= (t/2) e^{-tb}/(1-e^{-tB}) for x >= b >= B
    return 0.5 * t * _tail_log(t, B, g)


def _tail_E(t, B, g):
    # integral term <= (1/2)(t^2/4) csch^2(bt/2) = (t^2/2) e^{-bt}/(1-e^{-bt})^2
    r, one_r = _geo(t, g)
    return 0.5 * t * t * math.exp(-t * B) / (math.expm1(-t * B) ** 2 * one_r)


_TAILS = {"log": _tail_log, "d1": _tail_d1, "d2": _tail_d2, "R": _tail_R, "E": _tail_E}


def _needed_B(tail, t, g, tol):
    """Smallest (float) first-omitted part B with tail(t, B, g) < tol, up to a factor."""
    B = max(1.0, 2.0 / t)
    while tail(t, B, g) >= tol:
        B *= 2
        if B > MAX_TERMS * (g + 1) * 4:
            raise ToleranceError(f"tail bound cannot reach tol={tol} within {MAX_TERMS} terms")
    lo, hi = B / 2, B
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        if tail(t, mid, g) < tol:
            hi = mid
        else:
            lo = mid
    return hi


def _check_t(t):
    if not t > 0:
        raise DomainError(f"t must be > 0, got {t}")


def _beatty_cutoff(a: Alpha, t: float, tol: float, kind: str, L: int | None = None):
    """Return (M, tail_bound): sum l = 1..M, omitted tail bounded by tail_bound."""
    tail = _TAILS[kind]
    g = floor_multiple(a, 1)
    if L is None:
        B = _needed_B(tail, t, g, tol)
        M = max(1, math.ceil((B + 1) / a.value))
    else:
        M = L
    if M > MAX_TERMS:
        raise ToleranceError(f"{M} terms exceed the cap {MAX_TERMS}")
    B_actual = floor_multiple(a, M + 1)
    bound = tail(t, B_actual, g)
    if L is None:
        while bound >= tol:
            M = M + max(1, M // 8)
            if M > MAX_TERMS:
                raise ToleranceError(f"{M} terms exceed the cap {MAX_TERMS}")
            bound = tail(t, floor_multiple(a, M + 1), g)
    return M, bound


def _integer_cutoff(t: float, tol: float, kind: str):
    tail = _TAILS[kind]
    B = _needed_B(tail, t, 1, tol)
    M = max(1, math.ceil(B) - 1)
    if M > MAX_TERMS:
        raise ToleranceError(f"{M} terms exceed the cap {MAX_TERMS}")
    return M, tail(t, M + 1, 1)


def _fsum_chunks(chunks) -> float:
    return math.fsum(chain.from_iterable(chunks))


# ----------------------------------------------------------------------
# L_alpha and derivatives
# ----------------------------------------------------------------------

def _log_terms(tb):
    # -log(1 - e^{-x}); two branches keep full relative accuracy for small and large x
    return np.where(tb < math.log(2), -np.log(-np.expm1(-tb)), -np.log1p(-np.exp(-tb)))


def _d1_terms(b, t):
    return -b / np.expm1(t * b)


def _d2_terms(b, t):
    em = -np.expm1(-t * b)
    return b * b * np.exp(-t * b) / (em * em)


def L_alpha(a: Alpha, t: float, tol: float = 1e-12) -> SeriesValue:
    """L_alpha(t) = -sum_l log(1 - exp(-t floor(alpha l)))."""
    _check_t(t)
    M, bound = _beatty_cutoff(a, t, tol, "log")
    chunks = (_log_terms(t * b.astype(np.float64)) for _, b, _, _ in iter_blocks(a, M))
    return SeriesValue(_fsum_chunks(chunks), bound, M)


def L_alpha_deriv(a: Alpha, t: float, order: int = 1, tol: float = 1e-12) -> SeriesValue:
    """First or second t-derivative of L_alpha, differentiated term by term."""
    _check_t(t)
    if order == 1:
        M, bound = _beatty_cutoff(a, t, tol, "d1")
        chunks = (_d1_terms(b.astype(np.float64), t) for _, b, _, _ in iter_blocks(a, M))
    elif order == 2:
        M, bound = _beatty_cutoff(a, t, tol, "d2")
        chunks = (_d2_terms(b.astype(np.float64), t) for _, b, _, _ in iter_blocks(a, M))
    else:
        raise DomainError(f"order must be 1 or 2, got {order}")
    return SeriesValue(_fsum_chunks(chunks), bound, M)


def _integer_series(t, tol, kind, term):
    _check_t(t)
    M, bound = _integer_cutoff(t, tol, kind)
    chunks = []
    for lo in range(1, M + 1, 1 << 16):
        n = np.arange(lo, min(lo + (1 << 16), M + 1), dtype=np.float64)
        chunks.append(term(n))
    return SeriesValue(_fsum_chunks(chunks), bound, M)


def L_one(t: float, tol: float = 1e-12) -> SeriesValue:
    """L_1(t) = -sum_{n>=1} log(1 - e^{-nt})."""
    return _integer_series(t, tol, "log", lambda n: _log_terms(t * n))


def D_series(t: float, tol: float = 1e-12) -> SeriesValue:
    """D(t) = sum_{n>=1} 1/(e^{nt} - 1) = sum tau(n) e^{-nt}."""
    # 1/(e^x - 1) <= e^{-x}/(1 - e^{-x}), the same majorant as -log(1 - e^{-x})
    return _integer_series(t, tol, "log", lambda n: 1.0 / np.expm1(t * n))


# ----------------------------------------------------------------------
# R_alpha, kernel, E_alpha
# ----------------------------------------------------------------------

def R_alpha(a: Alpha, t: float, tol: float = 1e-12, L: int | None = None) -> SeriesValue:
    """R_alpha(t) = sum_l t * ({alpha l} - 1/2) / (e^{t alpha l} - 1)."""
    _check_t(t)
    M, bound = _beatty_cutoff(a, t, tol, "R", L)
    chunks = []
    for _, b, f, _ in iter_blocks(a, M):
        x = b.astype(np.float64) + f
        chunks.append(t * (f - 0.5) / np.expm1(t * x))
    return SeriesValue(_fsum_chunks(chunks), bound, M)


def kernel_K(u):
    """K(u) = u^2 / sinh(u)^2 with K(0) = 1."""
    u = np.asarray(u, dtype=np.float64)
    out = np.empty_like(u)
    small = u < 1e-4
    big = u > 20.0
    mid = ~(small | big)
    us = u[small]
    u2 = us * us
    out[small] = 1.0 - u2 / 3.0 + u2 * u2 / 15.0
    um = u[mid]
    out[mid] = (um / np.sinh(um)) ** 2
    ub = u[big]
    e2 = np.exp(-2.0 * ub)
    out[big] = 4.0 * ub * ub * e2 / (1.0 - e2) ** 2
    return out[()] if out.ndim == 0 else out


_GL_X, _GL_W = np.polynomial.legendre.leggauss(10)


def _gl(fun, lo, hi, idx):
    half = 0.5 * (hi - lo)
    x = (0.5 * (hi + lo))[:, None] + half[:, None] * _GL_X[None, :]
    return half * (fun(x, idx) @ _GL_W)


def adaptive_gauss(fun, lo, hi, rtol, atol=_QUAD_ABS_FLOOR):
    """Integrate ``fun(x, idx)`` over many panels [lo_i, hi_i] at once.

    ``fun`` receives node arrays of shape (m, 10) and the panel indices (m,).
    A panel is accepted when the 10-point Gauss-Legendre value agrees with the
    sum over its two halves to max(rtol*|value|, atol); otherwise it is bisected.
    """
    lo = np.asarray(lo, dtype=np.float64)
    hi = np.asarray(hi, dtype=np.float64)
    total = np.zeros(lo.shape)
    idx = np.arange(lo.size)
    whole = _gl(fun, lo, hi, idx)
    for _ in range(_QUAD_MAX_DEPTH):
        mid = 0.5 * (lo + hi)
        left = _gl(fun, lo, mid, idx)
        right = _gl(fun, mid, hi, idx)
        both = left + right
        done = np.abs(both - whole) <= np.maximum(rtol * np.abs(both), atol)
        np.add.at(total, idx[done], both[done])
        keep = ~done
        if not keep.any():
            return total
        idx = np.concatenate([idx[keep], idx[keep]])
        lo, hi = np.concatenate([lo[keep], mid[keep]]), np.concatenate([mid[keep], hi[keep]])
        whole = np.concatenate([left[keep], right[keep]])
    raise ToleranceError("adaptive quadrature did not converge")


def E_alpha_terms(b: np.ndarray, f: np.ndarray, alpha: float, t: float, rtol: float) -> np.ndarray:
    """Per-l values of int_0^{f} (f - v) K((alpha l - v) t/2) / (alpha l - v)^2 dv."""
    x = b.astype(np.float64) + f

    def integrand(v, idx):
        w = x[idx][:, None] - v
        return (f[idx][:, None] - v) * kernel_K(0.5 * t * w) / (w * w)

    return adaptive_gauss(integrand, np.zeros_like(f), f, rtol)


def E_alpha(a: Alpha, t: float, tol: float = 1e-12, L: int | None = None) -> SeriesValue:
    """E_alpha(t); at t = 0 the closed form -sum (x_l + log(1 - x_l)), x_l = {alpha l}/(alpha l)."""
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    if t == 0:
        L = 10 ** 5 if L is None else L
        chunks = []
        for _, b, f, _ in iter_blocks(a, L):
            y = f / (b.astype(np.float64) + f)
            chunks.append(-(y + np.log1p(-y)))
        # -x - log(1-x) <= x^2/(2(1-x)) with x < 1/(alpha l)
        al = a.value
        bound = 1.0 / (2 * al * al * L * (1 - 1 / (al * (L + 1))))
        return SeriesValue(_fsum_chunks(chunks), bound, L)
    M, bound = _beatty_cutoff(a, t, tol, "E", L)
    alpha = a.value
    chunks = (E_alpha_terms(b, f, alpha, t, tol) for _, b, f, _ in iter_blocks(a, M))
    return SeriesValue(_fsum_chunks(chunks), bound, M)


@dataclass(frozen=True)
class Decomposition:
    t: float
    L_alpha: SeriesValue
    L_one: SeriesValue
    half_tD: SeriesValue
    R_alpha: SeriesValue
    E_alpha: SeriesValue
    residual: float


def check_decomposition(a: Alpha, t: float, tol: float = 1e-10) -> Decomposition:
    """Evaluate every piece of the splitting and return the reassembly residual."""
    _check_t(t)
    at = a.value * t
    lhs = L_alpha(a, t, tol)
    l1 = L_one(at, tol)
    d = D_series(at, tol / t)
    half_tD = SeriesValue(0.5 * t * d.value, 0.5 * t * d.tail_bound, d.terms_used)
    r = R_alpha(a, t, tol)
    e = E_alpha(a, t, tol)
    residual = abs(lhs.value - math.fsum([l1.value, half_tD.value, r.value, e.value]))
    return Decomposition(t, lhs, l1, half_tD, r, e, residual)

"""Representations of an irrational slope alpha > 1.

Two kinds are supported:

* ``QuadraticSurd``: alpha = (p + q*sqrt(d)) / r with integers, handled exactly
  with integer square roots.
* ``CertifiedInterval``: alpha is known through dyadic enclosures
  ``lo <= alpha * 2**bits <= hi``.  Named constants (``e``, ``pi``) come from
  MPFR with directed rounding, so the enclosure can be refined to any width;
  ``decimal:`` inputs carry a fixed half-width of one unit in the last digit.

Every floor returned by this module is certified; when the enclosure is too
coarse to decide, :class:`CertificationError` is raised instead of guessing.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property

import gmpy2
import mpmath
import numpy as np

from .errors import CertificationError, DomainError, ParseError, RationalityError

QUADRATIC_SURD = "QuadraticSurd"
CERTIFIED_INTERVAL = "CertifiedInterval"

DEFAULT_MAX_BITS = 4096
_CF_PREFIX_LEN = 12


@dataclass(frozen=True)
class Alpha:
    spec: str
    kind: str
    surd: tuple[int, int, int, int] | None = None
    # ("const", name) or ("decimal", lo: Fraction, hi: Fraction)
    source: tuple | None = None
    quotient_bound: int | None = None
    bound_supplied: bool = False
    max_bits: int = DEFAULT_MAX_BITS

    @cached_property
    def value(self) -> float:
        lo, hi = enclosure(self, 64)
        return float(Fraction(lo + hi, 2 ** 65))

    def mpf(self, prec: int = 128) -> mpmath.mpf:
        lo, hi = enclosure(self, prec + 8)
        with mpmath.workprec(prec):
            return mpmath.mpf((lo + hi, -(prec + 9)))

    @cached_property
    def cf_prefix(self) -> list[int]:
        k = _CF_PREFIX_LEN
        while k >= 1:
            try:
                return continued_fraction(self, k)
            except CertificationError:
                k //= 2
        return [floor_multiple(self, 1)]

    @property
    def conditional(self) -> bool:
        """True when the quotient bound was supplied by the user, not derived."""
        return self.bound_supplied

    def __str__(self) -> str:
        return self.spec


# ----------------------------------------------------------------------
# construction
# ----------------------------------------------------------------------

def _square_free(d: int) -> tuple[int, int]:
    """Return (s, d') with d = s*s*d' and d' square free."""
    s, rest = 1, d
    f = 2
    while f * f <= rest:
        while rest % (f * f) == 0:
            rest //= f * f
            s *= f
        f += 1
    return s, rest


def _surd_exceeds_one(p: int, q: int, r: int, d: int) -> bool:
    # r > 0 here; tests p + q*sqrt(d) > r exactly
    gap = r - p
    if q > 0:
        return gap < 0 or q * q * d > gap * gap
    return -gap > 0 and gap * gap > q * q * d


def make_surd(p: int, q: int, r: int, d: int, spec: str | None = None) -> Alpha:
    if r == 0:
        raise DomainError("denominator r must be nonzero")
    if d <= 0:
        raise DomainError(f"d must be positive, got {d}")
    s, d = _square_free(d)
    q *= s
    if q == 0 or d == 1:
        raise RationalityError(f"surd:{p},{q},{r},{d} is rational")
    if r < 0:
        p, q, r = -p, -q, -r
    g = math.gcd(math.gcd(p, q), r)
    p, q, r = p // g, q // g, r // g
    if not _surd_exceeds_one(p, q, r, d):
        raise DomainError(f"alpha = ({p} + {q}*sqrt({d}))/{r} is not > 1")
    spec = spec or f"surd:{p},{q},{r},{d}"
    a = Alpha(spec=spec, kind=QUADRATIC_SURD, surd=(p, q, r, d))
    return replace(a, quotient_bound=_surd_quotient_bound(a))


def _make_const(name: str) -> Alpha:
    return Alpha(spec=name, kind=CERTIFIED_INTERVAL, source=("const", name))


def _make_decimal(text: str, spec: str) -> Alpha:
    if not re.fullmatch(r"\d+(\.\d+)?", text):
        raise ParseError(f"malformed decimal digits: {text!r}")
    x = Fraction(text)
    places = len(text.split(".")[1]) if "." in text else 0
    unit = Fraction(1, 10 ** places)
    lo, hi = x - unit, x + unit
    if lo <= 1:
        raise DomainError(f"decimal {text} is not certifiably > 1")
    return Alpha(spec=spec, kind=CERTIFIED_INTERVAL, source=("decimal", lo, hi))


def parse_alpha(spec: str) -> Alpha:
    """Parse ``sqrt:<d>``, ``surd:<p>,<q>,<r>,<d>``, ``decimal:<digits>``, ``e`` or ``pi``."""
    text = spec.strip()
    if text in ("e", "pi"):
        return _make_const(text)
    head, sep, body = text.partition(":")
    if not sep:
        raise ParseError(f"cannot parse alpha spec {spec!r}")
    try:
        if head == "sqrt":
            return make_surd(0, 1, 1, int(body), spec=text)
        if head == "surd":
            parts = [int(x) for x in body.split(",")]
            if len(parts) != 4:
                raise ValueError
            return make_surd(*parts, spec=text)
    except DomainError:
        raise
    except ValueError:
        raise ParseError(f"cannot parse alpha spec {spec!r}") from None
    if head == "decimal":
        return _make_decimal(body, text)
    raise ParseError(f"unknown alpha form {head!r} in {spec!r}")


def with_quotient_bound(a: Alpha, bound: int) -> Alpha:
    """Attach a user-asserted partial-quotient bound (downstream output is conditional on it)."""
    if bound < 1:
        raise DomainError("quotient bound must be >= 1")
    if a.kind == QUADRATIC_SURD:
        if bound < a.quotient_bound:
            raise DomainError(
                f"supplied bound {bound} is below the exact bound {a.quotient_bound}")
        return a
    return replace(a, quotient_bound=bound, bound_supplied=True)


# ----------------------------------------------------------------------
# enclosures
# ----------------------------------------------------------------------

def _const_scaled(name: str, bits: int, up: bool) -> int:
    # scaling must happen inside the context, or gmpy2 rounds back to 53 bits
    rnd = gmpy2.RoundUp if up else gmpy2.RoundDown
    with gmpy2.context(precision=bits + 16, round=rnd):
        if name == "pi":
            x = gmpy2.const_pi()
        elif name == "e":
            x = gmpy2.exp(1)
        elif name == "euler":
            x = gmpy2.const_euler()
        else:
            raise KeyError(name)
        y = gmpy2.mul_2exp(x, bits)
        return int(gmpy2.ceil(y)) if up else int(gmpy2.floor(y))


def constant_enclosure(name: str, bits: int) -> tuple[int, int]:
    """Integers lo, hi with lo <= c * 2**bits <= hi for c in {pi, e, euler}."""
    return _const_scaled(name, bits, up=False), _const_scaled(name, bits, up=True)


def enclosure(a: Alpha, bits: int) -> tuple[int, int]:
    """Return integers (lo, hi) with lo <= alpha * 2**bits <= hi."""
    if a.kind == QUADRATIC_SURD:
        p, q, r, d = a.surd
        s = math.isqrt(q * q * d << (2 * bits))
        base = p << bits
        if q > 0:
            num_lo, num_hi = base + s, base + s + 1
        else:
            num_lo, num_hi = base - s - 1, base - s
        return num_lo // r, -(-num_hi // r)
    tag = a.source[0]
    if tag == "const":
        return constant_enclosure(a.source[1], bits)
    lo, hi = a.source[1], a.source[2]
    scale = 1 << bits
    return math.floor(lo * scale), math.ceil(hi * scale)


# ----------------------------------------------------------------------
# floors and fractional parts
# ----------------------------------------------------------------------

def floor_multiple(a: Alpha, ell: int) -> int:
    """Exact floor(alpha * ell)."""
    if ell < 1:
        raise DomainError(f"ell must be >= 1, got {ell}")
    if a.kind == QUADRATIC_SURD:
        p, q, r, d = a.surd
        s = math.isqrt(q * q * ell * ell * d)
        # q*ell*sqrt(d) is irrational, so its floor is s (q > 0) or -s-1 (q < 0)
        fl = s if q > 0 else -s - 1
        return (p * ell + fl) // r
    bits = 64 + ell.bit_length()
    while True:
        lo, hi = enclosure(a, bits)
        f_lo, f_hi = (lo * ell) >> bits, (hi * ell) >> bits
        if f_lo == f_hi:
            return f_lo
        if bits >= a.max_bits or a.source[0] == "decimal":
            raise CertificationError(
                f"cannot certify floor({a.spec} * {ell}) within {bits} bits")
        bits = min(2 * bits, a.max_bits)


def frac_multiple(a: Alpha, ell: int, precision: int = 53) -> mpmath.mpf:
    """Fractional part {alpha * ell} with absolute error below 2**-precision."""
    b = floor_multiple(a, ell)
    bits = precision + ell.bit_length() + 8
    while True:
        lo, hi = enclosure(a, bits)
        if (hi - lo) * ell < 1 << (bits - precision):
            break
        if bits >= a.max_bits or a.source[0] == "decimal":
            raise CertificationError(
                f"cannot reach {precision} bits for {{{a.spec} * {ell}}}")
        bits = min(2 * bits, a.max_bits)
    num = (lo + hi) * ell - (b << (bits + 1))
    with mpmath.workprec(precision + 8):
        return mpmath.mpf((num, -(bits + 1)))


_LIMB = 26
_LIMB_MASK = (1 << _LIMB) - 1
_MAX_BLOCK_ELL = 1 << 31


def beatty_block(a: Alpha, start: int, stop: int) -> tuple[np.ndarray, np.ndarray, float]:
    """Floors and fractional parts of alpha*ell for start <= ell < stop.

    Returns ``(floors, fracs, err)`` where ``floors`` are exact (int64),
    ``fracs`` are float64 and ``|fracs - {alpha*ell}| <= err`` for every entry.
    The fractional part of alpha is split into three 26-bit limbs so each
    product limb*ell stays exact in int64; only the last addition rounds.
    Entries too close to an integer to be certified this way are recomputed
    one by one through :func:`floor_multiple`.
    """
    if start < 1 or stop <= start:
        raise DomainError(f"bad block [{start}, {stop})")
    if stop > _MAX_BLOCK_ELL:
        raise DomainError(f"block end {stop} exceeds {_MAX_BLOCK_ELL}")
    a0 = floor_multiple(a, 1)
    lo, hi = enclosure(a, 96)
    mid = (lo + hi) >> 1
    rho = mid - (a0 << 96)
    M = rho >> 18  # 78 fractional bits
    delta = ((hi - lo) / 2 + 2) * 2.0 ** -96 + 2.0 ** -78
    m1, m2, m3 = M >> (2 * _LIMB), (M >> _LIMB) & _LIMB_MASK, M & _LIMB_MASK

    ell = np.arange(start, stop, dtype=np.int64)
    p1 = m1 * ell
    p2 = m2 * ell
    p3 = m3 * ell
    u1 = (p1 & _LIMB_MASK).astype(np.float64) * 2.0 ** -26
    u2 = (p2 & ((1 << 52) - 1)).astype(np.float64) * 2.0 ** -52
    u3 = p3.astype(np.float64) * 2.0 ** -78
    s = u1 + u2
    c1 = np.floor(s)
    s -= c1
    s += u3
    c2 = np.floor(s)
    s -= c2
    floors = a0 * ell + (p1 >> 26) + (p2 >> 52) + c1.astype(np.int64) + c2.astype(np.int64)

    err = delta * (stop - 1) + 2.0 ** -52
    shaky = np.flatnonzero((s <= err) | (s >= 1.0 - err))
    for i in shaky:
        e_ = int(ell[i])
        floors[i] = floor_multiple(a, e_)
        s[i] = float(frac_multiple(a, e_, 60))
    return floors, s, err


# ----------------------------------------------------------------------
# continued fractions
# ----------------------------------------------------------------------

def _surd_state(a: Alpha) -> tuple[int, int, int]:
    """(P, Q, D) with alpha = (P + sqrt(D))/Q and Q dividing D - P^2."""
    p, q, r, d = a.surd
    D = q * q * d
    P, Q = (p, r) if q > 0 else (-p, -r)
    if (D - P * P) % Q:
        P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
    return P, Q, D


def _surd_quotients(a: Alpha):
    """Yield (quotient, state) pairs of the exact periodic expansion."""
    P, Q, D = _surd_state(a)
    s = math.isqrt(D)
    while True:
        if Q > 0:
            q_ = (P + s) // Q
        else:
            q_ = -((P + s) // -Q) - 1
        yield q_, (P, Q)
        P = q_ * Q - P
        Q = (D - P * P) // Q


def _surd_quotient_bound(a: Alpha) -> int:
    seen = set()
    best = 0
    for i, (q_, state) in enumerate(_surd_quotients(a)):
        if i == 0:
            continue
        if state in seen:
            return best
        seen.add(state)
        best = max(best, q_)


def _rational_cf(x: Fraction, k: int) -> list[int]:
    out = []
    num, den = x.numerator, x.denominator
    while den and len(out) < k:
        q_, rem = divmod(num, den)
        out.append(q_)
        num, den = den, rem
    return out


def continued_fraction(a: Alpha, k: int) -> list[int]:
    """Partial quotients [a0; a1, ..., ak]."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if a.kind == QUADRATIC_SURD:
        out = []
        for q_, _ in _surd_quotients(a):
            out.append(q_)
            if len(out) == k + 1:
                return out
    bits = 64 + 8 * k
    while True:
        lo, hi = enclosure(a, bits)
        # one extra quotient so a terminating endpoint expansion is never trusted
        cf_lo = _rational_cf(Fraction(lo, 1 << bits), k + 2)
        cf_hi = _rational_cf(Fraction(hi, 1 << bits), k + 2)
        if len(cf_lo) == len(cf_hi) == k + 2 and cf_lo[:k + 1] == cf_hi[:k + 1]:
            return cf_lo[:k + 1]
        if bits >= a.max_bits or a.source[0] == "decimal":
            raise CertificationError(
                f"cannot certify {k} partial quotients of {a.spec} within {bits} bits")
        bits = min(2 * bits, a.max_bits)


def convergents(quotients: list[int]) -> list[tuple[int, int]]:
    """Convergents p_k/q_k of a partial-quotient list."""
    out = []
    p_prev, p = 1, quotients[0]
    q_prev, q = 0, 1
    out.append((p, q))
    for x in quotients[1:]:
        p_prev, p = p, x * p + p_prev
        q_prev, q = q, x * q + q_prev
        out.append((p, q))
    return out

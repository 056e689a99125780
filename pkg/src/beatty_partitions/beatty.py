"""Beatty sequences and the sawtooth sums attached to them.

The discrepancy sum is evaluated through the exact identity

    S(X) = sum_{l<=X} ({alpha l} - 1/2) = alpha X (X+1)/2 - sum_{l<=X} floor(alpha l) - X/2,

so only alpha itself needs high precision; the floor sum is an exact integer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import chain

import mpmath
import numpy as np

from .alpha import Alpha, beatty_block
from .errors import DomainError

CHUNK = 1 << 16


@dataclass(frozen=True)
class DiscrepancyRecord:
    x: float
    s_value: mpmath.mpf
    ostrowski_bound: float | None = None


def sawtooth(x):
    """{x} - 1/2 for floats, ints, Fractions or mpf values."""
    if isinstance(x, mpmath.mpf):
        return x - mpmath.floor(x) - mpmath.mpf(0.5)
    return x - math.floor(x) - 0.5


def iter_blocks(a: Alpha, L: int, start: int = 1, chunk: int = CHUNK):
    """Yield ``(ell, floors, fracs, err)`` for start <= ell <= L in fixed-size chunks."""
    lo = start
    while lo <= L:
        hi = min(lo + chunk, L + 1)
        floors, fracs, err = beatty_block(a, lo, hi)
        yield np.arange(lo, hi, dtype=np.int64), floors, fracs, err
        lo = hi


def beatty_prefix(a: Alpha, L: int) -> list[int]:
    """[floor(alpha*1), ..., floor(alpha*L)]."""
    if L < 1:
        raise DomainError(f"L must be >= 1, got {L}")
    out: list[int] = []
    for _, floors, _, _ in iter_blocks(a, L):
        out.extend(floors.tolist())
    return out


def ostrowski_bound(A: int, x: float) -> float:
    """(3/2) A log x, valid for x > 10 when every partial quotient is <= A."""
    return 1.5 * A * math.log(x)


def discrepancy_sums(a: Alpha, xs, prec: int = 128) -> list[DiscrepancyRecord]:
    """S_alpha(x) for several x at once, in one pass over the sequence."""
    xs = list(xs)
    if not xs:
        return []
    if min(xs) < 1:
        raise DomainError("x must be >= 1")
    targets = sorted({int(math.floor(x)) for x in xs})
    X_max = targets[-1]
    floor_sums: dict[int, int] = {}
    running = 0
    ti = 0
    for ell, floors, _, _ in iter_blocks(a, X_max):
        cums = np.cumsum(floors)
        last = int(ell[-1])
        while ti < len(targets) and targets[ti] <= last:
            X = targets[ti]
            floor_sums[X] = running + int(cums[X - int(ell[0])])
            ti += 1
        running += int(cums[-1])

    out = []
    with mpmath.workprec(prec + 2 * X_max.bit_length()):
        alpha = a.mpf(prec + 2 * X_max.bit_length())
        for x in xs:
            X = int(math.floor(x))
            s = alpha * X * (X + 1) / 2 - floor_sums[X] - mpmath.mpf(X) / 2
            bound = None
            if a.quotient_bound is not None and x > 10:
                bound = ostrowski_bound(a.quotient_bound, x)
            out.append(DiscrepancyRecord(x=x, s_value=+s, ostrowski_bound=bound))
    return out


def discrepancy_sum(a: Alpha, x: float) -> DiscrepancyRecord:
    """S_alpha(x) = sum over 1 <= l <= x of sawtooth(alpha*l)."""
    return discrepancy_sums(a, [x])[0]


def j_partial_sums(a: Alpha, s: float, Ls) -> list[float]:
    """Partial sums of sum_l sawtooth(alpha l) / l**s at each cutoff in ``Ls``."""
    if s <= 0:
        raise DomainError(f"s must be > 0, got {s}")
    Ls = sorted(set(int(L) for L in Ls))
    if not Ls or Ls[0] < 1:
        raise DomainError("cutoffs must be >= 1")
    out = []
    parts: list[np.ndarray] = []
    prev = 0
    for L in Ls:
        if L > prev:
            for ell, _, fracs, _ in iter_blocks(a, L, start=prev + 1):
                parts.append((fracs - 0.5) / ell.astype(np.float64) ** s)
        prev = L
        out.append(math.fsum(chain.from_iterable(parts)))
    return out


def j_partial(a: Alpha, s: float, L: int) -> float:
    """sum_{l=1}^{L} sawtooth(alpha l) / l**s, summed with exact rounding (math.fsum)."""
    return j_partial_sums(a, s, [L])[0]

"""Inverse of the normalized capacity: the Es/N0 at which a target rate is reached."""

from __future__ import annotations

from dataclasses import dataclass

from .capacity import DEFAULT_QUADRATURE, NoiseModel, normalized_capacity
from .errors import DomainError

START_BRACKET = (-30.0, 40.0)
SEARCH_LIMIT = 60.0
BRACKET_DB = 0.01
EDGE_GUARD = 1e-3
MAX_ITER = 100


@dataclass(frozen=True)
class InversionResult:
    es_n0_db: float
    achieved_capacity: float
    iterations: int
    bracket_width_db: float


def required_esn0(c, s, target, q=DEFAULT_QUADRATURE):
    """Find the Es/N0 [dB] where the normalized capacity of (c, s) equals ``target``.

    The bracket starts at [-30, 40] dB and widens by doubling steps up to
    +-60 dB. Bisection then runs until the bracket is below 0.01 dB and the
    normalized capacity at the midpoint is within ``q.tolerance`` of target.
    ``achieved_capacity`` is normalized, like ``target``.

    Raises:
        DomainError: target within 1e-3 of 0 or 1, or not reached in +-60 dB.
    """
    target = float(target)
    if not EDGE_GUARD <= target <= 1.0 - EDGE_GUARD:
        raise DomainError(f"target must lie in [{EDGE_GUARD:g}, {1 - EDGE_GUARD:g}], got {target:g}")

    def f(db):
        return normalized_capacity(c, s, NoiseModel(db), q)

    lo, hi = START_BRACKET
    f_lo, f_hi = f(lo), f(hi)
    iterations = 2
    step = 10.0
    while f_lo > target:
        if lo <= -SEARCH_LIMIT:
            raise DomainError(f"target {target:g} already exceeded at {lo:g} dB")
        lo = max(lo - step, -SEARCH_LIMIT)
        step *= 2
        f_lo = f(lo)
        iterations += 1
    step = 10.0
    while f_hi < target:
        if hi >= SEARCH_LIMIT:
            raise DomainError(f"target {target:g} not reached by {hi:g} dB")
        hi = min(hi + step, SEARCH_LIMIT)
        step *= 2
        f_hi = f(hi)
        iterations += 1

    mid = 0.5 * (lo + hi)
    f_mid = f(mid)
    iterations += 1
    for _ in range(MAX_ITER):
        if hi - lo < BRACKET_DB and abs(f_mid - target) <= q.tolerance:
            break
        if f_mid < target:
            lo = mid
        else:
            hi = mid
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        iterations += 1
    return InversionResult(mid, f_mid, iterations, hi - lo)

"""Orbits of t -> 1 + q t above the fixed point 1/(1 - q).

The intervals f^k((1 + q x0, x0]) tile (1/(1 - q), inf), so every value in
that range has exactly one representative in the fundamental domain.
"""

import logging
import math
from typing import List, Optional, Tuple

from qcuntz import setting
from qcuntz.exceptions import OutOfRangeError
from qcuntz.schemas.report import NormalizedParam

logger = logging.getLogger(__name__)

MAX_STEPS = 100_000


def fixed_point(q: float) -> float:
    return 1.0 / (1.0 - q)


def default_x0(q: float) -> float:
    return 2.0 / (1.0 - q)


def fundamental_domain(q: float, x0: Optional[float] = None) -> Tuple[float, float]:
    _check_q(q)
    x0 = default_x0(q) if x0 is None else x0
    if x0 <= fixed_point(q):
        raise OutOfRangeError(f"x0 must exceed 1/(1-q) = {fixed_point(q):.12g}, got {x0}")
    return 1.0 + q * x0, x0


def orbit_value(x: float, q: float, k: int) -> float:
    """f^k(x) for integer k, negative k meaning inverse iterations."""
    c = fixed_point(q)
    return c + q**k * (x - c)


def normalize_x(
    y: float,
    q: float,
    x0: Optional[float] = None,
    guard: Optional[float] = None,
) -> NormalizedParam:
    lo, hi = fundamental_domain(q, x0)
    if y <= fixed_point(q):
        raise OutOfRangeError(
            f"y = {y} lies in the bounded regime (<= 1/(1-q) = {fixed_point(q):.12g})"
        )
    guard = (setting.BOUNDARY_GUARD if guard is None else guard) * max(1.0, abs(hi))

    x, shift = float(y), 0
    for _ in range(MAX_STEPS):
        if abs(x - hi) <= guard:
            x = hi
            break
        if x > hi:
            x = 1.0 + q * x
            shift -= 1
        elif x <= lo + q * guard:
            x = (x - 1.0) / q
            shift += 1
        else:
            break
    else:
        raise OutOfRangeError(f"y = {y} too close to 1/(1-q) to normalize")

    logger.debug("normalize_x(%r) -> %r, shift %d", y, x, shift)
    return NormalizedParam(x=x, shift=shift, input=y, q=q, x0=hi)


def delta_set(x: float, q: float, window: Tuple[float, float]) -> List[float]:
    """Values 1/(1-q) + q^m (x - 1/(1-q)), m in Z, that fall in ``window``.

    When the window reaches down to the accumulation point the list stops
    once the distance to 1/(1-q) drops below ``1e-12 * (1 + 1/(1-q))``.
    """
    _check_q(q)
    lo, hi = window
    c = fixed_point(q)
    d = x - c
    if d <= 0:
        raise OutOfRangeError(f"x must exceed 1/(1-q) = {c:.12g}, got {x}")
    if hi <= c or lo > hi:
        return []

    floor = 1e-12 * (1.0 + c)
    # first exponent whose value may lie below hi
    m = math.floor(math.log((hi - c) / d) / math.log(q)) - 1 if math.isfinite(hi) else None
    if m is None:
        raise OutOfRangeError("delta_set needs a bounded window")

    values = []
    for _ in range(MAX_STEPS):
        value = c + q**m * d
        slack = 1e-12 * max(1.0, abs(value))
        if value < lo - slack or q**m * d < floor:
            break
        if value <= hi + slack:
            values.append(value)
        m += 1
    return sorted(values)


def same_orbit(a: float, b: float, q: float, tol: float, max_steps: int = 64) -> bool:
    """Whether some iterate of the larger value under t -> 1 + q t reaches the smaller."""
    hi, lo = max(a, b), min(a, b)
    value = hi
    for _ in range(max_steps + 1):
        if abs(value - lo) <= tol * (1.0 + abs(lo)):
            return True
        if value < lo:
            return False
        value = 1.0 + q * value
    return False


def _check_q(q: float) -> None:
    if not 0.0 < q < 1.0:
        raise OutOfRangeError(f"q must lie in (0, 1) for orbit normalization, got {q}")

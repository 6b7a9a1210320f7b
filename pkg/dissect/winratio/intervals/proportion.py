from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from dissect.winratio.core import Alpha, as_alpha


class ProportionMethod(str, Enum):
    WILSON = "wilson"
    AGRESTI_COULL = "ac"
    WALD = "wald"


@dataclass(frozen=True)
class SingleProportionInterval:
    lower: float
    upper: float
    method: ProportionMethod


def _check(p: float, n: int) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Proportion must be in [0, 1], got {p!r}")
    if n < 1:
        raise ValueError(f"Sample size must be at least 1, got {n!r}")


def _clip(value: float) -> float:
    return min(1.0, max(0.0, value))


def _adjusted(p: float, n: int, z: float) -> tuple[float, float]:
    n_adj = n + z * z
    return (n * p + 0.5 * z * z) / n_adj, n_adj


def wilson_interval(p: float, n: int, alpha: Alpha | float = 0.05) -> SingleProportionInterval:
    """Return the Wilson score interval for a proportion ``p`` observed in ``n`` trials."""
    _check(p, n)
    z = as_alpha(alpha).z_half()
    center, n_adj = _adjusted(p, n, z)
    half = 0.5 / n_adj * z * math.sqrt(z * z + 4 * n * p * (1 - p))
    return SingleProportionInterval(_clip(center - half), _clip(center + half), ProportionMethod.WILSON)


def agresti_coull_interval(p: float, n: int, alpha: Alpha | float = 0.05) -> SingleProportionInterval:
    """Return the Agresti-Coull (adjusted Wald) interval for a proportion ``p`` observed in ``n`` trials."""
    _check(p, n)
    z = as_alpha(alpha).z_half()
    center, n_adj = _adjusted(p, n, z)
    half = z * math.sqrt(center * (1 - center) / n_adj)
    return SingleProportionInterval(_clip(center - half), _clip(center + half), ProportionMethod.AGRESTI_COULL)


def wald_interval(p: float, n: int, alpha: Alpha | float = 0.05, clip: bool = True) -> SingleProportionInterval:
    """Return the Wald interval for a proportion.

    With ``clip`` disabled the limits may leave ``[0, 1]``. MOVER constructions use the unclipped limits, in which
    case they reduce to the corresponding Wald interval of the difference.
    """
    _check(p, n)
    z = as_alpha(alpha).z_half()
    half = z * math.sqrt(p * (1 - p) / n)
    lower, upper = p - half, p + half
    if clip:
        lower, upper = _clip(lower), _clip(upper)
    return SingleProportionInterval(lower, upper, ProportionMethod.WALD)


def proportion_interval(
    p: float, n: int, alpha: Alpha | float, method: ProportionMethod
) -> SingleProportionInterval:
    if method == ProportionMethod.WILSON:
        return wilson_interval(p, n, alpha)
    if method == ProportionMethod.AGRESTI_COULL:
        return agresti_coull_interval(p, n, alpha)
    if method == ProportionMethod.WALD:
        return wald_interval(p, n, alpha, clip=False)
    raise ValueError(f"Unknown proportion interval method: {method!r}")


def estimate_correlation(p_w: float, p_l: float) -> float:
    """Return the multinomial correlation estimate between the win and loss proportions.

    The estimate is 0 whenever either proportion is 0 or 1.
    """
    denominator = p_w * (1 - p_w) * p_l * (1 - p_l)
    if denominator <= 0:
        return 0.0
    return -p_w * p_l / math.sqrt(denominator)

from __future__ import annotations

import math

from dissect.winratio.core import Alpha, Bounded, ConfidenceSet, PairCounts, as_alpha, estimate_net_benefit
from dissect.winratio.intervals.proportion import (
    ProportionMethod,
    estimate_correlation,
    proportion_interval,
)


def net_benefit_standard_error(counts: PairCounts) -> float:
    props = counts.proportions()
    variance = (props.p_w + props.p_l - (props.p_w - props.p_l) ** 2) / counts.total()
    return math.sqrt(max(variance, 0.0))


def nb_wald(counts: PairCounts, alpha: Alpha | float = 0.05) -> ConfidenceSet:
    """Return the Wald interval of the net benefit.

    Bounds outside ``[-1, 1]`` are kept as they are and flagged with ``boundary_violation``.
    """
    estimate = estimate_net_benefit(counts)
    half = as_alpha(alpha).z_half() * net_benefit_standard_error(counts)
    lower, upper = estimate - half, estimate + half
    return Bounded(lower, upper, boundary_violation=lower < -1.0 or upper > 1.0)


def nb_mover(
    counts: PairCounts,
    alpha: Alpha | float = 0.05,
    base: ProportionMethod = ProportionMethod.WILSON,
) -> ConfidenceSet:
    """Return the MOVER interval of the net benefit built from two single-proportion intervals."""
    props = counts.proportions()
    n = counts.total()
    p_w, p_l = props.p_w, props.p_l

    win = proportion_interval(p_w, n, alpha, base)
    loss = proportion_interval(p_l, n, alpha, base)
    rho = estimate_correlation(p_w, p_l)

    d_lower = (p_w - win.lower) ** 2 + (loss.upper - p_l) ** 2 - 2 * rho * (p_w - win.lower) * (loss.upper - p_l)
    d_upper = (win.upper - p_w) ** 2 + (p_l - loss.lower) ** 2 - 2 * rho * (win.upper - p_w) * (p_l - loss.lower)

    estimate = p_w - p_l
    return Bounded(estimate - math.sqrt(max(d_lower, 0.0)), estimate + math.sqrt(max(d_upper, 0.0)))

from __future__ import annotations

import math
from typing import NamedTuple

from dissect.winratio.core import (
    Alpha,
    Bounded,
    ConfidenceSet,
    LowerUnbounded,
    PairCounts,
    RayUnion,
    Undefined,
    UpperUnbounded,
    WholeLine,
    as_alpha,
    conditional_win_fraction,
    estimate_win_ratio,
)
from dissect.winratio.exceptions import DegenerateVarianceError, UndefinedLogError, UndefinedRatioError
from dissect.winratio.intervals.proportion import (
    ProportionMethod,
    estimate_correlation,
    proportion_interval,
)


def win_fraction_interval(counts: PairCounts, alpha: Alpha | float = 0.05) -> Bounded:
    """Return the normal interval of the conditional win fraction, clipped to ``[0, 1]``."""
    q = conditional_win_fraction(counts)
    half = as_alpha(alpha).z_half() * math.sqrt(q * (1 - q) / counts.untied())
    return Bounded(max(0.0, q - half), min(1.0, q + half))


def wr_pocock(counts: PairCounts, alpha: Alpha | float = 0.05) -> ConfidenceSet:
    """Return the win ratio interval obtained by transforming the win fraction interval with ``q / (1 - q)``."""
    q_interval = win_fraction_interval(counts, alpha)
    q_lower, q_upper = q_interval.lower, q_interval.upper

    if q_lower >= 1.0:
        return Undefined("no losses")

    lower = q_lower / (1 - q_lower)
    if q_upper >= 1.0:
        return UpperUnbounded(lower)
    return Bounded(lower, q_upper / (1 - q_upper))


def win_ratio_standard_error(counts: PairCounts) -> float:
    if counts.n_win == 0 or counts.n_loss == 0:
        raise DegenerateVarianceError(f"Win ratio variance is degenerate without wins and losses {counts}")
    props = counts.proportions()
    return math.sqrt(props.p_w * (props.p_w + props.p_l) / (counts.total() * props.p_l**3))


def wr_wald(counts: PairCounts, alpha: Alpha | float = 0.05) -> ConfidenceSet:
    """Return the delta-method Wald interval of the win ratio.

    Negative lower bounds are kept as they are and flagged with ``boundary_violation``.
    """
    se = win_ratio_standard_error(counts)
    estimate = estimate_win_ratio(counts)
    half = as_alpha(alpha).z_half() * se
    lower = estimate - half
    return Bounded(lower, estimate + half, boundary_violation=lower < 0.0)


def wr_wald_log(counts: PairCounts, alpha: Alpha | float = 0.05) -> ConfidenceSet:
    """Return the Wald interval of the win ratio on the log scale."""
    if counts.n_win == 0 or counts.n_loss == 0:
        raise UndefinedLogError(f"Log win ratio is undefined without wins and losses {counts}")
    estimate = estimate_win_ratio(counts)
    factor = math.exp(as_alpha(alpha).z_half() * math.sqrt(1 / counts.n_win + 1 / counts.n_loss))
    return Bounded(estimate / factor, estimate * factor)


class FiellerCoefficients(NamedTuple):
    """Coefficients of the Fieller inequality ``a R^2 - 2 b R + c <= 0``."""

    a: float
    b: float
    c: float

    @property
    def discriminant(self) -> float:
        return self.b * self.b - self.a * self.c


def fieller_coefficients(counts: PairCounts, alpha: Alpha | float = 0.05) -> FiellerCoefficients:
    props = counts.proportions()
    n = counts.total()
    z2 = as_alpha(alpha).z_half() ** 2
    p_w, p_l = props.p_w, props.p_l
    return FiellerCoefficients(
        a=n * p_l**2 - z2 * p_l * (1 - p_l),
        b=p_w * p_l * (n + z2),
        c=n * p_w**2 - z2 * p_w * (1 - p_w),
    )


def wr_fieller(counts: PairCounts, alpha: Alpha | float = 0.05) -> ConfidenceSet:
    """Return the Fieller confidence set of the win ratio.

    The set is the solution of a quadratic inequality and is not always an interval:

    - a positive leading coefficient gives a bounded interval, its lower bound is clipped at 0;
    - a negative leading coefficient gives the union of two rays;
    - a nonpositive discriminant gives the whole line;
    - a zero leading coefficient leaves a linear inequality, solved by a half line.

    The discriminant is negative only when there are fewer untied pairs than ``z^2`` times the tie fraction.
    """
    a, b, c = coefficients = fieller_coefficients(counts, alpha)
    discriminant = coefficients.discriminant

    if discriminant <= 0:
        return WholeLine()

    if a == 0:
        # -2bR + c <= 0, and b != 0 since the discriminant is positive
        bound = c / (2 * b)
        if b > 0:
            return UpperUnbounded(max(bound, 0.0))
        return LowerUnbounded(bound)

    root = math.sqrt(discriminant)
    if a > 0:
        return Bounded(_non_negative((b - root) / a), (b + root) / a)
    return RayUnion((b + root) / a, (b - root) / a)


def _non_negative(x: float) -> float:
    # Adding 0.0 turns -0.0 into 0.0
    return max(x, 0.0) + 0.0


def _mover_lower(p_w: float, p_l: float, win_lower: float, loss_upper: float, rho: float) -> float:
    a = loss_upper * (2 * p_l - loss_upper)
    b = p_w * p_l - rho * (p_w - win_lower) * (loss_upper - p_l)
    c = win_lower * (2 * p_w - win_lower)

    if a == 0:
        return _non_negative(c / (2 * b)) if b > 0 else 0.0

    discriminant = b * b - a * c
    if discriminant < 0:
        return 0.0

    # The smaller root for a > 0 and the positive root for a < 0 are the same expression
    return _non_negative((b - math.sqrt(discriminant)) / a)


def _mover_upper(p_w: float, p_l: float, win_upper: float, loss_lower: float, rho: float) -> float | None:
    a = loss_lower * (2 * p_l - loss_lower)
    if a <= 0:
        return None

    b = p_w * p_l - rho * (win_upper - p_w) * (p_l - loss_lower)
    c = win_upper * (2 * p_w - win_upper)
    discriminant = b * b - a * c
    if discriminant < 0:
        return None

    return (b + math.sqrt(discriminant)) / a


def wr_mover(
    counts: PairCounts,
    alpha: Alpha | float = 0.05,
    base: ProportionMethod = ProportionMethod.WILSON,
) -> ConfidenceSet:
    """Return the MOVER interval of the win ratio built from two single-proportion intervals.

    A nonpositive upper denominator, which happens for very few losses, yields an unbounded upper side.
    """
    if counts.n_loss == 0:
        raise UndefinedRatioError(f"MOVER win ratio interval is undefined without losses {counts}")

    props = counts.proportions()
    n = counts.total()
    p_w, p_l = props.p_w, props.p_l

    win = proportion_interval(p_w, n, alpha, base)
    loss = proportion_interval(p_l, n, alpha, base)
    rho = estimate_correlation(p_w, p_l)

    lower = _mover_lower(p_w, p_l, win.lower, loss.upper, rho)
    upper = _mover_upper(p_w, p_l, win.upper, loss.lower, rho)

    if upper is None:
        return UpperUnbounded(lower)
    return Bounded(lower, max(upper, lower))

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

from dissect.winratio.core import (
    Alpha,
    PairCounts,
    as_alpha,
    binomial_coefficient,
    conditional_win_fraction,
    normal_cdf,
)
from dissect.winratio.exceptions import AllTiesError, DegenerateVarianceError


class TestMethod(str, Enum):
    __test__ = False

    Z_CORRECTED = "z"
    Z_POCOCK = "z-pocock"
    EXACT = "exact"


@dataclass(frozen=True)
class TestResult:
    """Outcome of a test of equal win and loss probabilities.

    ``statistic`` is ``None`` for the exact binomial test.
    """

    __test__ = False

    method: TestMethod
    statistic: Optional[float]
    p_value: float

    def to_dict(self) -> dict:
        return {"method": self.method.value, "statistic": self.statistic, "p_value": self.p_value}


def two_sided_p_value(statistic: float) -> float:
    return min(1.0, 2.0 * normal_cdf(-abs(statistic)))


def _check_untied(counts: PairCounts) -> None:
    if counts.untied() == 0:
        raise AllTiesError(f"Test is undefined when all pairs are tied {counts}")


def z_corrected(counts: PairCounts) -> TestResult:
    """Return the corrected Z test, which uses the null variance of the win fraction.

    Ties do not enter the statistic.
    """
    _check_untied(counts)
    statistic = (counts.n_win - counts.n_loss) / math.sqrt(counts.untied())
    return TestResult(TestMethod.Z_CORRECTED, statistic, two_sided_p_value(statistic))


def z_pocock(counts: PairCounts) -> TestResult:
    """Return the Z test on the win fraction with its estimated variance."""
    _check_untied(counts)
    q = conditional_win_fraction(counts)
    if q in (0.0, 1.0):
        raise DegenerateVarianceError(f"Win fraction variance is zero for {counts}")
    statistic = (q - 0.5) / math.sqrt(q * (1 - q) / counts.untied())
    return TestResult(TestMethod.Z_POCOCK, statistic, two_sided_p_value(statistic))


def exact_p_value(counts: PairCounts) -> TestResult:
    """Return the exact two-sided binomial test on the untied pairs.

    The doubled tail is computed in exact arithmetic and clamped at 1.
    """
    _check_untied(counts)
    n_win, n_loss = counts.n_win, counts.n_loss
    if n_win == n_loss:
        return TestResult(TestMethod.EXACT, None, 1.0)

    m = n_win + n_loss
    if n_win > n_loss:
        tail = sum(binomial_coefficient(m, k) for k in range(n_win, m + 1))
    else:
        tail = sum(binomial_coefficient(m, k) for k in range(0, n_win + 1))

    p_value = min(Fraction(2 * tail, 2**m), Fraction(1))
    return TestResult(TestMethod.EXACT, None, float(p_value))


TEST_METHODS: dict[TestMethod, Callable[[PairCounts], TestResult]] = {
    TestMethod.Z_CORRECTED: z_corrected,
    TestMethod.Z_POCOCK: z_pocock,
    TestMethod.EXACT: exact_p_value,
}


def run_test(method: TestMethod, counts: PairCounts) -> TestResult:
    return TEST_METHODS[method](counts)


def rejects(method: TestMethod, counts: PairCounts, alpha: Alpha | float = 0.05) -> bool:
    """Return whether a test rejects at level ``alpha``.

    All-tie samples never reject. A degenerate win fraction of 0 or 1 rejects under ``z-pocock`` because its
    statistic diverges.
    """
    alpha = as_alpha(alpha)
    try:
        result = run_test(method, counts)
    except AllTiesError:
        return False
    except DegenerateVarianceError:
        return True

    if result.statistic is not None:
        return abs(result.statistic) > alpha.z_half()
    return result.p_value <= alpha.value


def parse_tests(value: str) -> tuple[TestMethod, ...]:
    if value.strip() == "all":
        return tuple(TestMethod)
    if value.strip() in ("", "none"):
        return ()
    try:
        return tuple(TestMethod(name.strip()) for name in value.split(","))
    except ValueError:
        choices = ", ".join(member.value for member in TestMethod)
        raise ValueError(f"Invalid test list {value!r}, choose from: {choices}")

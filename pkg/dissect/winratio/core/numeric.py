from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from scipy import special


def normal_cdf(x: float) -> float:
    """Return the standard normal distribution function at ``x``."""
    return float(special.ndtr(x))


def normal_quantile(p: float) -> float:
    """Return the standard normal quantile function at ``p``.

    Raises:
        ValueError: If ``p`` is not strictly between 0 and 1.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"Quantile probability must be in (0, 1), got {p!r}")
    return float(special.ndtri(p))


def binomial_coefficient(n: int, k: int) -> int:
    """Return the exact binomial coefficient ``n`` over ``k``."""
    if n < 0 or not 0 <= k <= n:
        raise ValueError(f"Invalid binomial coefficient arguments n={n!r}, k={k!r}")
    return int(special.comb(n, k, exact=True))


@dataclass(frozen=True)
class Alpha:
    """A two-sided significance level.

    The critical value defaults to the exact normal quantile ``z_{1-alpha/2}``. An explicit ``z`` overrides it,
    which allows reproducing results that were computed with a rounded critical value such as 1.96.
    """

    value: float = 0.05
    z: Optional[float] = None

    def __post_init__(self) -> None:
        if not 0.0 < self.value < 1.0:
            raise ValueError(f"Alpha must be in (0, 1), got {self.value!r}")
        if self.z is not None and self.z <= 0:
            raise ValueError(f"Critical value must be positive, got {self.z!r}")

    @classmethod
    def rounded(cls, value: float = 0.05, digits: int = 2) -> Alpha:
        """Return the level ``value`` with its critical value rounded to ``digits`` decimals, 1.96 at 0.05."""
        return cls(value, round(normal_quantile(1.0 - value / 2.0), digits))

    def z_half(self) -> float:
        """Return the positive critical value ``z_{1-alpha/2}``."""
        if self.z is not None:
            return self.z
        return normal_quantile(1.0 - self.value / 2.0)


def z_power(power: float) -> float:
    """Return ``z_{1-beta}`` for a requested power ``1 - beta``."""
    if not 0.0 < power < 1.0:
        raise ValueError(f"Power must be in (0, 1), got {power!r}")
    return normal_quantile(power)


def as_alpha(alpha: Alpha | float) -> Alpha:
    if isinstance(alpha, Alpha):
        return alpha
    return Alpha(float(alpha))

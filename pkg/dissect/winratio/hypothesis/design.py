from __future__ import annotations

import math
from dataclasses import dataclass

from dissect.winratio.core import Alpha, as_alpha, normal_cdf, z_power
from dissect.winratio.exceptions import InfeasibleTargetError, NoEffectError


class DesignTarget:
    """Anticipated effect of a study, expressed as raw probabilities, a net benefit or a win ratio."""

    def probabilities(self) -> tuple[float, float]:
        """Return the implied ``(pi_w, pi_l)``."""
        raise NotImplementedError()

    def required_pairs(self, z_alpha: float, z_beta: float) -> float:
        raise NotImplementedError()


@dataclass(frozen=True)
class RawTarget(DesignTarget):
    pi_w: float
    pi_l: float

    def __post_init__(self) -> None:
        if not (0.0 < self.pi_w < 1.0 and 0.0 < self.pi_l < 1.0):
            raise InfeasibleTargetError(f"Probabilities must be in (0, 1), got ({self.pi_w!r}, {self.pi_l!r})")
        if self.pi_w + self.pi_l > 1.0:
            raise InfeasibleTargetError(f"pi_w + pi_l must not exceed 1, got {self.pi_w + self.pi_l!r}")
        if self.pi_w == self.pi_l:
            raise NoEffectError("No effect: pi_w equals pi_l")

    def probabilities(self) -> tuple[float, float]:
        return self.pi_w, self.pi_l

    def required_pairs(self, z_alpha: float, z_beta: float) -> float:
        pi_wl = self.pi_w + self.pi_l
        delta = self.pi_w - self.pi_l
        return (z_alpha * math.sqrt(pi_wl) + z_beta * math.sqrt(pi_wl - delta**2)) ** 2 / delta**2


@dataclass(frozen=True)
class NetBenefitTarget(DesignTarget):
    nb: float
    pi_wl: float

    def __post_init__(self) -> None:
        if self.nb == 0:
            raise NoEffectError("No effect: net benefit is 0")
        if not -1.0 < self.nb < 1.0:
            raise InfeasibleTargetError(f"Net benefit must be in (-1, 1), got {self.nb!r}")
        if not 0.0 < self.pi_wl <= 1.0:
            raise InfeasibleTargetError(f"pi_wl must be in (0, 1], got {self.pi_wl!r}")
        if self.pi_wl < abs(self.nb):
            raise InfeasibleTargetError(f"pi_wl {self.pi_wl!r} is smaller than |net benefit| {abs(self.nb)!r}")

    def probabilities(self) -> tuple[float, float]:
        return (self.pi_wl + self.nb) / 2, (self.pi_wl - self.nb) / 2

    def required_pairs(self, z_alpha: float, z_beta: float) -> float:
        return (z_alpha * math.sqrt(self.pi_wl) + z_beta * math.sqrt(self.pi_wl - self.nb**2)) ** 2 / self.nb**2


@dataclass(frozen=True)
class WinRatioTarget(DesignTarget):
    wr: float
    pi_wl: float

    def __post_init__(self) -> None:
        if self.wr == 1:
            raise NoEffectError("No effect: win ratio is 1")
        if self.wr <= 0:
            raise InfeasibleTargetError(f"Win ratio must be positive, got {self.wr!r}")
        if not 0.0 < self.pi_wl <= 1.0:
            raise InfeasibleTargetError(f"pi_wl must be in (0, 1], got {self.pi_wl!r}")

    def probabilities(self) -> tuple[float, float]:
        pi_w = self.wr * self.pi_wl / (1 + self.wr)
        return pi_w, self.pi_wl - pi_w

    def required_pairs(self, z_alpha: float, z_beta: float) -> float:
        r = self.wr
        spread = math.sqrt((r + 1) ** 2 - (r - 1) ** 2 * self.pi_wl)
        return (z_alpha * (r + 1) + z_beta * spread) ** 2 / ((r - 1) ** 2 * self.pi_wl)


def power(n_pairs: int, target: DesignTarget, alpha: Alpha | float = 0.05) -> float:
    """Return the normal-approximation power of the corrected Z test with ``n_pairs`` matched pairs."""
    if n_pairs < 1:
        raise ValueError(f"Number of pairs must be at least 1, got {n_pairs!r}")

    pi_w, pi_l = target.probabilities()
    pi_wl = pi_w + pi_l
    delta = abs(pi_w - pi_l)
    sigma_null = math.sqrt(pi_wl / n_pairs)
    sigma_alt = math.sqrt((pi_wl - delta**2) / n_pairs)
    return normal_cdf((delta - as_alpha(alpha).z_half() * sigma_null) / sigma_alt)


def sample_size(target: DesignTarget, alpha: Alpha | float = 0.05, power: float = 0.8) -> int:
    """Return the number of matched pairs needed to reach ``power``, rounded up."""
    alpha = as_alpha(alpha)
    if not alpha.value < power < 1.0:
        raise ValueError(f"Power must be in (alpha, 1), got {power!r}")

    n_pairs = target.required_pairs(alpha.z_half(), z_power(power))
    return max(1, math.ceil(round(n_pairs, 9)))

from __future__ import annotations

from dataclasses import dataclass

from dissect.winratio.exceptions import AllTiesError, EmptyDataError, UndefinedRatioError

PROBABILITY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class PairCounts:
    """The win, loss and tie counts of a matched study.

    These three numbers are the sufficient statistic for every test and interval in this package.
    """

    n_win: int
    n_loss: int
    n_tie: int

    def __post_init__(self) -> None:
        for name in ("n_win", "n_loss", "n_tie"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValueError(f"{name} must be an integer, got {value!r}")
            if value < 0:
                raise ValueError(f"{name} must be nonnegative, got {value!r}")

    def __str__(self) -> str:
        return f"({self.n_win}, {self.n_loss}, {self.n_tie})"

    @classmethod
    def parse(cls, value: str) -> PairCounts:
        """Parse a ``wins,losses,ties`` triple."""
        parts = [part.strip() for part in value.split(",")]
        if len(parts) != 3:
            raise ValueError(f"Expected three comma separated counts, got {value!r}")
        try:
            return cls(*(int(part) for part in parts))
        except ValueError as e:
            raise ValueError(f"Invalid counts {value!r}: {e}")

    def total(self) -> int:
        return self.n_win + self.n_loss + self.n_tie

    def untied(self) -> int:
        return self.n_win + self.n_loss

    def swapped(self) -> PairCounts:
        """Return the counts seen from the control patient's perspective."""
        return PairCounts(self.n_loss, self.n_win, self.n_tie)

    def proportions(self) -> Proportions:
        total = self.total()
        if total == 0:
            raise EmptyDataError("No pairs to compute proportions from")
        return Proportions(self.n_win / total, self.n_loss / total, self.n_tie / total)


@dataclass(frozen=True)
class Proportions:
    """Win, loss and tie proportions, either observed or the true simulation parameters."""

    p_w: float
    p_l: float
    p_t: float

    def __post_init__(self) -> None:
        for name in ("p_w", "p_l", "p_t"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value!r}")
        if abs(self.p_w + self.p_l + self.p_t - 1.0) > PROBABILITY_TOLERANCE:
            raise ValueError(f"Proportions must sum to 1, got {self.p_w + self.p_l + self.p_t!r}")

    @classmethod
    def from_win_loss(cls, p_w: float, p_l: float) -> Proportions:
        # p_t absorbs the rounding residue
        return cls(p_w, p_l, max(0.0, 1.0 - p_w - p_l))

    @property
    def net_benefit(self) -> float:
        return self.p_w - self.p_l

    @property
    def win_ratio(self) -> float:
        if self.p_l == 0:
            raise UndefinedRatioError("Win ratio is undefined when the loss probability is 0")
        return self.p_w / self.p_l


def estimate_net_benefit(counts: PairCounts) -> float:
    total = counts.total()
    if total == 0:
        raise EmptyDataError("Net benefit needs at least one pair")
    return (counts.n_win - counts.n_loss) / total


def estimate_win_ratio(counts: PairCounts) -> float:
    if counts.n_loss == 0:
        raise UndefinedRatioError(f"Win ratio is undefined without losses {counts}")
    return counts.n_win / counts.n_loss


def conditional_win_fraction(counts: PairCounts) -> float:
    """Return the fraction of wins among the untied pairs."""
    untied = counts.untied()
    if untied == 0:
        raise AllTiesError(f"All pairs are tied {counts}")
    return counts.n_win / untied

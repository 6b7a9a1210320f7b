from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

from dissect.winratio.core import Alpha, Proportions
from dissect.winratio.hypothesis import TestMethod
from dissect.winratio.intervals import NbMethod, WrMethod

PROBABILITY_TOLERANCE = 1e-12


class StudyKind(str, Enum):
    TYPE_ONE_ERROR = "type1"
    POWER = "power"
    NET_BENEFIT = "nb"
    WIN_RATIO = "wr"


class Parameterization(str, Enum):
    RAW = "raw"
    FROM_NB = "nb"
    FROM_WR = "wr"


def _snap(value: float) -> float:
    """Snap probabilities within rounding distance of 0 or 1."""
    if abs(value) <= PROBABILITY_TOLERANCE:
        return 0.0
    if abs(value - 1.0) <= PROBABILITY_TOLERANCE:
        return 1.0
    return value


def net_benefit_truth(nb: float, pi_t: float) -> Proportions:
    pi_w = (1 + nb - pi_t) / 2
    pi_l = pi_w - nb
    return Proportions(_snap(pi_w), _snap(pi_l), _snap(pi_t))


def win_ratio_truth(wr: float, pi_t: float) -> Proportions:
    if wr <= 0:
        raise ValueError(f"Win ratio must be positive, got {wr!r}")
    pi_l = (1 - pi_t) / (1 + wr)
    pi_w = wr * pi_l
    return Proportions(_snap(pi_w), _snap(pi_l), _snap(pi_t))


@dataclass(frozen=True)
class SimScenario:
    """A single cell of a simulation study.

    ``stream`` keys the random streams of the scenario together with ``seed``, so two scenarios with the same
    seed and stream draw identical samples. Without an explicit stream the key is derived from the study kind, the
    number of pairs and the true probabilities, which gives distinct cells distinct streams.
    """

    study: StudyKind
    n_pairs: int
    truth: Proportions
    replicates: int = 100_000
    alpha: Alpha = field(default_factory=Alpha)
    seed: int = 0
    stream: Optional[int] = None
    parameterization: Parameterization = Parameterization.RAW
    effect: Optional[float] = None
    tests: tuple[TestMethod, ...] = ()
    nb_methods: tuple[NbMethod, ...] = ()
    wr_methods: tuple[WrMethod, ...] = ()

    def __post_init__(self) -> None:
        if self.n_pairs < 1:
            raise ValueError(f"Number of pairs must be at least 1, got {self.n_pairs!r}")
        if self.replicates < 0:
            raise ValueError(f"Number of replicates must be nonnegative, got {self.replicates!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"Seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.stream is None:
            object.__setattr__(self, "stream", self.derived_stream())
        if self.stream < 0:
            raise ValueError(f"Stream key must be nonnegative, got {self.stream!r}")

    def derived_stream(self) -> int:
        key = f"{self.study.value}:{self.n_pairs}:{self.truth.p_w!r}:{self.truth.p_l!r}:{self.truth.p_t!r}"
        return int.from_bytes(hashlib.blake2b(key.encode(), digest_size=4).digest(), "big")

    @classmethod
    def raw(cls, n_pairs: int, pi_w: float, pi_l: float, **kwargs) -> SimScenario:
        study = StudyKind.TYPE_ONE_ERROR if pi_w == pi_l else StudyKind.POWER
        kwargs.setdefault("tests", tuple(TestMethod))
        return cls(study, n_pairs, Proportions.from_win_loss(pi_w, pi_l), **kwargs)

    @classmethod
    def from_nb(cls, n_pairs: int, nb: float, pi_t: float, **kwargs) -> SimScenario:
        kwargs.setdefault("nb_methods", tuple(NbMethod))
        return cls(
            StudyKind.NET_BENEFIT,
            n_pairs,
            net_benefit_truth(nb, pi_t),
            parameterization=Parameterization.FROM_NB,
            effect=nb,
            **kwargs,
        )

    @classmethod
    def from_wr(cls, n_pairs: int, wr: float, pi_t: float, **kwargs) -> SimScenario:
        kwargs.setdefault("wr_methods", tuple(WrMethod))
        return cls(
            StudyKind.WIN_RATIO,
            n_pairs,
            win_ratio_truth(wr, pi_t),
            parameterization=Parameterization.FROM_WR,
            effect=wr,
            **kwargs,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "study": self.study.value,
            "stream": self.stream,
            "n_pairs": self.n_pairs,
            "parameterization": self.parameterization.value,
            "effect": self.effect,
            "pi_w": self.truth.p_w,
            "pi_l": self.truth.p_l,
            "pi_t": self.truth.p_t,
            "replicates": self.replicates,
            "seed": self.seed,
            "alpha": self.alpha.value,
            "z": self.alpha.z_half(),
        }

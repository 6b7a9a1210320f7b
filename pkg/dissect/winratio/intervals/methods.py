from __future__ import annotations

from enum import Enum
from functools import partial
from typing import Callable

from dissect.winratio.core import Alpha, ConfidenceSet, PairCounts, Undefined
from dissect.winratio.exceptions import Error
from dissect.winratio.intervals.net_benefit import nb_mover, nb_wald
from dissect.winratio.intervals.proportion import ProportionMethod
from dissect.winratio.intervals.win_ratio import (
    wr_fieller,
    wr_mover,
    wr_pocock,
    wr_wald,
    wr_wald_log,
)

IntervalFunction = Callable[[PairCounts, Alpha], ConfidenceSet]


class Estimand(str, Enum):
    NET_BENEFIT = "nb"
    WIN_RATIO = "wr"


class NbMethod(str, Enum):
    WALD = "wald"
    MOVER_WILSON = "mover-wilson"
    MOVER_AC = "mover-ac"


class WrMethod(str, Enum):
    POCOCK = "pocock"
    WALD = "wald"
    WALD_LOG = "wald-log"
    FIELLER = "fieller"
    MOVER_WILSON = "mover-wilson"
    MOVER_AC = "mover-ac"


NB_METHODS: dict[NbMethod, IntervalFunction] = {
    NbMethod.WALD: nb_wald,
    NbMethod.MOVER_WILSON: partial(nb_mover, base=ProportionMethod.WILSON),
    NbMethod.MOVER_AC: partial(nb_mover, base=ProportionMethod.AGRESTI_COULL),
}

WR_METHODS: dict[WrMethod, IntervalFunction] = {
    WrMethod.POCOCK: wr_pocock,
    WrMethod.WALD: wr_wald,
    WrMethod.WALD_LOG: wr_wald_log,
    WrMethod.FIELLER: wr_fieller,
    WrMethod.MOVER_WILSON: partial(wr_mover, base=ProportionMethod.WILSON),
    WrMethod.MOVER_AC: partial(wr_mover, base=ProportionMethod.AGRESTI_COULL),
}


def compute_interval(method: NbMethod | WrMethod, counts: PairCounts, alpha: Alpha) -> ConfidenceSet:
    """Compute an interval, turning the errors of undefined methods into an :class:`Undefined` set."""
    func = NB_METHODS[method] if isinstance(method, NbMethod) else WR_METHODS[method]
    try:
        return func(counts, alpha)
    except Error as e:
        return Undefined(str(e))


def parse_methods(value: str, enum: type[NbMethod] | type[WrMethod]) -> tuple:
    """Parse a comma separated list of method names, ``all`` selects every method and ``none`` no method."""
    if value.strip() == "all":
        return tuple(enum)
    if value.strip() in ("", "none"):
        return ()
    try:
        return tuple(enum(name.strip()) for name in value.split(","))
    except ValueError:
        choices = ", ".join(member.value for member in enum)
        raise ValueError(f"Invalid method list {value!r}, choose from: {choices}")

from __future__ import annotations

import logging
import os
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Union

from dissect.winratio.comparator.hierarchy import Direction, OutcomeHierarchy, OutcomeKind, OutcomeSpec
from dissect.winratio.comparator.records import MatchedPair, SubjectRecord
from dissect.winratio.core import PairCounts
from dissect.winratio.exceptions import DataError, EmptyDataError

log = logging.getLogger(__name__)
log.setLevel(os.getenv("DISSECT_LOG_COMPARATOR", "CRITICAL"))


class Verdict(str, Enum):
    WIN = "win"
    LOSS = "loss"
    TIE = "tie"

    def reversed(self) -> Verdict:
        if self == Verdict.WIN:
            return Verdict.LOSS
        if self == Verdict.LOSS:
            return Verdict.WIN
        return self


@dataclass(frozen=True)
class PairVerdict:
    verdict: Verdict
    deciding_outcome: Optional[str] = None

    def __post_init__(self) -> None:
        if (self.verdict == Verdict.TIE) != (self.deciding_outcome is None):
            raise ValueError("A deciding outcome is present exactly for wins and losses")


def _event_time(record: SubjectRecord, outcome: OutcomeSpec) -> Optional[float]:
    value = record.value(outcome.name)
    if record.follow_up is None:
        raise DataError(f"Subject {record.subject_id}: follow-up is required for {outcome.name}")
    if value is not None and not 0 <= value <= record.follow_up:
        raise DataError(
            f"Subject {record.subject_id}: {outcome.name} event time {value!r} outside follow-up "
            f"[0, {record.follow_up!r}]"
        )
    return value


def _compare_time_to_event(pair: MatchedPair, outcome: OutcomeSpec) -> Verdict:
    treated = _event_time(pair.treated, outcome)
    control = _event_time(pair.control, outcome)
    window = min(pair.treated.follow_up, pair.control.follow_up)

    # Events after the shared follow-up are unobserved for this comparison
    treated = treated if treated is not None and treated <= window else None
    control = control if control is not None and control <= window else None

    if treated is None and control is None:
        return Verdict.TIE

    if treated is None:
        verdict = Verdict.WIN
    elif control is None:
        verdict = Verdict.LOSS
    elif treated == control:
        return Verdict.TIE
    else:
        verdict = Verdict.WIN if treated > control else Verdict.LOSS

    # The verdict above treats the event as harmful
    if outcome.direction == Direction.HIGHER_IS_BETTER:
        verdict = verdict.reversed()
    return verdict


def _compare_values(treated: Optional[float], control: Optional[float], outcome: OutcomeSpec) -> Verdict:
    if treated is None or control is None:
        return Verdict.TIE
    if abs(treated - control) <= outcome.tie_margin:
        return Verdict.TIE

    verdict = Verdict.WIN if treated > control else Verdict.LOSS
    if outcome.direction == Direction.LOWER_IS_BETTER:
        verdict = verdict.reversed()
    return verdict


def compare_on_outcome(pair: MatchedPair, outcome: OutcomeSpec) -> Verdict:
    """Compare the two patients of a pair on a single outcome, from the treated patient's perspective.

    Missing values never decide a comparison. Time-to-event outcomes are compared within the shorter of the two
    follow-ups, an event beyond it counts as not observed.
    """
    if outcome.kind == OutcomeKind.TIME_TO_EVENT:
        return _compare_time_to_event(pair, outcome)

    treated = pair.treated.value(outcome.name)
    control = pair.control.value(outcome.name)
    if outcome.kind == OutcomeKind.BINARY:
        for record, value in ((pair.treated, treated), (pair.control, control)):
            if value not in (None, 0, 1):
                raise DataError(f"Subject {record.subject_id}: {outcome.name} must be 0 or 1, got {value!r}")

    return _compare_values(treated, control, outcome)


def adjudicate(pair: MatchedPair, hierarchy: Union[OutcomeHierarchy, list[OutcomeSpec]]) -> PairVerdict:
    """Walk down the hierarchy and return the first verdict that is not a tie."""
    if not isinstance(hierarchy, OutcomeHierarchy):
        hierarchy = OutcomeHierarchy(list(hierarchy))

    for outcome in hierarchy:
        verdict = compare_on_outcome(pair, outcome)
        if verdict != Verdict.TIE:
            return PairVerdict(verdict, outcome.name)

    return PairVerdict(Verdict.TIE)


def adjudicate_all(
    pairs: Iterable[MatchedPair], hierarchy: Union[OutcomeHierarchy, list[OutcomeSpec]]
) -> list[PairVerdict]:
    if not isinstance(hierarchy, OutcomeHierarchy):
        hierarchy = OutcomeHierarchy(list(hierarchy))

    verdicts = []
    for pair in pairs:
        verdict = adjudicate(pair, hierarchy)
        log.debug("Pair %s: %s (%s)", pair.pair_id, verdict.verdict.value, verdict.deciding_outcome)
        verdicts.append(verdict)
    return verdicts


def count_verdicts(verdicts: Iterable[PairVerdict]) -> PairCounts:
    counter = Counter(verdict.verdict for verdict in verdicts)
    return PairCounts(counter[Verdict.WIN], counter[Verdict.LOSS], counter[Verdict.TIE])


def tally(pairs: Iterable[MatchedPair], hierarchy: Union[OutcomeHierarchy, list[OutcomeSpec]]) -> PairCounts:
    """Adjudicate every pair and return the win, loss and tie counts."""
    counts = count_verdicts(adjudicate_all(pairs, hierarchy))
    if counts.total() == 0:
        raise EmptyDataError("No pairs to tally")
    return counts


def attribution(
    verdicts: Iterable[PairVerdict], hierarchy: Union[OutcomeHierarchy, list[OutcomeSpec]]
) -> dict[str, tuple[int, int]]:
    """Return per outcome the number of wins and losses it decided, in hierarchy order."""
    if not isinstance(hierarchy, OutcomeHierarchy):
        hierarchy = OutcomeHierarchy(list(hierarchy))

    decided = Counter((verdict.deciding_outcome, verdict.verdict) for verdict in verdicts)
    return {
        outcome.name: (decided[(outcome.name, Verdict.WIN)], decided[(outcome.name, Verdict.LOSS)])
        for outcome in hierarchy
    }

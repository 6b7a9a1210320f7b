from __future__ import annotations

import csv
import logging
import os
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Optional, TextIO, Union

from dissect.winratio.comparator.hierarchy import OutcomeHierarchy, OutcomeKind
from dissect.winratio.exceptions import DataError

log = logging.getLogger(__name__)
log.setLevel(os.getenv("DISSECT_LOG_COMPARATOR", "CRITICAL"))


class Arm(str, Enum):
    TREATMENT = "treatment"
    CONTROL = "control"

    @classmethod
    def _missing_(cls, value):
        if isinstance(value, str):
            value = value.strip().lower()
            if value in ("t", "treated", "trt"):
                return cls.TREATMENT
            if value in ("c", "ctrl"):
                return cls.CONTROL
            for member in cls:
                if member.value == value:
                    return member
        return None


@dataclass(frozen=True)
class SubjectRecord:
    """The outcome data of a single patient.

    ``values`` maps outcome names to the observed value. For time-to-event outcomes the value is the event time,
    ``None`` meaning that no event was observed before ``follow_up``.
    """

    subject_id: str
    arm: Arm
    follow_up: Optional[float] = None
    values: dict[str, Optional[float]] = field(default_factory=dict)
    risk_score: Optional[float] = None

    def value(self, name: str) -> Optional[float]:
        return self.values.get(name)

    def validate(self, hierarchy: OutcomeHierarchy) -> None:
        """Check the record against the outcomes of ``hierarchy``.

        Raises:
            DataError: If an event time is negative, lies beyond the follow-up or has no follow-up at all.
        """
        if self.follow_up is not None and self.follow_up < 0:
            raise DataError(f"Subject {self.subject_id}: negative follow-up {self.follow_up!r}")

        for outcome in hierarchy:
            value = self.value(outcome.name)
            if outcome.kind == OutcomeKind.TIME_TO_EVENT:
                if value is None:
                    continue
                if self.follow_up is None:
                    raise DataError(f"Subject {self.subject_id}: {outcome.name} event time without follow-up")
                if not 0 <= value <= self.follow_up:
                    raise DataError(
                        f"Subject {self.subject_id}: {outcome.name} event time {value!r} "
                        f"outside follow-up [0, {self.follow_up!r}]"
                    )
            elif outcome.kind == OutcomeKind.BINARY and value not in (None, 0, 1):
                raise DataError(f"Subject {self.subject_id}: {outcome.name} must be 0 or 1, got {value!r}")


@dataclass(frozen=True)
class MatchedPair:
    treated: SubjectRecord
    control: SubjectRecord
    pair_id: Optional[str] = None

    def __post_init__(self) -> None:
        if self.treated.arm != Arm.TREATMENT or self.control.arm != Arm.CONTROL:
            raise DataError(
                f"Pair {self.pair_id}: expected a treatment and a control subject, "
                f"got {self.treated.arm.value} and {self.control.arm.value}"
            )

    def swapped(self) -> MatchedPair:
        """Return the pair with the roles of the two patients exchanged."""
        treated = replace(self.control, arm=Arm.TREATMENT)
        control = replace(self.treated, arm=Arm.CONTROL)
        return MatchedPair(treated, control, self.pair_id)


def _parse_float(value: Optional[str], where: str, column: str) -> Optional[float]:
    if value is None or not value.strip():
        return None
    try:
        return float(value)
    except ValueError:
        raise DataError(f"{where}: column {column}: not a number {value!r}")


def parse_pairs(fh: TextIO, hierarchy: OutcomeHierarchy, source: str = "<pairs>") -> list[MatchedPair]:
    """Parse a pair-level CSV document.

    Required columns are ``pair_id`` and ``arm``, plus ``follow_up`` when the hierarchy has a time-to-event outcome.
    Every outcome has one column, named ``<outcome>_time`` for time-to-event outcomes and ``<outcome>`` otherwise.
    Optional columns are ``subject_id`` and ``risk_score``. Empty cells are missing values.
    """
    reader = csv.DictReader(fh)
    header = reader.fieldnames or []

    required = ["pair_id", "arm"] + [outcome.value_column for outcome in hierarchy]
    if hierarchy.has_time_to_event:
        required.append("follow_up")
    missing = [column for column in required if column not in header]
    if missing:
        raise DataError(f"{source}:1: missing columns: {', '.join(missing)}")

    subjects: dict[str, dict[Arm, SubjectRecord]] = {}
    for row in reader:
        where = f"{source}:{reader.line_num}"
        pair_id = (row.get("pair_id") or "").strip()
        if not pair_id:
            raise DataError(f"{where}: empty pair_id")

        try:
            arm = Arm(row.get("arm") or "")
        except ValueError:
            raise DataError(f"{where}: unknown arm {row.get('arm')!r}")

        subject_id = (row.get("subject_id") or "").strip() or f"{pair_id}:{arm.value}"
        record = SubjectRecord(
            subject_id=subject_id,
            arm=arm,
            follow_up=_parse_float(row.get("follow_up"), where, "follow_up"),
            values={
                outcome.name: _parse_float(row.get(outcome.value_column), where, outcome.value_column)
                for outcome in hierarchy
            },
            risk_score=_parse_float(row.get("risk_score"), where, "risk_score"),
        )

        try:
            record.validate(hierarchy)
        except DataError as e:
            raise DataError(f"{where}: {e}")

        arms = subjects.setdefault(pair_id, {})
        if arm in arms:
            raise DataError(f"{where}: pair {pair_id} has more than one {arm.value} subject")
        arms[arm] = record

    if not subjects:
        raise DataError(f"{source}: no pairs found")

    pairs = []
    for pair_id, arms in subjects.items():
        if len(arms) != 2:
            raise DataError(f"{source}: pair {pair_id} is incomplete")
        pairs.append(MatchedPair(arms[Arm.TREATMENT], arms[Arm.CONTROL], pair_id))

    log.debug("Read %d pairs from %s", len(pairs), source)
    return pairs


def read_pairs(path: Union[str, Path], hierarchy: OutcomeHierarchy) -> list[MatchedPair]:
    try:
        with open(path, newline="") as fh:
            return parse_pairs(fh, hierarchy, str(path))
    except OSError as e:
        raise DataError(f"{path}: cannot read pair file: {e.strerror}")

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Iterator, Optional, Union

from dissect.winratio.config import key_values, read_config_lines
from dissect.winratio.exceptions import ConfigError


class OutcomeKind(str, Enum):
    TIME_TO_EVENT = "tte"
    CONTINUOUS = "continuous"
    BINARY = "binary"


class Direction(str, Enum):
    HIGHER_IS_BETTER = "higher"
    LOWER_IS_BETTER = "lower"


@dataclass(frozen=True)
class OutcomeSpec:
    """A single level of the outcome hierarchy.

    For time-to-event outcomes the direction refers to the event itself: ``LOWER_IS_BETTER`` (the default)
    means the event is harmful, so a later event or no event at all is better.
    """

    name: str
    kind: OutcomeKind
    direction: Direction = Direction.LOWER_IS_BETTER
    tie_margin: float = 0.0
    priority: int = 1

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("Outcome name must not be empty")
        if self.tie_margin < 0:
            raise ValueError(f"Tie margin of {self.name} must be nonnegative, got {self.tie_margin!r}")
        if self.kind != OutcomeKind.CONTINUOUS and self.tie_margin != 0:
            raise ValueError(f"Tie margin is only allowed for continuous outcomes, not {self.name}")
        if self.priority < 1:
            raise ValueError(f"Priority of {self.name} must be at least 1, got {self.priority!r}")

    @property
    def value_column(self) -> str:
        """The pair file column holding this outcome."""
        if self.kind == OutcomeKind.TIME_TO_EVENT:
            return f"{self.name}_time"
        return self.name


class OutcomeHierarchy:
    """Outcomes ordered from the most to the least severe."""

    def __init__(self, outcomes: list[OutcomeSpec]):
        if not outcomes:
            raise ValueError("Outcome hierarchy must not be empty")

        outcomes = sorted(outcomes, key=lambda outcome: outcome.priority)
        priorities = [outcome.priority for outcome in outcomes]
        if priorities != list(range(1, len(outcomes) + 1)):
            raise ValueError(f"Outcome priorities must be distinct and contiguous from 1, got {priorities}")

        names = [outcome.name for outcome in outcomes]
        if len(set(names)) != len(names):
            raise ValueError(f"Outcome names must be unique, got {names}")

        self.outcomes = outcomes

    def __repr__(self) -> str:
        return f"<OutcomeHierarchy outcomes={[outcome.name for outcome in self.outcomes]}>"

    def __iter__(self) -> Iterator[OutcomeSpec]:
        return iter(self.outcomes)

    def __len__(self) -> int:
        return len(self.outcomes)

    @property
    def has_time_to_event(self) -> bool:
        return any(outcome.kind == OutcomeKind.TIME_TO_EVENT for outcome in self.outcomes)

    def truncated(self, levels: int) -> OutcomeHierarchy:
        """Return the hierarchy without its levels beyond ``levels``."""
        return OutcomeHierarchy(self.outcomes[:levels])

    def reordered(self, names: list[str]) -> OutcomeHierarchy:
        """Return the same outcomes with priorities following the order of ``names``."""
        by_name = {outcome.name: outcome for outcome in self.outcomes}
        return OutcomeHierarchy([replace(by_name[name], priority=i) for i, name in enumerate(names, start=1)])


def _parse_outcome(tokens: list[str], priority: int, where: str) -> OutcomeSpec:
    if not tokens:
        raise ConfigError(f"{where}: missing outcome name")

    name = tokens[0]
    where = f"{where}: outcome {name}"
    kind = None
    direction = None
    tie_margin = 0.0

    for key, value in key_values(tokens[1:], where):
        if key == "kind":
            try:
                kind = OutcomeKind(value)
            except ValueError:
                raise ConfigError(f"{where}.kind: unknown kind {value!r}")
        elif key == "direction":
            try:
                direction = Direction(value)
            except ValueError:
                raise ConfigError(f"{where}.direction: unknown direction {value!r}")
        elif key == "margin":
            try:
                tie_margin = float(value)
            except ValueError:
                raise ConfigError(f"{where}.margin: not a number {value!r}")
        else:
            raise ConfigError(f"{where}.{key}: unknown field")

    if kind is None:
        raise ConfigError(f"{where}.kind: missing")

    if direction is None:
        direction = Direction.LOWER_IS_BETTER if kind == OutcomeKind.TIME_TO_EVENT else Direction.HIGHER_IS_BETTER

    try:
        return OutcomeSpec(name, kind, direction, tie_margin, priority)
    except ValueError as e:
        raise ConfigError(f"{where}: {e}")


def parse_hierarchy(source: Union[str, Path], text: Optional[str] = None) -> OutcomeHierarchy:
    """Parse an outcome hierarchy document.

    Every ``outcome`` line defines one level, the first line being the most severe::

        outcome death kind tte
        outcome hospitalization kind tte direction lower
        outcome kccq kind continuous direction higher margin 5
    """
    outcomes = []
    for line in read_config_lines(source, text):
        where = f"{source}:{line.lineno}"
        if line.keyword != "outcome":
            raise ConfigError(f"{where}: unknown statement {line.keyword!r}")
        outcomes.append(_parse_outcome(line.tokens, len(outcomes) + 1, where))

    if not outcomes:
        raise ConfigError(f"{source}: no outcomes defined")

    try:
        return OutcomeHierarchy(outcomes)
    except ValueError as e:
        raise ConfigError(f"{source}: {e}")

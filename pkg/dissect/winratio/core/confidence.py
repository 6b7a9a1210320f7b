from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, ClassVar

from dissect.winratio.exceptions import UnboundedWidthError


class ConfidenceSet:
    """Base class of every confidence interval result.

    Besides ordinary bounded intervals, a set can be one of the degenerate shapes a Fieller or a
    transformed interval produces: a half line, the union of two rays, the whole real line or undefined.
    """

    kind: ClassVar[str]

    @property
    def is_bounded(self) -> bool:
        return False

    @property
    def is_defined(self) -> bool:
        return True

    def contains(self, value: float) -> bool:
        raise NotImplementedError()

    def width(self) -> float:
        raise UnboundedWidthError(f"Width is only defined for bounded sets, not {self.kind}")

    def to_dict(self) -> dict[str, Any]:
        return {"shape": self.kind}

    def render(self, precision: int = 2) -> str:
        raise NotImplementedError()


def _fmt(value: float, precision: int) -> str:
    return f"{value:.{precision}f}"


@dataclass(frozen=True)
class Bounded(ConfidenceSet):
    lower: float
    upper: float
    # Set when a Wald bound leaves the parameter space, the bounds themselves are not clipped
    boundary_violation: bool = False

    kind: ClassVar[str] = "bounded"

    def __post_init__(self) -> None:
        if not self.lower <= self.upper:
            raise ValueError(f"Bounded interval requires lower <= upper, got ({self.lower!r}, {self.upper!r})")

    @property
    def is_bounded(self) -> bool:
        return True

    def contains(self, value: float) -> bool:
        return self.lower <= value <= self.upper

    def width(self) -> float:
        return self.upper - self.lower

    def to_dict(self) -> dict[str, Any]:
        return {
            "shape": self.kind,
            "lower": self.lower,
            "upper": self.upper,
            "boundary_violation": self.boundary_violation,
        }

    def render(self, precision: int = 2) -> str:
        return f"({_fmt(self.lower, precision)}, {_fmt(self.upper, precision)})"


@dataclass(frozen=True)
class LowerUnbounded(ConfidenceSet):
    upper: float

    kind: ClassVar[str] = "lower_unbounded"

    def contains(self, value: float) -> bool:
        return value <= self.upper

    def to_dict(self) -> dict[str, Any]:
        return {"shape": self.kind, "upper": self.upper}

    def render(self, precision: int = 2) -> str:
        return f"(-inf, {_fmt(self.upper, precision)})"


@dataclass(frozen=True)
class UpperUnbounded(ConfidenceSet):
    lower: float

    kind: ClassVar[str] = "upper_unbounded"

    def contains(self, value: float) -> bool:
        return value >= self.lower

    def to_dict(self) -> dict[str, Any]:
        return {"shape": self.kind, "lower": self.lower}

    def render(self, precision: int = 2) -> str:
        return f"({_fmt(self.lower, precision)}, +inf)"


@dataclass(frozen=True)
class RayUnion(ConfidenceSet):
    """The set ``(-inf, left_upper) U (right_lower, +inf)``."""

    left_upper: float
    right_lower: float

    kind: ClassVar[str] = "ray_union"

    def __post_init__(self) -> None:
        if not self.left_upper < self.right_lower:
            raise ValueError(
                f"Ray union requires left_upper < right_lower, got ({self.left_upper!r}, {self.right_lower!r})"
            )

    def contains(self, value: float) -> bool:
        return value < self.left_upper or value > self.right_lower

    def to_dict(self) -> dict[str, Any]:
        return {"shape": self.kind, "left_upper": self.left_upper, "right_lower": self.right_lower}

    def render(self, precision: int = 2) -> str:
        return f"(-inf, {_fmt(self.left_upper, precision)}) U ({_fmt(self.right_lower, precision)}, +inf)"


@dataclass(frozen=True)
class WholeLine(ConfidenceSet):
    kind: ClassVar[str] = "whole_line"

    def contains(self, value: float) -> bool:
        return not math.isnan(value)

    def render(self, precision: int = 2) -> str:
        return "(-inf, +inf)"


@dataclass(frozen=True)
class Undefined(ConfidenceSet):
    reason: str

    kind: ClassVar[str] = "undefined"

    @property
    def is_defined(self) -> bool:
        return False

    def contains(self, value: float) -> bool:
        return False

    def to_dict(self) -> dict[str, Any]:
        return {"shape": self.kind, "reason": self.reason}

    def render(self, precision: int = 2) -> str:
        return f"undefined ({self.reason})"


def confidence_set_from_dict(obj: dict[str, Any]) -> ConfidenceSet:
    """Rebuild a confidence set from its :meth:`ConfidenceSet.to_dict` form."""
    shape = obj["shape"]
    if shape == Bounded.kind:
        return Bounded(obj["lower"], obj["upper"], obj.get("boundary_violation", False))
    if shape == LowerUnbounded.kind:
        return LowerUnbounded(obj["upper"])
    if shape == UpperUnbounded.kind:
        return UpperUnbounded(obj["lower"])
    if shape == RayUnion.kind:
        return RayUnion(obj["left_upper"], obj["right_lower"])
    if shape == WholeLine.kind:
        return WholeLine()
    if shape == Undefined.kind:
        return Undefined(obj["reason"])
    raise ValueError(f"Unknown confidence set shape: {shape!r}")

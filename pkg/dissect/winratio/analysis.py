from __future__ import annotations

import csv
import io
import json
import logging
import os
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Optional, Union

from dissect.winratio.comparator import (
    OutcomeHierarchy,
    adjudicate_all,
    attribution,
    count_verdicts,
    parse_hierarchy,
    read_pairs,
)
from dissect.winratio.core import (
    Alpha,
    ConfidenceSet,
    PairCounts,
    conditional_win_fraction,
    estimate_net_benefit,
    estimate_win_ratio,
)
from dissect.winratio.exceptions import EmptyDataError, Error
from dissect.winratio.hypothesis import TestMethod, TestResult, run_test
from dissect.winratio.intervals import Estimand, NbMethod, WrMethod, compute_interval

log = logging.getLogger(__name__)
log.setLevel(os.getenv("DISSECT_LOG_WINRATIO", "CRITICAL"))

SMALL_SAMPLE_UNTIED = 20


class OutputFormat(str, Enum):
    TEXT = "text"
    CSV = "csv"
    JSON = "json"


def _unique(items) -> tuple:
    return tuple(dict.fromkeys(items))


@dataclass(frozen=True)
class AnalysisRequest:
    """What to compute for a study, from counts or from a pair file with its outcome hierarchy."""

    counts: Optional[PairCounts] = None
    pair_file: Optional[Path] = None
    hierarchy_file: Optional[Path] = None
    alpha: Alpha = field(default_factory=Alpha)
    tests: tuple[TestMethod, ...] = tuple(TestMethod)
    nb_methods: tuple[NbMethod, ...] = tuple(NbMethod)
    wr_methods: tuple[WrMethod, ...] = tuple(WrMethod)
    output_format: OutputFormat = OutputFormat.TEXT

    def __post_init__(self) -> None:
        if (self.counts is None) == (self.pair_file is None):
            raise ValueError("Either counts or a pair file is required")
        if self.pair_file is not None and self.hierarchy_file is None:
            raise ValueError("A pair file needs a hierarchy file")
        if not (self.tests or self.nb_methods or self.wr_methods):
            raise ValueError("At least one test or interval method is required")

    def resolve_counts(self) -> PairCounts:
        if self.counts is not None:
            return self.counts
        counts, _ = compare_pairs(self.pair_file, self.hierarchy_file)
        return counts


@dataclass(frozen=True)
class TestEntry:
    __test__ = False

    method: TestMethod
    result: Optional[TestResult] = None
    error: Optional[str] = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "method": self.method.value,
            "statistic": self.result.statistic if self.result else None,
            "p_value": self.result.p_value if self.result else None,
            "error": self.error,
        }


@dataclass(frozen=True)
class IntervalEntry:
    estimand: Estimand
    method: Union[NbMethod, WrMethod]
    interval: ConfidenceSet

    @property
    def width(self) -> Optional[float]:
        return self.interval.width() if self.interval.is_bounded else None

    @property
    def flags(self) -> list[str]:
        flags = []
        if getattr(self.interval, "boundary_violation", False):
            flags.append("boundary_violation")
        if self.interval.kind != "bounded":
            flags.append(self.interval.kind)
        return flags

    def to_dict(self) -> dict[str, Any]:
        return {
            "estimand": self.estimand.value,
            "method": self.method.value,
            "set": self.interval.to_dict(),
            "width": self.width,
            "flags": self.flags,
        }


@dataclass(frozen=True)
class AnalysisReport:
    counts: PairCounts
    alpha: Alpha
    net_benefit: float
    win_ratio: Optional[float]
    win_fraction: Optional[float]
    tests: list[TestEntry]
    intervals: list[IntervalEntry]

    @property
    def small_sample(self) -> bool:
        return self.counts.untied() < SMALL_SAMPLE_UNTIED

    def to_dict(self) -> dict[str, Any]:
        return {
            "counts": {
                "n_win": self.counts.n_win,
                "n_loss": self.counts.n_loss,
                "n_tie": self.counts.n_tie,
                "total": self.counts.total(),
            },
            "alpha": self.alpha.value,
            "z": self.alpha.z_half(),
            "estimates": {
                "net_benefit": self.net_benefit,
                "win_ratio": self.win_ratio,
                "win_fraction": self.win_fraction,
            },
            "tests": [entry.to_dict() for entry in self.tests],
            "intervals": [entry.to_dict() for entry in self.intervals],
            "small_sample": self.small_sample,
        }


def _optional(func, counts: PairCounts) -> Optional[float]:
    try:
        return func(counts)
    except Error:
        return None


def build_report(
    counts: PairCounts,
    alpha: Alpha = Alpha(),
    tests: tuple[TestMethod, ...] = tuple(TestMethod),
    nb_methods: tuple[NbMethod, ...] = tuple(NbMethod),
    wr_methods: tuple[WrMethod, ...] = tuple(WrMethod),
) -> AnalysisReport:
    """Run the requested tests and interval methods on ``counts``.

    Methods that are undefined for these counts are reported with their reason instead of failing the analysis.
    """
    if counts.total() == 0:
        raise EmptyDataError("No pairs to analyze")
    if counts.untied() < SMALL_SAMPLE_UNTIED:
        log.warning("Only %d untied pairs, normal approximations may be unreliable", counts.untied())

    test_entries = []
    for method in _unique(tests):
        try:
            test_entries.append(TestEntry(method, run_test(method, counts)))
        except Error as e:
            test_entries.append(TestEntry(method, error=str(e)))

    intervals = []
    for estimand, methods in ((Estimand.NET_BENEFIT, nb_methods), (Estimand.WIN_RATIO, wr_methods)):
        for method in _unique(methods):
            intervals.append(IntervalEntry(estimand, method, compute_interval(method, counts, alpha)))

    return AnalysisReport(
        counts=counts,
        alpha=alpha,
        net_benefit=estimate_net_benefit(counts),
        win_ratio=_optional(estimate_win_ratio, counts),
        win_fraction=_optional(conditional_win_fraction, counts),
        tests=test_entries,
        intervals=intervals,
    )


def analyze(request: AnalysisRequest) -> AnalysisReport:
    return build_report(
        request.resolve_counts(),
        request.alpha,
        request.tests,
        request.nb_methods,
        request.wr_methods,
    )


def compare_pairs(
    pair_file: Union[str, Path], hierarchy_file: Union[str, Path]
) -> tuple[PairCounts, dict[str, tuple[int, int]]]:
    """Tally a pair file over its hierarchy, returning the counts and the per-outcome decisions."""
    hierarchy: OutcomeHierarchy = parse_hierarchy(hierarchy_file)
    verdicts = adjudicate_all(read_pairs(pair_file, hierarchy), hierarchy)
    return count_verdicts(verdicts), attribution(verdicts, hierarchy)


def _fmt(value: Optional[float], precision: int = 2) -> str:
    if value is None:
        return "undefined"
    return f"{value:.{precision}f}"


def _fmt_p(value: float) -> str:
    if value < 1e-4:
        return f"{value:.1e}"
    return f"{value:.4f}"


def render_text(report: AnalysisReport) -> str:
    counts = report.counts
    lines = [
        f"Pairs: {counts.total()} (wins {counts.n_win}, losses {counts.n_loss}, ties {counts.n_tie})",
        f"Alpha: {report.alpha.value:g} (z = {report.alpha.z_half():.4f})",
    ]

    sections = [
        (Estimand.NET_BENEFIT, "Net benefit", report.net_benefit),
        (Estimand.WIN_RATIO, "Win ratio", report.win_ratio),
    ]
    for estimand, title, estimate in sections:
        entries = [entry for entry in report.intervals if entry.estimand == estimand]
        if not entries:
            continue
        lines.append("")
        lines.append(f"{title}: {_fmt(estimate)}")
        for entry in entries:
            line = f"  {entry.method.value:<14}{entry.interval.render(2)}"
            if entry.width is not None:
                line += f"  width {entry.width:.2f}"
            if "boundary_violation" in entry.flags:
                line += "  [outside parameter space]"
            lines.append(line)

    if report.tests:
        lines.append("")
        lines.append("Tests")
        for entry in report.tests:
            if entry.error is not None:
                lines.append(f"  {entry.method.value:<14}undefined ({entry.error})")
            elif entry.result.statistic is None:
                lines.append(f"  {entry.method.value:<14}p-value {_fmt_p(entry.result.p_value)}")
            else:
                lines.append(
                    f"  {entry.method.value:<14}statistic {entry.result.statistic:.2f}"
                    f"  p-value {_fmt_p(entry.result.p_value)}"
                )

    if report.small_sample:
        lines.append("")
        lines.append(
            f"Advisory: only {counts.untied()} untied pairs, normal approximations are unreliable below "
            f"{SMALL_SAMPLE_UNTIED}; consider the exact test"
        )

    return "\n".join(lines) + "\n"


ANALYSIS_CSV_COLUMNS = [
    "section",
    "method",
    "estimate",
    "shape",
    "lower",
    "upper",
    "left_upper",
    "right_lower",
    "width",
    "statistic",
    "p_value",
    "flags",
    "reason",
]


def _csv_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_csv(report: AnalysisReport) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=ANALYSIS_CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()

    estimates = {Estimand.NET_BENEFIT: report.net_benefit, Estimand.WIN_RATIO: report.win_ratio}
    for entry in report.intervals:
        shape = entry.interval.to_dict()
        row = {
            "section": entry.estimand.value,
            "method": entry.method.value,
            "estimate": estimates[entry.estimand],
            "shape": shape["shape"],
            "lower": shape.get("lower"),
            "upper": shape.get("upper"),
            "left_upper": shape.get("left_upper"),
            "right_lower": shape.get("right_lower"),
            "width": entry.width,
            "flags": ";".join(entry.flags),
            "reason": shape.get("reason"),
        }
        writer.writerow({key: _csv_value(value) for key, value in row.items()})

    for entry in report.tests:
        row = {"section": "test", **entry.to_dict(), "reason": entry.error}
        row.pop("error")
        writer.writerow({key: _csv_value(row.get(key)) for key in ANALYSIS_CSV_COLUMNS})

    return buf.getvalue()


def render_json(report: AnalysisReport) -> str:
    return json.dumps(report.to_dict(), indent=2, allow_nan=False) + "\n"


def render(report: AnalysisReport, output_format: OutputFormat) -> str:
    if output_format == OutputFormat.CSV:
        return render_csv(report)
    if output_format == OutputFormat.JSON:
        return render_json(report)
    return render_text(report)

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Optional, Union

from dissect.winratio.hypothesis import TestMethod
from dissect.winratio.intervals import Estimand, NbMethod, WrMethod
from dissect.winratio.simulation.scenario import SimScenario

CSV_COLUMNS = [
    "study",
    "stream",
    "n_pairs",
    "parameterization",
    "effect",
    "pi_w",
    "pi_l",
    "pi_t",
    "replicates",
    "seed",
    "alpha",
    "z",
    "estimand",
    "method",
    "rejection_rate",
    "coverage",
    "bounded_coverage",
    "mean_width",
    "width_per_replicate",
    "n_defined",
]
"""Column names of the CSV simulation report, one row per scenario and method."""


@dataclass(frozen=True)
class IntervalSummary:
    """Coverage and width of one interval method over all replicates of a scenario.

    ``coverage`` counts every confidence set that contains the truth, including unbounded ones.
    ``bounded_coverage`` only counts bounded intervals. ``mean_width`` averages over the ``n_defined`` bounded
    intervals, ``width_per_replicate`` divides the same width total by all replicates.
    """

    estimand: Estimand
    method: Union[NbMethod, WrMethod]
    coverage: float
    bounded_coverage: float
    mean_width: Optional[float]
    width_per_replicate: float
    n_defined: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "estimand": self.estimand.value,
            "method": self.method.value,
            "coverage": self.coverage,
            "bounded_coverage": self.bounded_coverage,
            "mean_width": self.mean_width,
            "width_per_replicate": self.width_per_replicate,
            "n_defined": self.n_defined,
        }


@dataclass(frozen=True)
class SimulationReport:
    scenario: SimScenario
    rejection_rates: dict[TestMethod, float] = field(default_factory=dict)
    intervals: list[IntervalSummary] = field(default_factory=list)

    def interval(self, method: Union[NbMethod, WrMethod]) -> IntervalSummary:
        for summary in self.intervals:
            if summary.method is method:
                return summary
        raise KeyError(method)

    def to_dict(self) -> dict[str, Any]:
        return {
            "scenario": self.scenario.to_dict(),
            "tests": {method.value: rate for method, rate in self.rejection_rates.items()},
            "intervals": [summary.to_dict() for summary in self.intervals],
        }

    def rows(self) -> list[dict[str, Any]]:
        scenario = self.scenario.to_dict()
        rows = []
        for method, rate in self.rejection_rates.items():
            rows.append({**scenario, "estimand": "test", "method": method.value, "rejection_rate": rate})
        for summary in self.intervals:
            rows.append({**scenario, **summary.to_dict()})
        return rows


def _csv_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def reports_to_csv(reports: list[SimulationReport]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for report in reports:
        for row in report.rows():
            writer.writerow({column: _csv_value(row.get(column)) for column in CSV_COLUMNS})
    return buf.getvalue()


def reports_to_json(reports: list[SimulationReport]) -> str:
    return json.dumps([report.to_dict() for report in reports], indent=2, allow_nan=False) + "\n"

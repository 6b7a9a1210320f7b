from __future__ import annotations

import logging
import os
from collections import Counter
from concurrent.futures import Executor, ThreadPoolExecutor
from contextlib import nullcontext
from functools import partial
from typing import Iterable, Optional, Union

from dissect.winratio.core import PairCounts
from dissect.winratio.exceptions import EmptyReportError, Error, MisuseError, SimulationError
from dissect.winratio.hypothesis import rejects
from dissect.winratio.intervals import Estimand, NbMethod, WrMethod, compute_interval
from dissect.winratio.simulation.report import IntervalSummary, SimulationReport
from dissect.winratio.simulation.sampling import block_count, block_histogram
from dissect.winratio.simulation.scenario import SimScenario, StudyKind

log = logging.getLogger(__name__)
log.setLevel(os.getenv("DISSECT_LOG_SIMULATION", "CRITICAL"))


def outcome_histogram(scenario: SimScenario, executor: Optional[Executor] = None) -> dict[PairCounts, int]:
    """Return the number of replicates per distinct outcome, in increasing ``(n_win, n_loss)`` order.

    Blocks of replicates may be drawn in parallel, merging the integer counts makes the result independent of the
    schedule.
    """
    if scenario.replicates < 1:
        raise EmptyReportError("Simulation needs at least one replicate")

    mapper = executor.map if executor is not None else map
    histogram = Counter()
    for block in mapper(partial(block_histogram, scenario), range(block_count(scenario))):
        histogram.update(block)

    n = scenario.n_pairs
    return {PairCounts(w, l, n - w - l): histogram[(w, l)] for w, l in sorted(histogram)}


def _rejection_rates(scenario: SimScenario, histogram: dict[PairCounts, int]) -> dict:
    rates = {}
    for method in scenario.tests:
        rejections = sum(weight for counts, weight in histogram.items() if rejects(method, counts, scenario.alpha))
        rates[method] = rejections / scenario.replicates
    return rates


def _summarize_interval(
    scenario: SimScenario,
    histogram: dict[PairCounts, int],
    estimand: Estimand,
    method: Union[NbMethod, WrMethod],
    truth: float,
) -> IntervalSummary:
    covered = 0
    bounded_covered = 0
    n_defined = 0
    width_sum = 0.0

    for counts, weight in histogram.items():
        interval = compute_interval(method, counts, scenario.alpha)
        if not interval.is_defined:
            log.debug("%s %s undefined for %s: %s", estimand.value, method.value, counts, interval.reason)
        if interval.contains(truth):
            covered += weight
            if interval.is_bounded:
                bounded_covered += weight
        if interval.is_bounded:
            n_defined += weight
            width_sum += weight * interval.width()

    return IntervalSummary(
        estimand=estimand,
        method=method,
        coverage=covered / scenario.replicates,
        bounded_coverage=bounded_covered / scenario.replicates,
        mean_width=width_sum / n_defined if n_defined else None,
        width_per_replicate=width_sum / scenario.replicates,
        n_defined=n_defined,
    )


def _run_tests(scenario: SimScenario, executor: Optional[Executor]) -> SimulationReport:
    if not scenario.tests:
        raise MisuseError("No tests requested")
    histogram = outcome_histogram(scenario, executor)
    return SimulationReport(scenario, rejection_rates=_rejection_rates(scenario, histogram))


def run_type_one_error(scenario: SimScenario, executor: Optional[Executor] = None) -> SimulationReport:
    """Estimate the rejection rate of every requested test when the win and loss probabilities are equal."""
    if scenario.truth.p_w != scenario.truth.p_l:
        raise MisuseError(f"Type I error needs pi_w == pi_l, got {scenario.truth.p_w!r} and {scenario.truth.p_l!r}")
    return _run_tests(scenario, executor)


def run_power(scenario: SimScenario, executor: Optional[Executor] = None) -> SimulationReport:
    """Estimate the rejection rate of every requested test under an alternative."""
    if scenario.truth.p_w == scenario.truth.p_l:
        raise MisuseError("Power needs pi_w != pi_l")
    return _run_tests(scenario, executor)


def run_ci_study(scenario: SimScenario, executor: Optional[Executor] = None) -> SimulationReport:
    """Estimate coverage and width of every requested interval method.

    ``coverage`` counts every confidence set containing the truth, ``bounded_coverage`` only bounded ones.
    Undefined sets never cover and are excluded from the widths.
    """
    if not scenario.nb_methods and not scenario.wr_methods:
        raise MisuseError("No interval methods requested")
    if scenario.wr_methods and scenario.truth.p_l == 0:
        raise MisuseError("Win ratio intervals need a positive loss probability")

    histogram = outcome_histogram(scenario, executor)
    intervals = []
    for method in scenario.nb_methods:
        intervals.append(
            _summarize_interval(scenario, histogram, Estimand.NET_BENEFIT, method, scenario.truth.net_benefit)
        )
    for method in scenario.wr_methods:
        intervals.append(_summarize_interval(scenario, histogram, Estimand.WIN_RATIO, method, scenario.truth.win_ratio))

    return SimulationReport(scenario, intervals=intervals)


def run_scenario(scenario: SimScenario, executor: Optional[Executor] = None) -> SimulationReport:
    log.info(
        "Running %s scenario %d: N=%d truth=(%.4f, %.4f, %.4f) replicates=%d",
        scenario.study.value,
        scenario.stream,
        scenario.n_pairs,
        scenario.truth.p_w,
        scenario.truth.p_l,
        scenario.truth.p_t,
        scenario.replicates,
    )
    if scenario.study == StudyKind.TYPE_ONE_ERROR:
        return run_type_one_error(scenario, executor)
    if scenario.study == StudyKind.POWER:
        return run_power(scenario, executor)
    return run_ci_study(scenario, executor)


def run_grid(scenarios: Iterable[SimScenario], workers: int = 1) -> list[SimulationReport]:
    """Run every scenario and return the reports in input order.

    The result is identical for any number of ``workers``. Failing scenarios do not stop the grid, their errors
    are raised together at the end.
    """
    if workers < 1:
        raise ValueError(f"Number of workers must be at least 1, got {workers!r}")

    scenarios = list(scenarios)
    reports = []
    errors = []

    with ThreadPoolExecutor(max_workers=workers) if workers > 1 else nullcontext() as executor:
        for idx, scenario in enumerate(scenarios):
            try:
                reports.append(run_scenario(scenario, executor))
            except Error as e:
                log.debug("Scenario %d failed: %s", idx, e)
                errors.append((idx, e))

    if errors:
        summary = "; ".join(f"scenario {idx}: {e}" for idx, e in errors)
        raise SimulationError(f"{len(errors)} of {len(scenarios)} scenarios failed: {summary}", errors)

    return reports


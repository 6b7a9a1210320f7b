from dissect.winratio.simulation.engine import (
    outcome_histogram,
    run_ci_study,
    run_grid,
    run_power,
    run_scenario,
    run_type_one_error,
)
from dissect.winratio.simulation.grid import parse_grid, read_grid
from dissect.winratio.simulation.report import (
    CSV_COLUMNS,
    IntervalSummary,
    SimulationReport,
    reports_to_csv,
    reports_to_json,
)
from dissect.winratio.simulation.sampling import (
    block_generator,
    replicate_counts,
    sample_counts,
    sample_multinomial,
)
from dissect.winratio.simulation.scenario import (
    Parameterization,
    SimScenario,
    StudyKind,
    net_benefit_truth,
    win_ratio_truth,
)

__all__ = [
    "CSV_COLUMNS",
    "IntervalSummary",
    "Parameterization",
    "SimScenario",
    "SimulationReport",
    "StudyKind",
    "block_generator",
    "net_benefit_truth",
    "outcome_histogram",
    "parse_grid",
    "read_grid",
    "replicate_counts",
    "reports_to_csv",
    "reports_to_json",
    "run_ci_study",
    "run_grid",
    "run_power",
    "run_scenario",
    "run_type_one_error",
    "sample_counts",
    "sample_multinomial",
    "win_ratio_truth",
]

from dissect.winratio.intervals.methods import (
    NB_METHODS,
    WR_METHODS,
    Estimand,
    NbMethod,
    WrMethod,
    compute_interval,
    parse_methods,
)
from dissect.winratio.intervals.net_benefit import nb_mover, nb_wald, net_benefit_standard_error
from dissect.winratio.intervals.proportion import (
    ProportionMethod,
    SingleProportionInterval,
    agresti_coull_interval,
    estimate_correlation,
    proportion_interval,
    wald_interval,
    wilson_interval,
)
from dissect.winratio.intervals.win_ratio import (
    FiellerCoefficients,
    fieller_coefficients,
    win_fraction_interval,
    win_ratio_standard_error,
    wr_fieller,
    wr_mover,
    wr_pocock,
    wr_wald,
    wr_wald_log,
)

__all__ = [
    "Estimand",
    "FiellerCoefficients",
    "NB_METHODS",
    "NbMethod",
    "ProportionMethod",
    "SingleProportionInterval",
    "WR_METHODS",
    "WrMethod",
    "agresti_coull_interval",
    "compute_interval",
    "estimate_correlation",
    "fieller_coefficients",
    "nb_mover",
    "nb_wald",
    "net_benefit_standard_error",
    "parse_methods",
    "proportion_interval",
    "wald_interval",
    "wilson_interval",
    "win_fraction_interval",
    "win_ratio_standard_error",
    "wr_fieller",
    "wr_mover",
    "wr_pocock",
    "wr_wald",
    "wr_wald_log",
]

from dissect.winratio.core.confidence import (
    Bounded,
    ConfidenceSet,
    LowerUnbounded,
    RayUnion,
    Undefined,
    UpperUnbounded,
    WholeLine,
    confidence_set_from_dict,
)
from dissect.winratio.core.counts import (
    PairCounts,
    Proportions,
    conditional_win_fraction,
    estimate_net_benefit,
    estimate_win_ratio,
)
from dissect.winratio.core.numeric import (
    Alpha,
    as_alpha,
    binomial_coefficient,
    normal_cdf,
    normal_quantile,
    z_power,
)

__all__ = [
    "Alpha",
    "Bounded",
    "ConfidenceSet",
    "LowerUnbounded",
    "PairCounts",
    "Proportions",
    "RayUnion",
    "Undefined",
    "UpperUnbounded",
    "WholeLine",
    "as_alpha",
    "binomial_coefficient",
    "conditional_win_fraction",
    "confidence_set_from_dict",
    "estimate_net_benefit",
    "estimate_win_ratio",
    "normal_cdf",
    "normal_quantile",
    "z_power",
]

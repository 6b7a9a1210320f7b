from dissect.winratio.hypothesis.design import (
    DesignTarget,
    NetBenefitTarget,
    RawTarget,
    WinRatioTarget,
    power,
    sample_size,
)
from dissect.winratio.hypothesis.tests import (
    TEST_METHODS,
    TestMethod,
    TestResult,
    exact_p_value,
    parse_tests,
    rejects,
    run_test,
    two_sided_p_value,
    z_corrected,
    z_pocock,
)

__all__ = [
    "DesignTarget",
    "NetBenefitTarget",
    "RawTarget",
    "TEST_METHODS",
    "TestMethod",
    "TestResult",
    "WinRatioTarget",
    "exact_p_value",
    "parse_tests",
    "power",
    "rejects",
    "run_test",
    "sample_size",
    "two_sided_p_value",
    "z_corrected",
    "z_pocock",
]

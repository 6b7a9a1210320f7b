from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dissect.winratio.core import Alpha, PairCounts
from dissect.winratio.exceptions import (
    AllTiesError,
    DegenerateVarianceError,
    InfeasibleTargetError,
    NoEffectError,
)
from dissect.winratio.hypothesis import (
    NetBenefitTarget,
    RawTarget,
    TestMethod,
    WinRatioTarget,
    exact_p_value,
    parse_tests,
    power,
    rejects,
    run_test,
    sample_size,
    two_sided_p_value,
    z_corrected,
    z_pocock,
)
from dissect.winratio.intervals import (
    ProportionMethod,
    fieller_coefficients,
    nb_mover,
    nb_wald,
    wr_pocock,
    wr_wald,
    wr_wald_log,
)

counts_strategy = st.builds(
    PairCounts,
    st.integers(min_value=0, max_value=500),
    st.integers(min_value=0, max_value=500),
    st.integers(min_value=0, max_value=500),
)


@pytest.mark.parametrize(
    ("counts", "statistic", "p_value"),
    [
        (PairCounts(249, 151, 964), 4.90, 9.6e-7),
        (PairCounts(421, 324, 527), 3.5538, 3.8e-4),
        (PairCounts(10, 3, 71), 1.9415, 0.0522),
        (PairCounts(14, 6, 64), 1.7889, 0.0736),
        (PairCounts(36, 16, 32), 2.7735, 0.00555),
    ],
)
def test_z_corrected(counts: PairCounts, statistic: float, p_value: float) -> None:
    result = z_corrected(counts)
    assert result.method == TestMethod.Z_CORRECTED
    assert result.statistic == pytest.approx(statistic, abs=5e-4)
    assert result.p_value == pytest.approx(p_value, rel=0.02)


@pytest.mark.parametrize(
    ("counts", "statistic", "p_value"),
    [
        (PairCounts(10, 3, 71), 2.304, 0.0212),
        (PairCounts(14, 6, 64), 1.952, 0.051),
        (PairCounts(36, 16, 32), 3.005, 0.00266),
    ],
)
def test_z_pocock(counts: PairCounts, statistic: float, p_value: float) -> None:
    result = z_pocock(counts)
    assert result.statistic == pytest.approx(statistic, abs=1e-3)
    assert result.p_value == pytest.approx(p_value, abs=5e-4)


def test_exact_p_value() -> None:
    result = exact_p_value(PairCounts(10, 3, 71))
    assert result.statistic is None
    assert result.p_value == pytest.approx(378 / 4096)

    assert exact_p_value(PairCounts(5, 5, 0)).p_value == 1.0
    assert exact_p_value(PairCounts(3, 4, 0)).p_value == 1.0
    assert exact_p_value(PairCounts(0, 1, 3)).p_value == 1.0
    assert exact_p_value(PairCounts(0, 6, 0)).p_value == pytest.approx(2 / 64)


def test_no_difference() -> None:
    counts = PairCounts(5, 5, 0)
    assert z_corrected(counts).statistic == 0.0
    assert z_corrected(counts).p_value == 1.0
    assert z_pocock(counts).p_value == 1.0


def test_degenerate_tests() -> None:
    for method in TestMethod:
        with pytest.raises(AllTiesError):
            run_test(method, PairCounts(0, 0, 5))

    with pytest.raises(DegenerateVarianceError):
        z_pocock(PairCounts(5, 0, 3))

    assert z_corrected(PairCounts(5, 0, 3)).statistic == pytest.approx(5 / math.sqrt(5))


def test_rejects() -> None:
    assert rejects(TestMethod.Z_CORRECTED, PairCounts(249, 151, 964))
    assert not rejects(TestMethod.Z_CORRECTED, PairCounts(10, 3, 71))
    assert rejects(TestMethod.Z_POCOCK, PairCounts(10, 3, 71))
    assert not rejects(TestMethod.EXACT, PairCounts(10, 3, 71))

    # All ties never reject, a degenerate win fraction always rejects under z-pocock
    for method in TestMethod:
        assert not rejects(method, PairCounts(0, 0, 30))
    assert rejects(TestMethod.Z_POCOCK, PairCounts(1, 0, 29))
    assert not rejects(TestMethod.Z_CORRECTED, PairCounts(1, 0, 29))

    assert rejects(TestMethod.Z_CORRECTED, PairCounts(10, 3, 71), alpha=0.1)


def test_two_sided_p_value() -> None:
    assert two_sided_p_value(0.0) == 1.0
    assert two_sided_p_value(1.959963984540054) == pytest.approx(0.05)
    assert two_sided_p_value(-1.959963984540054) == pytest.approx(0.05)


def test_parse_tests() -> None:
    assert parse_tests("all") == tuple(TestMethod)
    assert parse_tests("z, exact") == (TestMethod.Z_CORRECTED, TestMethod.EXACT)
    assert parse_tests("") == ()

    with pytest.raises(ValueError, match="choose from"):
        parse_tests("t-test")


@settings(max_examples=500)
@given(counts_strategy)
def test_z_corrected_forms_agree(counts: PairCounts) -> None:
    assume(counts.untied() > 0)
    props = counts.proportions()
    q = counts.n_win / counts.untied()

    statistic = z_corrected(counts).statistic
    assert statistic == pytest.approx((props.p_w - props.p_l) / math.sqrt((props.p_w + props.p_l) / counts.total()))
    assert statistic == pytest.approx((q - 0.5) / math.sqrt(0.25 / counts.untied()), rel=1e-10, abs=1e-10)


@settings(max_examples=200)
@given(counts_strategy, st.integers(min_value=0, max_value=1000))
def test_tests_ignore_ties(counts: PairCounts, ties: int) -> None:
    assume(counts.untied() > 0)
    other = PairCounts(counts.n_win, counts.n_loss, ties)

    for method in TestMethod:
        try:
            expected = run_test(method, counts)
        except DegenerateVarianceError:
            with pytest.raises(DegenerateVarianceError):
                run_test(method, other)
            continue
        assert run_test(method, other) == expected


@settings(max_examples=200)
@given(counts_strategy)
def test_reflection(counts: PairCounts) -> None:
    assume(counts.total() > 0)
    swapped = counts.swapped()

    wald, wald_swapped = nb_wald(counts), nb_wald(swapped)
    assert wald_swapped.lower == pytest.approx(-wald.upper, abs=1e-12)
    assert wald_swapped.upper == pytest.approx(-wald.lower, abs=1e-12)

    mover, mover_swapped = nb_mover(counts), nb_mover(swapped)
    assert mover_swapped.lower == pytest.approx(-mover.upper, abs=1e-12)
    assert mover_swapped.upper == pytest.approx(-mover.lower, abs=1e-12)

    if counts.untied() > 0:
        assert z_corrected(swapped).statistic == -z_corrected(counts).statistic
        assert exact_p_value(swapped).p_value == exact_p_value(counts).p_value

    if counts.n_win > 0 and counts.n_loss > 0:
        log, log_swapped = wr_wald_log(counts), wr_wald_log(swapped)
        assert log_swapped.lower == pytest.approx(1 / log.upper)
        assert log_swapped.upper == pytest.approx(1 / log.lower)


@settings(max_examples=500)
@given(counts_strategy)
def test_z_corrected_bounded_by_pocock(counts: PairCounts) -> None:
    assume(counts.n_win > 0 and counts.n_loss > 0)
    corrected = abs(z_corrected(counts).statistic)
    pocock = abs(z_pocock(counts).statistic)
    assert corrected <= pocock * (1 + 1e-12) + 1e-12


@settings(max_examples=300)
@given(counts_strategy)
def test_pocock_reflection(counts: PairCounts) -> None:
    assume(counts.n_win > 0 and counts.n_loss > 0)
    interval, swapped = wr_pocock(counts), wr_pocock(counts.swapped())
    assert swapped.lower == pytest.approx(1 / interval.upper, rel=1e-9)
    assert swapped.upper == pytest.approx(1 / interval.lower, rel=1e-9)

    assert z_pocock(counts.swapped()).statistic == pytest.approx(-z_pocock(counts).statistic, rel=1e-12)


def test_wald_not_reflection_dual() -> None:
    counts = PairCounts(249, 151, 964)
    interval, swapped = wr_wald(counts), wr_wald(counts.swapped())
    assert abs(swapped.upper - 1 / interval.lower) > 0.01
    assert abs(swapped.lower - 1 / interval.upper) > 0.01


@settings(max_examples=300)
@given(st.integers(min_value=0, max_value=25), st.integers(min_value=0, max_value=25))
def test_exact_p_value_against_binomial_tail(n_win: int, n_loss: int) -> None:
    m = n_win + n_loss
    assume(0 < m <= 25)

    extreme = max(n_win, n_loss)
    tail = sum(math.comb(m, k) for k in range(extreme, m + 1))
    expected = float(min(Fraction(2 * tail, 2**m), Fraction(1)))

    assert exact_p_value(PairCounts(n_win, n_loss, 7)).p_value == expected


@settings(max_examples=1000)
@given(counts_strategy)
def test_fieller_discriminant_nonnegative(counts: PairCounts) -> None:
    # z^2 < 4 keeps the discriminant nonnegative from four untied pairs on
    assume(counts.untied() >= 4)
    a, b, c = coefficients = fieller_coefficients(counts, Alpha())
    assert coefficients.discriminant >= -1e-12 * (b * b + abs(a * c))


@settings(max_examples=200)
@given(counts_strategy)
def test_mover_with_wald_limits_is_wald(counts: PairCounts) -> None:
    assume(counts.total() > 0)
    wald = nb_wald(counts)
    mover = nb_mover(counts, base=ProportionMethod.WALD)
    assert mover.lower == pytest.approx(wald.lower, abs=1e-9)
    assert mover.upper == pytest.approx(wald.upper, abs=1e-9)


@pytest.mark.parametrize(
    ("target"),
    [
        RawTarget(0.4, 0.3),
        NetBenefitTarget(0.1, 0.7),
        WinRatioTarget(4 / 3, 0.7),
    ],
)
def test_sample_size(target) -> None:
    pi_w, pi_l = target.probabilities()
    assert pi_w == pytest.approx(0.4)
    assert pi_l == pytest.approx(0.3)

    n_pairs = sample_size(target, 0.05, 0.8)
    assert n_pairs == 548
    assert power(n_pairs, target) >= 0.8
    assert power(n_pairs - 1, target) < 0.8


def test_sample_size_grows_with_power() -> None:
    target = RawTarget(0.5, 0.3)
    sizes = [sample_size(target, Alpha(), p) for p in (0.7, 0.8, 0.9, 0.95)]
    assert sizes == sorted(sizes)
    assert sample_size(target, Alpha(0.01), 0.8) > sample_size(target, Alpha(0.05), 0.8)


def test_design_targets_invalid() -> None:
    for make in (lambda: RawTarget(0.3, 0.3), lambda: NetBenefitTarget(0.0, 0.5), lambda: WinRatioTarget(1.0, 0.5)):
        with pytest.raises(NoEffectError):
            make()

    for make in (
        lambda: RawTarget(0.6, 0.5),
        lambda: RawTarget(0.0, 0.5),
        lambda: NetBenefitTarget(0.5, 0.3),
        lambda: NetBenefitTarget(0.1, 1.5),
        lambda: WinRatioTarget(-1.0, 0.5),
        lambda: WinRatioTarget(2.0, 0.0),
    ):
        with pytest.raises(InfeasibleTargetError):
            make()

    with pytest.raises(ValueError):
        sample_size(RawTarget(0.4, 0.3), 0.05, 0.01)

    with pytest.raises(ValueError):
        power(0, RawTarget(0.4, 0.3))

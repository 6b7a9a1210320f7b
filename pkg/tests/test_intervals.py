from __future__ import annotations

import math
from typing import Optional

import pytest

from dissect.winratio.core import (
    Alpha,
    Bounded,
    PairCounts,
    RayUnion,
    Undefined,
    UpperUnbounded,
    WholeLine,
)
from dissect.winratio.exceptions import (
    DegenerateVarianceError,
    UndefinedLogError,
    UndefinedRatioError,
)
from dissect.winratio.intervals import (
    NbMethod,
    ProportionMethod,
    WrMethod,
    agresti_coull_interval,
    compute_interval,
    estimate_correlation,
    fieller_coefficients,
    nb_mover,
    nb_wald,
    parse_methods,
    wald_interval,
    wilson_interval,
    win_fraction_interval,
    wr_fieller,
    wr_mover,
    wr_pocock,
    wr_wald,
    wr_wald_log,
)

Z196 = Alpha(0.05, 1.96)

EMPHASIS = PairCounts(249, 151, 964)
CHARM = PairCounts(421, 324, 527)
DEATH = PairCounts(10, 3, 71)
DEATH_TRANSPLANT = PairCounts(14, 6, 64)
ALL_OUTCOMES = PairCounts(36, 16, 32)


def assert_bounds(interval, lower: float, upper: float, tolerance: float = 1e-3) -> None:
    assert isinstance(interval, Bounded)
    assert interval.lower == pytest.approx(lower, abs=tolerance)
    assert interval.upper == pytest.approx(upper, abs=tolerance)


@pytest.mark.parametrize(
    ("p", "n", "lower", "upper"),
    [
        (0.5, 100, 0.4038, 0.5962),
        (0.0, 20, 0.0, 0.1611),
        (1.0, 20, 0.8389, 1.0),
    ],
)
def test_wilson_interval(p: float, n: int, lower: float, upper: float) -> None:
    interval = wilson_interval(p, n)
    assert interval.method == ProportionMethod.WILSON
    assert interval.lower == pytest.approx(lower, abs=1e-4)
    assert interval.upper == pytest.approx(upper, abs=1e-4)


def test_single_proportion_intervals() -> None:
    wilson = wilson_interval(0.2, 50)
    ac = agresti_coull_interval(0.2, 50)

    # Agresti-Coull shares the Wilson center and is at least as wide
    assert (ac.lower + ac.upper) / 2 == pytest.approx((wilson.lower + wilson.upper) / 2)
    assert ac.upper - ac.lower >= wilson.upper - wilson.lower

    assert wald_interval(0.01, 10).lower == 0.0
    assert wald_interval(0.01, 10, clip=False).lower < 0.0

    for p, n in ((-0.1, 10), (1.1, 10), (0.5, 0)):
        with pytest.raises(ValueError):
            wilson_interval(p, n)


def test_estimate_correlation() -> None:
    assert estimate_correlation(0.3, 0.3) == pytest.approx(-0.3 * 0.3 / (0.3 * 0.7))
    assert estimate_correlation(0.0, 0.4) == 0.0
    assert estimate_correlation(1.0, 0.0) == 0.0


@pytest.mark.parametrize(
    ("counts", "wald", "mover_wilson", "mover_ac"),
    [
        (EMPHASIS, (0.0434, 0.1003), (0.0433, 0.1003), (0.0432, 0.1004)),
        (CHARM, (0.0344, 0.1181), (0.0343, 0.1179), None),
        (DEATH, (0.0011, 0.1656), (-0.0027, 0.1745), (-0.0074, 0.1777)),
        (DEATH_TRANSPLANT, (-0.0071, 0.1976), (-0.0103, 0.2009), (-0.0135, 0.2035)),
        (ALL_OUTCOMES, (0.0777, 0.3985), (0.0719, 0.3880), (0.0710, 0.3889)),
    ],
)
def test_net_benefit_intervals(
    counts: PairCounts,
    wald: tuple[float, float],
    mover_wilson: tuple[float, float],
    mover_ac: Optional[tuple[float, float]],
) -> None:
    assert_bounds(nb_wald(counts, Z196), *wald)
    assert_bounds(nb_mover(counts, Z196, ProportionMethod.WILSON), *mover_wilson)
    if mover_ac is not None:
        assert_bounds(nb_mover(counts, Z196, ProportionMethod.AGRESTI_COULL), *mover_ac)


def test_net_benefit_wald_boundary_violation() -> None:
    interval = nb_wald(PairCounts(1, 0, 0))
    assert interval.lower == interval.upper == 1.0
    assert not interval.boundary_violation

    interval = nb_wald(PairCounts(9, 0, 1))
    assert interval.upper > 1.0
    assert interval.boundary_violation


def test_net_benefit_mover_collapses_to_wald() -> None:
    for counts in (EMPHASIS, CHARM, DEATH, PairCounts(5, 0, 3), PairCounts(0, 0, 4)):
        wald = nb_wald(counts)
        mover = nb_mover(counts, base=ProportionMethod.WALD)
        assert mover.lower == pytest.approx(wald.lower, abs=1e-9)
        assert mover.upper == pytest.approx(wald.upper, abs=1e-9)


@pytest.mark.parametrize(
    ("counts", "pocock", "wald", "wald_log", "mover_wilson", "mover_ac"),
    [
        (
            EMPHASIS,
            (1.3529, 2.0304),
            (1.3156, 1.9824),
            (1.3472, 2.0185),
            (1.3476, 2.0180),
            (1.3472, 2.0188),
        ),
        (
            CHARM,
            (1.1254, 1.5044),
            (1.1112, 1.4876),
            (1.1242, 1.5019),
            (1.1244, 1.5018),
            (1.1243, 1.5019),
        ),
        (
            DEATH_TRANSPLANT,
            (0.9966, 9.0847),
            (0.1018, 4.5649),
            (0.8967, 6.0720),
            (0.9210, 5.9101),
            (0.8985, 6.4143),
        ),
        (
            ALL_OUTCOMES,
            (1.3087, 4.4871),
            (0.92496, 3.57504),
            (1.2486, 4.0545),
            (1.2631, 4.0356),
            (1.2588, 4.0689),
        ),
    ],
)
def test_win_ratio_intervals(
    counts: PairCounts,
    pocock: tuple[float, float],
    wald: tuple[float, float],
    wald_log: tuple[float, float],
    mover_wilson: tuple[float, float],
    mover_ac: tuple[float, float],
) -> None:
    assert_bounds(wr_pocock(counts, Z196), *pocock)
    assert_bounds(wr_wald(counts, Z196), *wald)
    assert_bounds(wr_wald_log(counts, Z196), *wald_log)
    assert_bounds(wr_mover(counts, Z196, ProportionMethod.WILSON), *mover_wilson)
    assert_bounds(wr_mover(counts, Z196, ProportionMethod.AGRESTI_COULL), *mover_ac)


@pytest.mark.parametrize(
    ("counts", "fieller"),
    [
        (EMPHASIS, (1.3520, 2.0319)),
        (CHARM, (1.1252, 1.5046)),
        (DEATH_TRANSPLANT, (0.9328, 11.1029)),
        (ALL_OUTCOMES, (1.2992, 4.5420)),
    ],
)
def test_win_ratio_fieller_bounded(counts: PairCounts, fieller: tuple[float, float]) -> None:
    assert_bounds(wr_fieller(counts, Z196), *fieller)


def test_win_ratio_few_losses() -> None:
    pocock = wr_pocock(DEATH, Z196)
    assert pocock.lower == pytest.approx(1.1748, abs=1e-3)
    assert pocock.upper == pytest.approx(575.59, abs=0.5)

    wald = wr_wald(DEATH, Z196)
    assert_bounds(wald, -0.9674, 7.6341)
    assert wald.boundary_violation

    assert_bounds(wr_wald_log(DEATH, Z196), 0.9174, 12.1121)
    assert_bounds(wr_mover(DEATH, Z196, ProportionMethod.WILSON), 0.9681, 11.3321)
    assert_bounds(wr_mover(DEATH, Z196, ProportionMethod.AGRESTI_COULL), 0.9174, 16.8254)


def test_win_ratio_fieller_ray_union() -> None:
    a, b, c = fieller_coefficients(DEATH, Z196)
    assert a == pytest.approx(-0.0252, abs=1e-4)
    assert b == pytest.approx(0.3735, abs=1e-4)
    assert c == pytest.approx(0.7876, abs=1e-4)

    interval = wr_fieller(DEATH, Z196)
    assert isinstance(interval, RayUnion)
    assert interval.left_upper == pytest.approx(-30.7109, abs=1e-2)
    assert interval.right_lower == pytest.approx(1.0194, abs=1e-3)
    assert interval.render() == "(-inf, -30.71) U (1.02, +inf)"
    assert interval.contains(DEATH.n_win / DEATH.n_loss)


def test_win_ratio_fieller_whole_line() -> None:
    # Two untied pairs among many ties: the discriminant turns negative
    counts = PairCounts(1, 1, 82)
    assert fieller_coefficients(counts, Z196).discriminant < 0
    assert wr_fieller(counts, Z196) == WholeLine()


def test_win_ratio_mover_lower_not_negative_zero() -> None:
    interval = wr_mover(PairCounts(1, 1, 82), Z196, ProportionMethod.AGRESTI_COULL)
    assert interval.lower == 0.0
    assert math.copysign(1.0, interval.lower) == 1.0
    assert interval.render().startswith("(0.00, ")


def test_win_ratio_methods_agree_at_scale() -> None:
    counts = PairCounts(3000, 2000, 5000)
    intervals = {method: compute_interval(method, counts, Z196) for method in WrMethod}
    assert all(isinstance(interval, Bounded) for interval in intervals.values())

    for first in intervals.values():
        for second in intervals.values():
            assert first.lower == pytest.approx(second.lower, abs=0.01)
            assert first.upper == pytest.approx(second.upper, abs=0.01)


def test_win_ratio_pocock_degenerate() -> None:
    assert wr_pocock(PairCounts(5, 0, 3)) == Undefined("no losses")
    assert wr_pocock(PairCounts(0, 5, 3)) == Bounded(0.0, 0.0)

    interval = wr_pocock(PairCounts(3, 1, 0))
    assert isinstance(interval, UpperUnbounded)
    assert interval.lower == pytest.approx(0.4829, abs=1e-3)


def test_win_ratio_pocock_ignores_ties() -> None:
    for ties in (0, 10, 1000):
        assert wr_pocock(PairCounts(20, 10, ties)) == wr_pocock(PairCounts(20, 10, 0))


def test_win_ratio_fieller_widens_with_ties() -> None:
    widths = [wr_fieller(PairCounts(20, 10, ties), Z196).width() for ties in (0, 20, 60)]
    assert widths == sorted(widths)


def test_win_fraction_interval() -> None:
    interval = win_fraction_interval(EMPHASIS, Z196)
    q = 249 / 400
    assert interval.lower < q < interval.upper
    assert (interval.lower + interval.upper) / 2 == pytest.approx(q)


def test_win_ratio_errors() -> None:
    with pytest.raises(DegenerateVarianceError):
        wr_wald(PairCounts(0, 3, 2))

    with pytest.raises(UndefinedLogError):
        wr_wald_log(PairCounts(3, 0, 2))

    with pytest.raises(UndefinedRatioError):
        wr_mover(PairCounts(3, 0, 2))


def test_compute_interval() -> None:
    assert compute_interval(NbMethod.WALD, EMPHASIS, Z196) == nb_wald(EMPHASIS, Z196)
    assert compute_interval(WrMethod.WALD, EMPHASIS, Z196) == wr_wald(EMPHASIS, Z196)

    undefined = compute_interval(WrMethod.WALD_LOG, PairCounts(3, 0, 2), Z196)
    assert isinstance(undefined, Undefined)
    assert "without wins and losses" in undefined.reason


def test_parse_methods() -> None:
    assert parse_methods("all", NbMethod) == tuple(NbMethod)
    assert parse_methods("none", WrMethod) == ()
    assert parse_methods("fieller,wald-log", WrMethod) == (WrMethod.FIELLER, WrMethod.WALD_LOG)

    with pytest.raises(ValueError, match="choose from"):
        parse_methods("pocock", NbMethod)

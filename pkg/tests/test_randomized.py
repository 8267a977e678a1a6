import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import F, inst
from facility_lens.core.domain.errors import InvalidDelta, InvalidLottery, InvalidTheta
from facility_lens.core.domain.models import Lottery, Objective, Placement, Prediction, PredictionPair
from facility_lens.core.mechanisms.deterministic import min_max_2p, min_max_p
from facility_lens.core.mechanisms.randomized import (
    expected_cost,
    expected_value,
    lrm,
    lrm_p,
    lrmt,
    lrmt_p,
    rand_ends,
    rand_ends_2p,
)
from facility_lens.core.objectives import make_instance, opt_two

unit = st.fractions(min_value=0, max_value=1, max_denominator=12)
locations = st.lists(unit, min_size=1, max_size=5)

MD = Objective.MAX_DISTANCE
MU = Objective.MIN_UTILITY


def test_lrm_lottery():
    lottery = lrm(inst(0, 1))
    assert lottery.probability_of(Placement.at(F(0))) == F("1/4")
    assert lottery.probability_of(Placement.at(F("1/2"))) == F("1/2")
    assert lottery.probability_of(Placement.at(F(1))) == F("1/4")
    assert expected_value(lottery, inst(0, 1), MU) == F("1/4")


def test_lrmt_truncates_the_ends():
    instance = inst(0, 1)
    lottery = lrmt(instance)
    assert [p.facilities[0] for p, _ in lottery.outcomes] == [F("1/3"), F("1/2"), F("2/3")]
    assert expected_value(lottery, instance, MD) == F("7/12")


def test_lrmt_on_one_agent_is_a_point_mass_off_the_agent():
    lottery = lrmt(inst(0))
    assert lottery.is_point_mass
    assert lottery.outcomes[0][0] == Placement.at(F("1/3"))


def test_lrm_p_endpoints():
    instance, pi = inst("1/5", "4/5"), Prediction(F("1/2"))
    assert lrm_p(instance, pi, F(0)) == Lottery.point(min_max_p(instance, pi))
    assert lrm_p(instance, pi, F("1/2")) == lrm(instance)


def test_lrmt_p_endpoints():
    instance, pi = inst("1/5", "4/5"), Prediction(F("1/2"))
    assert lrmt_p(instance, pi, F(0)) == Lottery.point(min_max_p(instance, pi))
    assert lrmt_p(instance, pi, F("1/2")) == lrmt(instance)


def test_lrmt_p_mixes_with_min_max_p():
    lottery = lrmt_p(inst(0), Prediction(F(0)), F("1/4"))
    assert lottery.probability_of(Placement.at(F(0))) == F("1/2")
    assert lottery.probability_of(Placement.at(F("1/3"))) == F("1/2")
    assert expected_value(lottery, inst(0), MU) == F("5/6")


def test_rand_ends_on_three_agents():
    instance = inst(0, "1/2", 1)
    lottery = rand_ends(instance)
    assert lottery.probability_of(Placement.at(F(0), F(1))) == F("1/2")
    assert lottery.probability_of(Placement.at(F("1/2"), F("1/2"))) == F("1/6")
    assert lottery.probability_of(Placement.at(F("1/4"), F("3/4"))) == F("1/3")
    assert expected_value(lottery, instance, MD) == F("5/12")
    assert expected_value(lottery, instance, MU) == F("7/12")


def test_rand_ends_degenerates_on_a_single_agent():
    lottery = rand_ends(inst("2/5"))
    assert lottery == Lottery.point(Placement.at(F("2/5"), F("2/5")))


@given(locations)
def test_rand_ends_expected_distance_is_five_thirds_of_the_optimum(values):
    instance = make_instance(values)
    d = opt_two(instance).opt_max_distance
    lottery = rand_ends(instance)
    assert expected_value(lottery, instance, MD) == 5 * d / 3
    assert expected_value(lottery, instance, MU) == (3 - 5 * d) / 3


@given(locations)
def test_rand_ends_stays_inside_the_extremes(values):
    instance = make_instance(values)
    for placement, _ in rand_ends(instance).outcomes:
        for f in placement.facilities:
            assert instance.leftmost <= f <= instance.rightmost


def test_rand_ends_2p_endpoints():
    instance, pair = inst(0, "1/2", 1), PredictionPair.of(F("1/4"), F(1))
    assert rand_ends_2p(instance, pair, F(0)) == Lottery.point(min_max_2p(instance, pair))
    assert rand_ends_2p(instance, pair, F("1/2")) == rand_ends(instance)


def test_parameter_checks():
    with pytest.raises(InvalidDelta):
        lrm_p(inst(0), Prediction(F(0)), F("3/5"))
    with pytest.raises(InvalidTheta):
        rand_ends_2p(inst(0), PredictionPair.of(F(0), F(1)), F(-1))


def test_lottery_is_canonical():
    a, b = Placement.at(F(0)), Placement.at(F(1))
    lottery = Lottery.from_weights([(b, F("1/4")), (a, F("1/4")), (b, F("1/2")), (a, F(0))])
    assert lottery.outcomes == ((a, F("1/4")), (b, F("3/4")))


def test_lottery_must_sum_to_one():
    with pytest.raises(InvalidLottery):
        Lottery.from_weights([(Placement.at(F(0)), F("1/2"))])
    with pytest.raises(InvalidLottery):
        Lottery(())


def test_expected_cost_of_one_agent():
    assert expected_cost(lrm(inst(0, 1)), F(0)) == F("1/2")

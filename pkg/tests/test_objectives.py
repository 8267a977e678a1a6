from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import F, inst
from facility_lens.core.domain.errors import EmptyInstance, InvalidBand, OutOfRange
from facility_lens.core.domain.models import Bound, Objective, OptimumReport, Placement
from facility_lens.core.domain.rational import (
    format_both,
    format_decimal,
    format_rational,
    parse_rational,
    parse_rational_list,
)
from facility_lens.core.objectives import (
    agent_cost,
    approximation_ratio,
    evaluate,
    farthest_distance,
    make_instance,
    max_distance,
    opt_single,
    opt_two,
    truncate,
)

unit = st.fractions(min_value=0, max_value=1, max_denominator=24)
locations = st.lists(unit, min_size=1, max_size=6)


def test_make_instance_sorts_reports():
    assert inst("1", "0", "1/2").agents == (F(0), F("1/2"), F(1))


def test_make_instance_rejects_empty_and_out_of_range():
    with pytest.raises(EmptyInstance):
        make_instance([])
    with pytest.raises(OutOfRange):
        make_instance(["1/2", "3/2"])
    with pytest.raises(TypeError):
        make_instance([0.5])


def test_parse_rational_reads_decimals_exactly():
    assert parse_rational("0.1") == Fraction(1, 10)
    assert parse_rational_list("0, 1/3, 0.25") == [F(0), F("1/3"), F("1/4")]
    with pytest.raises(ValueError):
        parse_rational("abc")


def test_formatting():
    assert format_rational(F("3/2")) == "3/2"
    assert format_decimal(F("2/3")) == "0.666667"
    assert format_both(F("9/7")) == "9/7 (1.285714)"
    assert format_both(None) == "inf"


def test_agent_cost_is_distance_to_the_nearest_facility():
    assert agent_cost(F("1/4"), Placement.at(F(1))) == F("3/4")
    assert agent_cost(F("1/4"), Placement.at(F(0), F(1))) == F("1/4")
    assert agent_cost(F("1/2"), Placement.at(F("1/2"), F(1))) == 0


def test_opt_single_serves_the_midpoint():
    opt = opt_single(inst(0, "1/2", 1))
    assert opt.placement == Placement.at(F("1/2"))
    assert opt.opt_max_distance == F("1/2")
    assert opt.opt_min_utility == F("1/2")


def test_opt_two_splits_into_two_clusters():
    opt = opt_two(inst(0, "1/4", "3/4", 1))
    assert opt.placement == Placement.at(F("1/8"), F("7/8"))
    assert opt.opt_max_distance == F("1/8")


def test_opt_two_prefers_the_leftmost_split_on_ties():
    opt = opt_two(inst(0, "1/2", 1))
    assert opt.opt_max_distance == F("1/4")
    assert opt.placement == Placement.at(F(0), F("3/4"))


def test_opt_two_single_agent_and_pair():
    assert opt_two(inst("1/3")).placement == Placement.at(F("1/3"), F("1/3"))
    opt = opt_two(inst(0, 1))
    assert opt.placement == Placement.at(F(0), F(1))
    assert opt.opt_max_distance == 0
    assert opt.opt_min_utility == 1


def test_max_distance_uses_the_nearest_facility():
    instance = inst(0, "1/2", 1)
    assert max_distance(instance, Placement.at(F("1/4"))) == F("3/4")
    assert max_distance(instance, Placement.at(F(0), F(1))) == F("1/2")
    assert evaluate(instance, Placement.at(F("1/2")), Objective.MIN_UTILITY) == F("1/2")


@given(locations, st.lists(unit, min_size=1, max_size=2))
def test_farthest_distance_matches_every_agent(values, facilities):
    instance = make_instance(values)
    placement = Placement.at(*facilities)
    expected = max(agent_cost(x, placement) for x in instance.agents)
    assert farthest_distance(instance.agents, placement.facilities) == expected


@given(st.lists(st.integers(0, 60), min_size=1, max_size=6), st.integers(0, 60), st.integers(0, 60))
def test_farthest_distance_on_scaled_integers(agents, a, b):
    agents = sorted(agents)
    expected = max(min(abs(x - a), abs(x - b)) for x in agents)
    assert farthest_distance(agents, sorted((a, b))) == expected
    assert farthest_distance(agents, (a,)) == max(abs(x - a) for x in agents)


def _brute_force_two(agents):
    best = None
    for sides in product((0, 1), repeat=len(agents)):
        groups = [[a for a, s in zip(agents, sides) if s == side] for side in (0, 1)]
        d = max(((max(g) - min(g)) / 2 for g in groups if g), default=Fraction(0))
        best = d if best is None else min(best, d)
    return best


@given(locations)
def test_opt_two_matches_brute_force(values):
    instance = make_instance(values)
    assert opt_two(instance).opt_max_distance == _brute_force_two(list(instance.agents))


@given(locations)
def test_opt_two_never_exceeds_a_quarter_of_the_spread(values):
    instance = make_instance(values)
    assert 4 * opt_two(instance).opt_max_distance <= instance.rightmost - instance.leftmost


@given(unit, unit, unit)
def test_truncate_is_idempotent_and_inside_the_band(x, a, b):
    lo, hi = min(a, b), max(a, b)
    y = truncate(x, lo, hi)
    assert lo <= y <= hi
    assert truncate(y, lo, hi) == y


@given(unit, unit, unit, unit)
def test_truncate_is_monotone(x, z, a, b):
    lo, hi = min(a, b), max(a, b)
    low, high = min(x, z), max(x, z)
    assert truncate(low, lo, hi) <= truncate(high, lo, hi)


def test_truncate_rejects_an_empty_band():
    with pytest.raises(InvalidBand):
        truncate(F("1/2"), F("3/4"), F("1/4"))


def test_ratio_on_a_zero_optimum():
    zero = OptimumReport(Placement.at(F(0)), F(0), F(1))
    assert approximation_ratio(F(0), zero, Objective.MAX_DISTANCE) == Bound.of(1)
    assert approximation_ratio(F("1/4"), zero, Objective.MAX_DISTANCE).is_unbounded


def test_ratio_on_zero_utility_is_unbounded():
    opt = OptimumReport(Placement.at(F("1/2")), F("1/2"), F("1/2"))
    assert approximation_ratio(F(0), opt, Objective.MIN_UTILITY).is_unbounded
    assert approximation_ratio(F("1/4"), opt, Objective.MIN_UTILITY) == Bound.of(2)


def test_bounds_order_with_infinity_on_top():
    assert Bound.of(2) < Bound.unbounded()
    assert not Bound.unbounded() < Bound.of(100)
    assert Bound(F("3/2")).render() == "3/2"
    assert Bound.unbounded().render() == "inf"

import pytest

from conftest import F, spec
from facility_lens.core.analysis.properties import check_pareto, check_unanimity
from facility_lens.core.analysis.strategyproof import check_strategyproof
from facility_lens.core.domain.config import SearchConfig
from facility_lens.core.domain.errors import UnknownFamily
from facility_lens.core.domain.models import Instance, Violation
from facility_lens.core.services.sp_service import Property, PropertyService


PARAMS = ("0", "1/4", "1/2")

STRATEGYPROOF = [
    ("minmaxp", None),
    ("midornearest", None),
    ("leftmost", None),
    ("rightmost", None),
    ("median", None),
    ("lrm", None),
    ("lrmt", None),
    ("randends", None),
    ("minmax2p", None),
    *(("minmaxp-gamma", g) for g in PARAMS),
    *(("lrmp", d) for d in PARAMS),
    *(("lrmtp", d) for d in PARAMS),
    *(("randends2p", t) for t in PARAMS),
    *(("minmax2p-lambda", lam) for lam in ("0", "1/8", "1/4")),
]


@pytest.mark.parametrize("family, param", STRATEGYPROOF)
def test_no_profitable_misreport(family, param):
    config = SearchConfig(grid_resolution=10, max_agents=3, prediction_resolution=2)
    assert check_strategyproof(spec(family, param), config) == []


@pytest.mark.slow
@pytest.mark.parametrize("family, param", STRATEGYPROOF)
def test_no_profitable_misreport_on_the_full_grid(family, param):
    config = SearchConfig(grid_resolution=20, max_agents=3)
    assert check_strategyproof(spec(family, param), config) == []


@pytest.mark.parametrize("phantoms", [("1/10", "7/10"), ("1/4", "3/4")])
def test_gen_median_is_strategyproof(small_grid, phantoms):
    assert check_strategyproof(spec("genmedian", phantoms=phantoms), small_grid) == []


def test_broken_third_is_manipulable(small_grid):
    violations = check_strategyproof(spec("broken-third"), small_grid)
    expected = Violation(
        instance=Instance((F(0), F("9/10"))),
        agent=1,
        misreport=F(1),
        cost_before=F("3/5"),
        cost_after=F("17/30"),
    )
    assert expected in violations
    assert all(v.cost_after < v.cost_before for v in violations)


def test_violations_come_back_in_a_stable_order(tiny_grid):
    violations = check_strategyproof(spec("broken-third"), tiny_grid)
    keys = [(v.instance.agents, v.agent, v.misreport) for v in violations]
    assert keys == sorted(keys)
    parallel = check_strategyproof(spec("broken-third"), tiny_grid.model_copy(update={"workers": 2}))
    assert parallel == violations


def test_truncated_lrm_is_not_unanimous(small_grid):
    violations = check_unanimity(spec("lrmt"), small_grid)
    assert violations
    assert all(v.kind == "unanimity" for v in violations)
    assert any(v.instance == Instance((F(0),)) for v in violations)


@pytest.mark.parametrize("family, param", [("minmaxp", None), ("lrm", None), ("randends", None), ("minmax2p", None)])
def test_unanimity_holds(small_grid, family, param):
    assert check_unanimity(spec(family, param), small_grid) == []


@pytest.mark.parametrize("family, param", [("broken-third", None), ("minmaxp-gamma", "1/2"), ("leftmost", None)])
def test_pareto_holds_for_single_facility_rules(small_grid, family, param):
    assert check_pareto(spec(family, param), small_grid) == []


def test_pareto_check_needs_a_deterministic_single_facility():
    config = SearchConfig(grid_resolution=4, max_agents=2)
    with pytest.raises(UnknownFamily):
        check_pareto(spec("lrm"), config)
    with pytest.raises(UnknownFamily):
        check_pareto(spec("minmax2p"), config)


def test_property_service_dispatches(tiny_grid):
    service = PropertyService()
    assert service.check(spec("lrmt"), tiny_grid, Property.UNANIMITY)
    assert service.check(spec("median"), tiny_grid, Property.PARETO) == []
    assert service.check(spec("broken-third"), tiny_grid)

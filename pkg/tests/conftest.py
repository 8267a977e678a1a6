from fractions import Fraction

import logfire
import pytest

from facility_lens.core.domain.config import MechanismSpec, SearchConfig
from facility_lens.core.objectives import make_instance

logfire.configure(send_to_logfire=False, console=False)


def F(text) -> Fraction:
    return Fraction(text)


def inst(*agents):
    return make_instance(Fraction(a) for a in agents)


def spec(family, param=None, phantoms=None) -> MechanismSpec:
    return MechanismSpec(family=family, param=param, phantoms=phantoms)


@pytest.fixture
def small_grid() -> SearchConfig:
    """Default test grid: step 1/10, at most three agents."""
    return SearchConfig(grid_resolution=10, max_agents=3)


@pytest.fixture
def tiny_grid() -> SearchConfig:
    return SearchConfig(grid_resolution=5, max_agents=3, prediction_resolution=2)

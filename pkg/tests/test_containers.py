import pytest

from conftest import F
from facility_lens.core.containers import Container
from facility_lens.core.services.table_service import TableService


def _container(**values) -> Container:
    container = Container()
    container.config.from_dict(
        {"resolution": 7, "workers": 3, "divergence": "50", "sp_prediction_resolution": 2, **values}
    )
    return container


def test_search_config_reads_environment_defaults():
    config = _container().search_config()
    assert config.grid_resolution == 7
    assert config.workers == 3
    assert config.divergence_threshold == F(50)
    assert config.prediction_resolution == 2


def test_unset_cli_options_keep_environment_defaults():
    config = _container().search_config(grid_resolution=None, workers=None, max_agents=2)
    assert config.grid_resolution == 7
    assert config.workers == 3
    assert config.max_agents == 2


def test_cli_options_win_over_environment():
    config = _container().search_config(grid_resolution=12, workers=1, tolerance="1/10")
    assert config.grid_resolution == 12
    assert config.workers == 1
    assert config.tolerance == F("1/10")


def test_table_service_shares_one_ledger():
    container = _container()
    first, second = container.table_service(), container.table_service()
    assert isinstance(first, TableService)
    assert first is not second
    assert first.ledger is second.ledger


def test_load_environment_names_a_bad_variable(monkeypatch):
    monkeypatch.setenv("FM_WORKERS", "two")
    with pytest.raises(ValueError, match="FM_WORKERS must be an integer"):
        Container.load_environment(Container())

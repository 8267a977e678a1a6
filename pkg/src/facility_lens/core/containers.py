from dependency_injector import containers, providers

ENVIRONMENT = {
    "resolution": ("FM_RESOLUTION", int, 20),
    "workers": ("FM_WORKERS", int, 1),
    "divergence": ("FM_DIVERGENCE", str, "100"),
    "sp_prediction_resolution": ("FM_SP_PREDICTION_RESOLUTION", int, 4),
}


class Container(containers.DeclarativeContainer):
    """DI container for core components."""

    config = providers.Configuration()

    @staticmethod
    def load_environment(container: "Container"):
        """Populate ``config`` from the FM_* environment variables."""
        for key, (var, cast, default) in ENVIRONMENT.items():
            try:
                getattr(container.config, key).from_env(var, default=default, as_=cast)
            except ValueError as e:
                raise ValueError(f"{var} must be an integer: {e}") from e

    @staticmethod
    def _create_search_config(
        env_resolution=None, env_workers=None, env_divergence=None, env_prediction_resolution=None, **overrides
    ):
        """Environment defaults; keyword overrides use SearchConfig field names and skip None."""
        from .domain.config import SearchConfig

        values = {
            "grid_resolution": env_resolution,
            "workers": env_workers,
            "divergence_threshold": env_divergence,
            "prediction_resolution": env_prediction_resolution,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return SearchConfig(**{k: v for k, v in values.items() if v is not None})

    @staticmethod
    def _create_run_service():
        from .services.run_service import RunService

        return RunService()

    @staticmethod
    def _create_ratio_service():
        from .services.ratio_service import RatioService

        return RatioService()

    @staticmethod
    def _create_property_service():
        from .services.sp_service import PropertyService

        return PropertyService()

    @staticmethod
    def _create_sweep_service():
        from .services.sweep_service import SweepService

        return SweepService()

    @staticmethod
    def _create_table_ledger():
        from .planning.ledger import TableLedger

        return TableLedger()

    @staticmethod
    def _create_table_service(ledger):
        from .services.table_service import TableService

        return TableService(ledger)

    search_config = providers.Factory(
        _create_search_config,
        env_resolution=config.resolution,
        env_workers=config.workers,
        env_divergence=config.divergence,
        env_prediction_resolution=config.sp_prediction_resolution,
    )

    run_service = providers.Factory(_create_run_service)
    ratio_service = providers.Factory(_create_ratio_service)
    property_service = providers.Factory(_create_property_service)
    sweep_service = providers.Factory(_create_sweep_service)

    table_ledger = providers.Singleton(_create_table_ledger)
    table_service = providers.Factory(_create_table_service, ledger=table_ledger)

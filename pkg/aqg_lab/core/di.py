from concurrent.futures import ProcessPoolExecutor

from dependency_injector import containers, providers

from .settings import settings


class Container(containers.DeclarativeContainer):
    """Dependency injection container."""

    app_settings = providers.Object(settings)

    # Sweep cells are CPU bound, so they run in worker processes
    sweep_executor = providers.Singleton(
        ProcessPoolExecutor,
        max_workers=settings.sweep_workers,
    )

from iurlab.algorithms.base import (
    ALGORITHM_IDS,
    ConfigError,
    OptimizerConfig,
    create_optimizer,
    events_of,
    run,
)
from iurlab.algorithms import random_search, es, swarm, de  # noqa: F401  (registration)

__all__ = [
    "ALGORITHM_IDS",
    "ConfigError",
    "OptimizerConfig",
    "create_optimizer",
    "events_of",
    "run",
]

# -*- coding: utf-8 -*-

"""
Runtime configuration.

Values come from the environment (POSITROIDS_* variables), optionally
seeded from a .env file in the working directory. Command-line flags
override them.
"""

import logging
import os
from dataclasses import dataclass, replace
from functools import lru_cache

from dotenv import load_dotenv


logger = logging.getLogger(__name__)

PREFIX = "POSITROIDS_"


@dataclass(frozen=True)
class Settings:
    """
    Attributes:
        search_budget (int): visited partial orders allowed per component.
        seed (int): seed for randomized commands and sweeps.
        n_jobs (int): joblib workers for sweeps.
        log_level (str): logging level name for entry points.
        results_dir (str): where sweep CSVs are written.
    """

    search_budget: int = 10 ** 7
    seed: int = 42
    n_jobs: int = 1
    log_level: str = "WARNING"
    results_dir: str = os.path.join("data", "results")

    def override(self, **values):
        """Copy with every non-None value replaced."""
        return replace(
            self, **{k: v for k, v in values.items() if v is not None}
        )


def _read(name, cast, default):
    raw = os.environ.get(PREFIX + name.upper())
    if raw is None or raw == "":
        return default
    try:
        return cast(raw)
    except ValueError:
        logger.warning(f"Ignoring {PREFIX}{name.upper()}={raw!r}")
        return default


@lru_cache(maxsize=1)
def get_settings():
    """
    Settings from .env and the environment, loaded once.

    Returns:
        Settings
    """
    load_dotenv()
    defaults = Settings()
    return Settings(
        search_budget=_read("search_budget", int, defaults.search_budget),
        seed=_read("seed", int, defaults.seed),
        n_jobs=_read("n_jobs", int, defaults.n_jobs),
        log_level=_read("log_level", str, defaults.log_level).upper(),
        results_dir=_read("results_dir", str, defaults.results_dir),
    )

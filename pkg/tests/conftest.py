# -*- coding: utf-8 -*-

"""
Shared fixtures: the catalogue matroids and a seeded generator.
"""

import numpy as np
import pytest

from src.config.settings import get_settings
from src.data.catalog import (
    four_triangles,
    four_triangles_truncated,
    k4,
)
from src.data.constructors import uniform, whirl
from src.models.orders import LinearOrder


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    for name in ("SEARCH_BUDGET", "SEED", "N_JOBS", "LOG_LEVEL",
                 "RESULTS_DIR"):
        monkeypatch.delenv(f"POSITROIDS_{name}", raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def u24():
    return uniform(2, 4)


@pytest.fixture
def m_k4():
    return k4()


@pytest.fixture
def whirl3():
    return whirl(3)


@pytest.fixture
def triangles():
    """Parallel connection of four triangles: rank 5 on 1..9."""
    return four_triangles()


@pytest.fixture
def triangles_rank4():
    return four_triangles_truncated(4)


@pytest.fixture
def natural9():
    return LinearOrder(tuple(str(i) for i in range(1, 10)))

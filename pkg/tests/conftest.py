"""Shared fixtures."""

from __future__ import annotations

import numpy as np
import pytest

from src.config import RunConfig
from tests.helpers import G


@pytest.fixture
def config() -> RunConfig:
    return RunConfig(g=G)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)

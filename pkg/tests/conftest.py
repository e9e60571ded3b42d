import numpy as np
import pytest

from abacus.core.config import settings
from abacus.services.cache import clear_caches


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(autouse=True)
def _fresh_caches():
    clear_caches()
    yield
    clear_caches()


@pytest.fixture
def override_settings(monkeypatch):
    """Temporarily change budget or tolerance fields on the global settings."""

    def _set(**values):
        for name, value in values.items():
            monkeypatch.setattr(settings, name, value)

    return _set

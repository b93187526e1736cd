"""Shared pytest configuration."""

import pytest
from hypothesis import HealthCheck, settings

from chibound.config import get_settings

# Exact searches have uneven running times; per-example deadlines only add flakiness.
settings.register_profile("chibound", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("chibound")


@pytest.fixture(autouse=True)
def clear_settings_cache():
    """Clear the settings cache before and after each test to ensure test isolation."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()

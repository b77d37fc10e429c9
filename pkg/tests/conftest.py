"""Shared fixtures for the rectvar tests."""

import os

import pytest

from rectvar import config

_ENV_VARS = (config.PARTITION_CAP_ENV_VAR, config.EXACT_CAP_ENV_VAR)


@pytest.fixture(autouse=True)
def _restore_config():
    """Put the cap overrides and the check tolerance back after every test."""
    saved = {var: os.environ.get(var) for var in _ENV_VARS}
    tolerance = config.get_check_tolerance()
    yield
    for var, value in saved.items():
        if value is None:
            os.environ.pop(var, None)
        else:
            os.environ[var] = value
    config.set_check_tolerance(tolerance)

"""Test configuration defaults and environment overrides."""

import os

import pytest

from rectvar import config
from rectvar.errors import ConfigError


def test_defaults(monkeypatch):
    monkeypatch.delenv(config.PARTITION_CAP_ENV_VAR, raising=False)
    monkeypatch.delenv(config.EXACT_CAP_ENV_VAR, raising=False)
    assert config.get_partition_cap() == config.DEFAULT_PARTITION_CAP
    assert config.get_exact_cap() == config.DEFAULT_EXACT_CAP


def test_env_override(monkeypatch):
    monkeypatch.setenv(config.PARTITION_CAP_ENV_VAR, "9")
    monkeypatch.setenv(config.EXACT_CAP_ENV_VAR, " ")
    assert config.get_partition_cap() == 9
    assert config.get_exact_cap() == config.DEFAULT_EXACT_CAP


@pytest.mark.parametrize("raw", ["many", "0", "-3"])
def test_bad_env_values(monkeypatch, raw):
    """Non-integer or non-positive overrides are configuration errors."""
    monkeypatch.setenv(config.PARTITION_CAP_ENV_VAR, raw)
    with pytest.raises(ConfigError):
        config.get_partition_cap()


def test_setters(monkeypatch):
    """Setters write the environment override read by the getters."""
    monkeypatch.setenv(config.EXACT_CAP_ENV_VAR, str(config.DEFAULT_EXACT_CAP))
    monkeypatch.setenv(config.PARTITION_CAP_ENV_VAR, str(config.DEFAULT_PARTITION_CAP))
    config.set_exact_cap(5)
    assert config.get_exact_cap() == 5
    with pytest.raises(ConfigError):
        config.set_partition_cap(0)


def test_check_tolerance():
    saved = config.get_check_tolerance()
    try:
        config.set_check_tolerance(1e-6)
        assert config.get_check_tolerance() == 1e-6
        with pytest.raises(ConfigError):
            config.set_check_tolerance(1.5)
    finally:
        config.set_check_tolerance(saved)


def test_setters_leave_no_override(monkeypatch):
    """Setting a cap inside a test does not leak into the next one."""
    monkeypatch.delenv(config.EXACT_CAP_ENV_VAR, raising=False)
    config.set_exact_cap(5)


def test_exact_cap_is_default_again():
    """Runs after the test above: the cap it set is gone."""
    assert config.EXACT_CAP_ENV_VAR not in os.environ
    assert config.get_exact_cap() == config.DEFAULT_EXACT_CAP

"""Configuration and worker fan-out tests."""
import os
import sys

import pytest

# Add project root to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from app.core import config
from app.core.errors import ConfigError, ForgeError, InputError
from app.core.workers import chunked, ordered_map


def test_config_reads_every_setting_from_env():
    """Every setting comes from a MATROID_FORGE_* variable with a default."""
    config_path = os.path.join(os.path.dirname(__file__), "..", "app", "core", "config.py")
    with open(config_path) as f:
        source = f.read()
    for name in ("JOBS", "MAX_UNKNOWNS", "MAX_FIELD_ORDER", "LOG_LEVEL"):
        assert f'os.getenv("MATROID_FORGE_{name}"' in source, f"{name} should be read from the environment"
    assert "load_dotenv()" in source


def test_defaults():
    if not os.getenv("MATROID_FORGE_MAX_UNKNOWNS"):
        assert config.MAX_UNKNOWNS == 12
    if not os.getenv("MATROID_FORGE_MAX_FIELD_ORDER"):
        assert config.MAX_FIELD_ORDER == 121


def test_resolve_jobs_flag_wins(monkeypatch):
    monkeypatch.setenv("MATROID_FORGE_JOBS", "4")
    assert config.resolve_jobs(2) == 2
    assert config.resolve_jobs(0) == 1


def test_resolve_jobs_reads_env_at_call_time(monkeypatch):
    monkeypatch.setenv("MATROID_FORGE_JOBS", "3")
    assert config.resolve_jobs() == 3
    monkeypatch.setenv("MATROID_FORGE_JOBS", "not-a-number")
    with pytest.raises(ConfigError):
        config.resolve_jobs()


def test_error_detail_and_status():
    err = InputError("expected integers", "a.mat", 4)
    assert str(err) == "a.mat:4: expected integers"
    assert err.status_code == 2
    assert isinstance(err, ForgeError)
    assert ForgeError("boom", status_code=3).status_code == 3


def _square(x):
    return x * x


def test_ordered_map_keeps_input_order():
    items = list(range(20))
    assert ordered_map(_square, items, jobs=1) == [x * x for x in items]
    assert ordered_map(_square, items, jobs=2) == [x * x for x in items]


def test_chunked_is_contiguous():
    items = list(range(10))
    parts = chunked(items, 3)
    assert len(parts) == 3
    assert [x for p in parts for x in p] == items
    assert chunked(items, 1) == [items]

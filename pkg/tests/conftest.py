import pytest

from ratio_bounds.core.config import Config
from ratio_bounds.oracle.dispatch import OracleCache


@pytest.fixture
def cfg():
    return Config.oracle_config()


@pytest.fixture
def cache():
    return OracleCache()


@pytest.fixture(autouse=True)
def _clean_environment(monkeypatch):
    for name in (Config.DEPTH_ENV, Config.MAX_DEPTH_ENV, Config.TARGET_WIDTH_ENV, Config.WORKERS_ENV):
        monkeypatch.delenv(name, raising=False)

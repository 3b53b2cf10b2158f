"""Shared fixtures."""

import numpy as np
import pytest

from app.qmc import config, database, logger
from app.qmc.numeration import build_system
from app.qmc.partitions import LSParams


@pytest.fixture(autouse=True)
def _no_ledger(monkeypatch):
    """CLI runs in tests never touch the real run ledger."""
    monkeypatch.setattr(config, "RECORD_RUNS", False)


@pytest.fixture(autouse=True)
def _quiet_logging(monkeypatch):
    """main() must not attach handlers bound to a captured stream."""
    monkeypatch.setattr(logger, "_configured", True)


@pytest.fixture
def ledger(tmp_path, monkeypatch):
    """Path of an empty ledger file; backups land in tmp_path too."""
    path = tmp_path / "runs.yaml"
    monkeypatch.setattr(database, "DATA_DIR", tmp_path)
    monkeypatch.setattr(database, "RUNS_DB_PATH", path)
    yield path
    if database._db is not None:
        database._db.close()
        database._db = None


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def fibonacci():
    return build_system((1, 1))


@pytest.fixture
def golden():
    """LS(1,1) parameters, α = (√5 − 1)/2."""
    return LSParams(1, 1)

import sys
from pathlib import Path

import pytest


ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))


@pytest.fixture(autouse=True)
def _events_log(tmp_path, monkeypatch):
    path = tmp_path / "events.log"
    monkeypatch.setenv("SARSOLVE_EVENTS_LOG", str(path))
    return path


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run exhaustive searches marked slow")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive bounded search, skipped unless --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)

import os
import sys

import pytest

ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

from Caravan.CaravanParams import CCaravanParams  # noqa: E402
from System.Policy import seeded_policies  # noqa: E402


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the full experiment sweeps")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long experiment sweeps")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def uniform_policies(seed, n, lo, hi):
    return seeded_policies(seed, n, lambda rng: float(rng.uniform(lo, hi)))


@pytest.fixture
def interior_caravan():
    # participant (robot 0) sits between neighbours that stay ordered for 50 steps at speeds in [0, 1]
    return CCaravanParams(5, 0.0, 1.0, (0.0, -60.0, 60.0, -120.0, 120.0))


@pytest.fixture
def mid_primary():
    return CCaravanParams(3, 0.0, 1.0)


@pytest.fixture
def scenario_dir():
    return os.path.join(ROOT, "scenarios")

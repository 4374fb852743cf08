from __future__ import annotations

import sys
from importlib import resources
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from netcfg.config import load_topology
from netcfg.intent import load_dataset

# the first kernel call pays for JIT compilation, so wall-clock deadlines are noise
settings.register_profile("netcfg", deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
settings.load_profile("netcfg")

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"
# fixed epoch for byte-identical reruns
EPOCH = "1700000000"


def data_path(name: str) -> Path:
    return Path(str(resources.files("netcfg") / "data" / name))


@pytest.fixture(scope="session")
def baseline():
    return load_topology(data_path("topology.json"))


@pytest.fixture(scope="session")
def dataset():
    return load_dataset(data_path("intents.jsonl"))


@pytest.fixture
def frozen_clock(monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", EPOCH)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("tests.test_acceptance")
    if module is None:
        return
    terminalreporter.section("acceptance criteria")
    seen = {int(line.split()[2].rstrip(":")) for line in module.RESULTS}
    for line in sorted(module.RESULTS, key=lambda s: int(s.split()[2].rstrip(":"))):
        terminalreporter.write_line(line)
    for n in sorted(set(range(1, 8)) - seen):
        terminalreporter.write_line(f"SKIP criterion {n}: not run")

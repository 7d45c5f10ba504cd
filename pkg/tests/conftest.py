import numpy as np
import pytest

from hbar_dicke import load_fixture

ACCEPTANCE_RESULTS = []


@pytest.fixture(scope="session")
def device_a():
    return load_fixture("device_A.json")


@pytest.fixture(scope="session")
def device_b():
    return load_fixture("device_B.json")


@pytest.fixture(scope="session")
def table_clusters(device_a, device_b):
    return {c.name: c for c in device_a.clusters + device_b.clusters}


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")

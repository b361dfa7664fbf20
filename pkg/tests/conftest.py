import numpy as np
import pytest
from hypothesis import settings

from helpers import random_cube

settings.register_profile("repro", derandomize=True)
settings.load_profile("repro")


@pytest.fixture
def rng():
    return np.random.default_rng(20170710)


@pytest.fixture
def small_cube(rng):
    return random_cube(rng, 16)


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE

    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{name}: {'PASS' if ok else 'FAIL'} - {detail}")

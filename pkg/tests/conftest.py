import math

import numpy as np
import pytest

from squeezebounds.params import ModelParams

QUARTER = math.pi / 4


@pytest.fixture
def rng():
    return np.random.default_rng(20260916)


def point(**kw):
    return ModelParams(**kw)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number])

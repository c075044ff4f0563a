import math

import pytest

from phonon_designer.params import mechanical_baseline, microwave_baseline

TWO_PI = 2 * math.pi


@pytest.fixture
def mech():
    """Baseline mechanical design at N = 15."""
    return mechanical_baseline(15)


@pytest.fixture
def microwave():
    return microwave_baseline(8)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)

import math
import sys

import numpy as np
import pytest

from limacon.core import LimaconParams

MU_GRID = [-3.0, -1.0, -0.5, 0.0, 0.5, 1.0, 1.2, 3.0, 10.0]
F_GRID = [-2.0, 1.0]
SPIRAL_MUS = [-10.0, -3.0, -1.2, 1.2, 3.0, 10.0]


def param_samples(n=256):
    """Rational parameters spread over the whole line, including large |t|."""
    return np.tan(np.linspace(-0.5 * math.pi, 0.5 * math.pi, n + 2)[1:-1])


@pytest.fixture
def mu3():
    return LimaconParams(3.0, 1.0)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])

import math

import mpmath
import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")


def series_j(n, x, terms=60):
    """Power series oracle for J_n(x), n >= 0, in 40-digit arithmetic."""
    with mpmath.workdps(40):
        x = mpmath.mpf(x)
        s = mpmath.mpf(0)
        for m in range(terms):
            s += (-1) ** m * (x / 2) ** (2 * m + n) / (mpmath.factorial(m) * mpmath.factorial(m + n))
        return float(s)


def mp_j(n, x):
    with mpmath.workdps(40):
        return float(mpmath.besselj(n, x))


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(12345)


TWO_PI = 2 * math.pi


def series_tol(x):
    """Absolute error budget of the power series: cancellation grows like e^{|x|/2}."""
    return 1e-15 * max(1.0, math.exp(abs(x) / 2))


# PASS/FAIL lines from the acceptance suite, echoed in the terminal summary
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)

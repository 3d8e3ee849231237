import random
from fractions import Fraction

import pytest

from qes_nbody import EXACT, ScalarMode

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria:")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line("  " + line)


@pytest.fixture
def exact():
    return EXACT


@pytest.fixture
def f128():
    return ScalarMode.floating(128)


def rel_err(x, y) -> float:
    """Relative deviation of two Scalars/floats, safe at y = 0."""
    fx, fy = float(x), float(y)
    return abs(fx - fy) / max(1.0, abs(fy))


def rational_panel(seed: int, count: int, positive: bool = False):
    """Deterministic pseudo-random Fractions for parameter panels."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        num = rng.randint(1 if positive else -24, 24)
        den = rng.randint(1, 16)
        if num == 0 and positive:
            continue
        out.append(Fraction(num, den))
    return out

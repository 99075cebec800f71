import cmath
from fractions import Fraction

import pytest
from hypothesis import settings

# first calls may include JIT compilation
settings.register_profile("exact", deadline=None)
settings.load_profile("exact")


def to_complex(x):
    """Numerical value of a CyclotomicNumber at exp(2 pi i / N)."""
    z = cmath.exp(2j * cmath.pi / x.N)
    return sum(float(c) * z**i for i, c in enumerate(x.coeffs))


def root(N):
    return cmath.exp(2j * cmath.pi / N)


@pytest.fixture
def points():
    return [Fraction(2, 3), Fraction(5, 7), Fraction(3, 2)]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

import random
from fractions import Fraction

import pytest
from hypothesis import settings

from genforms.exterior import Chart
from genforms.suites import Generator

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def chart2():
    return Chart(2)


@pytest.fixture
def chart3():
    return Chart(3)


def make_gen(seed, n=2, k=1, max_degree=2, max_terms=3):
    return Generator(random.Random(seed), Chart(n, Fraction(k)), max_degree, max_terms)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

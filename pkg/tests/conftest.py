import random
from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from awcalc.awops import AwContext
from awcalc.qcore import XPoly

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def xpolys(draw, max_degree=4, nonzero=True):
    deg = draw(st.integers(0, max_degree))
    cs = draw(st.lists(small_rationals, min_size=deg + 1, max_size=deg + 1))
    if nonzero and all(c == 0 for c in cs):
        cs[-1] = Fraction(1)
    return XPoly(cs)


def random_xpoly(rng: random.Random, max_degree=6, nonzero=True) -> XPoly:
    deg = rng.randint(0, max_degree)
    cs = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(deg + 1)]
    if nonzero and all(c == 0 for c in cs):
        cs[-1] = Fraction(1)
    return XPoly(cs)


@pytest.fixture
def ctx():
    return AwContext.from_s("1/2")


@pytest.fixture
def rng():
    return random.Random(20240611)


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: dict = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from nokcert.exact import Polynomial

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
nonzero_rationals = small_rationals.filter(lambda x: x != 0)


@st.composite
def polynomials(draw, max_degree=5):
    coeffs = draw(st.lists(small_rationals, max_size=max_degree + 1))
    return Polynomial(coeffs)


@st.composite
def intervals(draw):
    a = draw(small_rationals)
    w = draw(st.fractions(min_value=0, max_value=10, max_denominator=8))
    return a, a + w


def F(x):
    return Fraction(x)


@pytest.fixture
def repo_root():
    from pathlib import Path

    return Path(__file__).resolve().parents[1]


ACCEPTANCE_LINES = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

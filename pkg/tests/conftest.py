from fractions import Fraction

import pytest
from hypothesis import strategies as st

from gegenkit.poly import Poly

GRID = ["1/2", "1", "3/2", "2", "5/2", "7/3"]

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=12)


@st.composite
def polys(draw, max_degree=6):
    coeffs = draw(st.lists(small_fractions, min_size=0, max_size=max_degree + 1))
    return Poly(coeffs)


@st.composite
def lambdas(draw):
    """Admissible orders: rational, > -1/2, nonzero."""
    q = draw(st.fractions(min_value=Fraction(-4, 9), max_value=6, max_denominator=9))
    if q == 0:
        q = Fraction(1, 3)
    return q


@pytest.fixture(params=GRID)
def grid_lambda(request):
    return Fraction(request.param)


ACCEPTANCE_RESULTS: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        status, title, elapsed, budget = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{status}] {key}. {title} ({elapsed:.2f}s, budget {budget:g}s)")

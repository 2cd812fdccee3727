from fractions import Fraction

from hypothesis import settings, strategies as st

from appellpoly.poly import Poly
from appellpoly.series import Series

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=12)


@st.composite
def polys(draw, max_degree=5):
    return Poly(draw(st.lists(small_fracs, max_size=max_degree + 1)))


@st.composite
def unit_series(draw, order=6):
    """Rational series with constant term 1."""
    tail = draw(st.lists(small_fracs, min_size=order, max_size=order))
    return Series([Fraction(1)] + tail, "Q")


# acceptance lines collected by test_acceptance.py, echoed after the run
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])

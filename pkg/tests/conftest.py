import warnings

import pytest
from hypothesis import strategies as st

from hketools import SetSystem

TRIPLE = [{1, 5, 6, 7}, {2, 4, 6, 7}, {3, 4, 5, 7}]
TRIANGLE = [{1, 2}, {2, 3}, {3, 1}]

ACCEPTANCE_LINES: list[str] = []


@st.composite
def families(draw, max_members=6, max_ground=8):
    n = draw(st.integers(1, max_ground))
    sets = draw(
        st.lists(st.frozensets(st.integers(1, n)), min_size=1, max_size=max_members)
    )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return SetSystem.from_sets(sets, ground=range(1, n + 1))


@pytest.fixture
def triple():
    return SetSystem.from_sets(TRIPLE)


@pytest.fixture
def triangle():
    return SetSystem.from_sets(TRIANGLE)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

import pytest
from hypothesis import strategies as st

from jacquet import CuspidalLine, Multisegment, Segment

RHO = CuspidalLine("rho", 1)


def seg(a, b, line=RHO):
    return Segment(line, a, b)


def ms(*pairs, line=RHO):
    return Multisegment(Segment(line, a, b) for a, b in pairs)


@pytest.fixture
def rho():
    return RHO


LINES = [CuspidalLine("rho", 1), CuspidalLine("sigma", 2), CuspidalLine("tau", 3)]


@st.composite
def segments(draw, lines=LINES, lo=-3, hi=6):
    line = draw(st.sampled_from(lines))
    a = draw(st.integers(lo, hi))
    b = draw(st.integers(a, hi))
    return Segment(line, a, b)


def multisegments(max_r=4, lines=LINES, lo=-3, hi=6):
    return st.lists(segments(lines, lo, hi), min_size=1, max_size=max_r).map(Multisegment)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)

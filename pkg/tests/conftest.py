import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from vspan import parse_gauss  # noqa: E402

TREFOIL = "O1+U2+O3+U1+O2+U3+"
HOPF = "O1+U2+ ; U1+O2+"
VHOPF = "O1+ ; U1+"
VTREFOIL = "O1+O2+U1+U2+"
FIGURE_EIGHT = "O1+U2+O3-U4-O2+U1+O4-U3-"
KINK = "O1+U1+"

# filled by the acceptance suite, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def trefoil():
    return parse_gauss(TREFOIL)


@pytest.fixture
def hopf():
    return parse_gauss(HOPF)


@pytest.fixture
def vhopf():
    return parse_gauss(VHOPF)


@pytest.fixture
def vtrefoil():
    return parse_gauss(VTREFOIL)

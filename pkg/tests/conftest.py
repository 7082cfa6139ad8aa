from pathlib import Path

import pytest

from hilbmat.grid import parse_config
from hilbmat.matrix import as_delta, parse_matrix

FIXTURES = Path(__file__).parent / "fixtures"

# lines printed by the acceptance suite, echoed in the terminal summary
ACCEPTANCE_LINES = []


def load_matrix(name):
    return parse_matrix((FIXTURES / name).read_text())


def load_delta(name):
    return as_delta(load_matrix(name))


def load_config(name):
    return parse_config((FIXTURES / name).read_text())


@pytest.fixture
def ex2():
    return load_delta("ex2.delta")


@pytest.fixture
def ex1():
    return load_delta("ex1.matrix")


@pytest.fixture
def ex1_z():
    return load_config("ex1-z.config")


@pytest.fixture
def ex0_y():
    return load_delta("ex0-1.matrix")


@pytest.fixture
def ex0_generic():
    return load_delta("ex0-2.matrix")


@pytest.fixture
def ex0_blocks():
    return load_delta("ex0-3.matrix")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

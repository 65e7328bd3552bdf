import pytest

from graphdecode import build_code, cycle_graph

CODE_PARAMS = {
    "c5": (5, range(1, 6)),
    "c9": (9, range(1, 10)),
    "c11": (11, range(1, 12)),
    "c11q": (11, range(3, 12)),
}


def make_code(key):
    n, lx = CODE_PARAMS[key]
    return build_code(cycle_graph(n), lx)


@pytest.fixture(scope="session")
def codes():
    return {k: make_code(k) for k in CODE_PARAMS}


@pytest.fixture(scope="session")
def c5(codes):
    return codes["c5"]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

import pytest

from lvpaths.fixtures import ACADEMIC_CONFIG, academic_network
from lvpaths.ilp import build_problem
from lvpaths.matrices import build_matrices
from lvpaths.search import generate_candidates

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def academic():
    net = academic_network()
    cands = generate_candidates(net, ACADEMIC_CONFIG)
    M = build_matrices(cands.paths, net)
    return net, cands, M, build_problem(M)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

import pytest

from cbgfvs.graph import BipartiteGraph, complete_bipartite, cycle_graph, path_graph


@pytest.fixture
def p4():
    return path_graph(4)


@pytest.fixture
def c4():
    return cycle_graph(4)


@pytest.fixture
def c6():
    return cycle_graph(6)


@pytest.fixture
def k33():
    return complete_bipartite(3, 3)


@pytest.fixture
def star3():
    """K_{1,3} with the centre on side A."""
    return complete_bipartite(1, 3)


def matching(k):
    return BipartiteGraph(k, k, [(i, i) for i in range(k)])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

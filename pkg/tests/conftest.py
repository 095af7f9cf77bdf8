"""Shared fixtures and the acceptance summary printed at the end of a run."""

import pytest

from ad2pd.graph import MultiDigraph, MultiGraph

ACCEPTANCE_LINES: list[str] = []


def digraph(*arcs, n=None):
    if n is None:
        n = 1 + max((max(a) for a in arcs), default=-1)
    return MultiDigraph(n, tuple(arcs))


def graph(*edges, n=None):
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return MultiGraph(n, tuple(edges))


def dcycle(n):
    return digraph(*[(i, (i + 1) % n) for i in range(n)])


def ucycle(n):
    return graph(*[(i, (i + 1) % n) for i in range(n)])


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

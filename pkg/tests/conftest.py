import itertools

import pytest

from hamindex.graph import Graph

# lines printed in the terminal summary by the acceptance suite
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


def cycle(n):
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def path(edges):
    """Path with the given number of edges."""
    return Graph(range(edges + 1), [(i, i + 1) for i in range(edges)])


def star(k):
    return Graph(range(k + 1), [(0, i) for i in range(1, k + 1)])


def complete(n):
    return Graph(range(n), list(itertools.combinations(range(n), 2)))


def spider(leg, legs=3):
    """Star with ``legs`` legs, each a path of ``leg`` edges from center 0."""
    edges = []
    nxt = 1
    for _ in range(legs):
        prev = 0
        for _ in range(leg):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(range(nxt), edges)


def theta(*lengths):
    """Two vertices 0 and 1 joined by internally disjoint paths of the given lengths."""
    edges = []
    nxt = 2
    for ln in lengths:
        prev = 0
        for _ in range(ln - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph(range(nxt), edges)


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(range(10), outer + spokes + inner)


def degree_multiset(g):
    return sorted(g.degree(v) for v in g.vertices)


@pytest.fixture
def rng():
    import random
    return random.Random(20261015)

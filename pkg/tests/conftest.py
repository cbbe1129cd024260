import random

import pytest

from zplap.matrix import SpSymMatrix

ACCEPTANCE_LINES = []


def random_laplacian(rng, n, p, density=0.6, unit=False):
    L = SpSymMatrix(n, p)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                L.add_edge(i, j, 1 if unit else rng.randrange(1, p))
    return L


def random_connected_laplacian(rng, n, p, extra=0.4, unit=False):
    L = SpSymMatrix(n, p)
    for v in range(1, n):
        L.add_edge(v, rng.randrange(v), 1 if unit else rng.randrange(1, p))
    for i in range(n):
        for j in range(i + 1, n):
            if L.get(i, j) == 0 and rng.random() < extra:
                L.add_edge(i, j, 1 if unit else rng.randrange(1, p))
    return L


def random_dense(rng, m, n, p, density=0.7):
    return [[rng.randrange(1, p) if rng.random() < density else 0 for _ in range(n)] for _ in range(m)]


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(set(ACCEPTANCE_LINES), key=lambda s: int(s.split()[2].rstrip(':'))):
            terminalreporter.write_line(line)

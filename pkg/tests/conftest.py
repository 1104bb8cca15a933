import pytest

from matchcut.graph import build_graph

ACCEPTANCE: dict = {}


def complete_bipartite(r: int, s: int):
    return build_graph(r + s, [(u, r + v) for u in range(r) for v in range(s)])


def path(n: int):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves: int):
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def cube():
    return build_graph(8, [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)])


def complete(n: int):
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


@pytest.fixture
def q3():
    return cube()


@pytest.fixture
def k33():
    return complete_bipartite(3, 3)


@pytest.fixture
def p4():
    return path(4)


@pytest.fixture
def c4():
    return cycle(4)


@pytest.fixture
def c6():
    return cycle(6)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")

import pytest

from pqkverify.pqalg import canonical_triple


@pytest.fixture(scope="session")
def t1():
    return canonical_triple(1)


@pytest.fixture(scope="session")
def t2():
    return canonical_triple(2)


@pytest.fixture(scope="session")
def ctx2():
    from pqkverify.rigidity import context

    return context(2)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

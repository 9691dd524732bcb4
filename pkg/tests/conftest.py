import pytest

from gassmann.catalog import (alternating, cyclic, dihedral, fano_stabilizers,
                              frobenius20, quaternion, standard_corpus,
                              symmetric)

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance():
    """Recorder for per-criterion pass/fail lines, printed at the end."""
    def record(line: str) -> None:
        ACCEPTANCE_LINES.append(line)
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def s3():
    return symmetric(3)


@pytest.fixture(scope="session")
def s4():
    return symmetric(4)


@pytest.fixture(scope="session")
def a4():
    return alternating(4)


@pytest.fixture(scope="session")
def d4():
    return dihedral(4)


@pytest.fixture(scope="session")
def d6():
    return dihedral(6)


@pytest.fixture(scope="session")
def q8():
    return quaternion()


@pytest.fixture(scope="session")
def c6():
    return cyclic(6)


@pytest.fixture(scope="session")
def f20():
    return frobenius20()


@pytest.fixture(scope="session")
def fano():
    """(GL(3,2), point stabilizer, hyperplane stabilizer)."""
    return fano_stabilizers()


@pytest.fixture(scope="session")
def corpus60():
    return standard_corpus(60)

import pytest

from esbch.bch import build_code
from esbch.galois import GaloisField

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def code_15_7():
    return build_code(GaloisField(4), 2)


@pytest.fixture(scope="session")
def code_31_16():
    return build_code(GaloisField(5), 3)


@pytest.fixture(scope="session")
def code_63_45():
    return build_code(GaloisField(6), 3)


@pytest.fixture(scope="session")
def code_16383():
    return build_code(GaloisField(14), 72)


@pytest.fixture
def record_criterion():
    """Log a pass/fail line for an acceptance criterion, printed at session end."""

    def record(label, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

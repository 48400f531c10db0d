import pytest

from zetalab.zero_finder import scan_and_refine

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def zeros78():
    """The first 20 zeros, scanned with the default step and tolerance."""
    return scan_and_refine(0.0, 78.0)


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

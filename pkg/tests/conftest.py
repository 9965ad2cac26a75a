import pytest

from chordknots.chord_core import enumerate_up_to


@pytest.fixture(scope="session")
def corpus3():
    return enumerate_up_to(3)


@pytest.fixture(scope="session")
def corpus4():
    return enumerate_up_to(4)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

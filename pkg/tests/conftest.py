import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rcds.graph import cycle_graph  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def c6():
    return cycle_graph(6)


@pytest.fixture
def report():
    """Record one acceptance line; shown again in the terminal summary."""
    def emit(line: str) -> None:
        print(line)
        ACCEPTANCE_LINES.append(line)
    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fcc import table_function  # noqa: E402

_CRITERIA = []


def record_criterion(name, ok, detail=""):
    _CRITERIA.append((name, ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _CRITERIA:
        line = f"{'PASS' if ok else 'FAIL'}  {name}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)


@pytest.fixture
def or2():
    """f(00) = 0, f(01) = f(10) = f(11) = 1."""
    return table_function(2, [0, 1], [0, 1, 1, 1])


@pytest.fixture
def bad_table():
    """Order A < B < C; the radius-1 ball of 00 is {A, C}."""
    return table_function(2, ["A", "B", "C"], ["A", "C", "C", "B"])

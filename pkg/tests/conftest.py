import json
from pathlib import Path

import pytest

ORACLES = Path(__file__).parent / "oracles" / "moment_oracles.json"


@pytest.fixture(scope="session")
def oracles():
    data = json.loads(ORACLES.read_text())
    return {kind: {float(z): [complex(*p) for p in pair] for z, pair in table.items()}
            for kind, table in data.items()}


ACCEPTANCE_LINES = {}


def record_acceptance(number, title, passed, detail):
    ACCEPTANCE_LINES[number] = f"criterion {number:2d} [{'PASS' if passed else 'FAIL'}] {title}: {detail}"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])

from pathlib import Path

import pytest

from dlmeta import parse_theory

ROOT = Path(__file__).resolve().parent.parent
THEORIES = ROOT / "theories"
FIXTURES = Path(__file__).resolve().parent / "fixtures"
LOGICS = ROOT / "src" / "dlmeta" / "logics"


def load_theory(name):
    return parse_theory((THEORIES / name).read_text())


@pytest.fixture(scope="session")
def tweety():
    return load_theory("tweety.dfl")


@pytest.fixture(scope="session")
def self_loop():
    return load_theory("self_loop.dfl")


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE, key=lambda l: int(l.split()[1])):
        terminalreporter.write_line(line)

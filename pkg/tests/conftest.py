from __future__ import annotations

import random

import pytest

from canalyzer.core import TruthTable

# Criterion lines recorded by the acceptance suite; echoed after the run so
# they are visible even without -s.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def all_arity3():
    return [TruthTable(3, fid) for fid in range(256)]


@pytest.fixture(scope="session")
def random_tables():
    def make(arity: int, count: int, seed: int) -> list[TruthTable]:
        rng = random.Random(seed)
        return [TruthTable(arity, rng.getrandbits(1 << arity)) for _ in range(count)]

    return make

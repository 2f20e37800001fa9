import itertools

import pytest

from codemetro.codes import concatenate_repetition, from_generator, reed_muller, repetition
from codemetro.shorten import ErasurePattern


@pytest.fixture(scope="session")
def rm13():
    code = from_generator(reed_muller(1, 3))
    code.origin = "RM(1,3)"
    return code


@pytest.fixture(scope="session")
def rm13_r2(rm13):
    return concatenate_repetition(rm13, 2)


@pytest.fixture
def ghz():
    return repetition


def all_patterns(n, max_t):
    for t in range(max_t + 1):
        for idx in itertools.combinations(range(n), t):
            yield ErasurePattern(n, idx)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def record(label, ok, detail=""):
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else ""))
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

import pytest

from meshct import tilting as tl
from meshct.dynkin import folding_datum
from meshct.linalg import FP32003, RATIONALS
from meshct.translation import fold

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def b3_pres():
    return fold(folding_datum("b3"))


@pytest.fixture(scope="session")
def b3_start(b3_pres):
    return tl.start_module(b3_pres, RATIONALS)


@pytest.fixture(scope="session")
def b3_mutated(b3_start):
    return tl.mutate(b3_start, "{1,2}_1", seed=0)


@pytest.fixture(scope="session")
def start_modules():
    cache = {}

    def get(tag, field=RATIONALS):
        key = (tag, field.name)
        if key not in cache:
            cache[key] = tl.start_module(fold(folding_datum(tag)), field)
        return cache[key]

    return get


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import ACCEPTANCE_LINES, glued_k43, path_triples, two_triples  # noqa: E402

from hyperconn import gen_complete, gen_fano  # noqa: E402

@pytest.fixture
def k43():
    return gen_complete(4, 3)


@pytest.fixture
def fano():
    return gen_fano()


@pytest.fixture
def glued():
    return glued_k43()


@pytest.fixture
def split():
    return two_triples()


@pytest.fixture
def chain():
    return path_triples()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

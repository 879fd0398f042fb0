import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tischler.polyhedra import builtin_graph  # noqa: E402
from tischler.tischler import validate  # noqa: E402

ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture(scope="session")
def k4():
    return builtin_graph("k4")


@pytest.fixture(scope="session")
def theta():
    return builtin_graph("theta")


@pytest.fixture(scope="session")
def fig6():
    return builtin_graph("fig6")


@pytest.fixture(scope="session")
def prism():
    return builtin_graph("prism")


@pytest.fixture(scope="session")
def tk4(k4):
    return validate(k4)


@pytest.fixture(scope="session")
def tfig6(fig6):
    return validate(fig6)

import random

import gmpy2
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from blockinv import Quaternion, QuaternionRing
from blockinv.demo_data import example_matrix, example_perturbation

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

rationals = st.builds(gmpy2.mpq, st.integers(-6, 6), st.integers(1, 4))
quaternions = st.builds(Quaternion, rationals, rationals, rationals, rationals)
nonzero_quaternions = quaternions.filter(lambda q: q.norm2() != 0)
seeds = st.integers(0, 2**32 - 1)


def q(text):
    return Quaternion.parse(text)


@pytest.fixture
def ring():
    return QuaternionRing()


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def example():
    return example_matrix()


@pytest.fixture(scope="session")
def perturbation():
    return example_perturbation()


# one summary line per acceptance criterion
_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion this test decides")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    _criteria[marker.args[0]] = "PASS" if call.excinfo is None else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: int(s.split()[0][2:])):
        terminalreporter.write_line(f"{_criteria[label]}  {label}")

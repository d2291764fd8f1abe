import numpy as np
import pytest
from hypothesis import settings, strategies as st

from bvlab.clifford_core import default_basis

settings.register_profile("bvlab", deadline=None, max_examples=40, derandomize=True)
settings.load_profile("bvlab")

#: hypothesis strategy producing seeds for numpy generators
seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


@pytest.fixture
def rng():
    return np.random.default_rng(20261014)


@pytest.fixture(scope="session")
def basis():
    return default_basis()


#: one summary line per acceptance criterion, filled by test_acceptance.py
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from arrangements.datasets import DATASETS, load_dataset
from arrangements.scalars import complex_root, ff_make, nf_make, real_root, unique_real_root

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

W_POLY = (-26, 7, 1)  # x^2 + 7x - 26
Z_POLY = (-7, -1, 3, 1)  # x^3 + 3x^2 - x - 7
I_POLY = (1, 0, 1)

F19 = ff_make(19)
F8 = ff_make(2, 3)
QW = nf_make(W_POLY, real_root(1))
QW_NEG = nf_make(W_POLY, real_root(0))
QZ = nf_make(Z_POLY, unique_real_root())
QI = nf_make(I_POLY, complex_root(1))

small_fraction = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def finite_elements(F):
    return st.integers(0, F.q - 1).map(lambda v: F.elements()[v])


def nf_elements(K):
    return st.lists(small_fraction, min_size=K.degree, max_size=K.degree).map(K.from_coeffs)


@pytest.fixture(scope="session")
def a22_pos():
    return load_dataset("a22_4_pos")


@pytest.fixture(scope="session")
def a22_neg():
    return load_dataset("a22_4_neg")


@pytest.fixture(scope="session")
def a26():
    return load_dataset("a26_4")


@pytest.fixture(scope="session")
def a23():
    return load_dataset("a23_4")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)

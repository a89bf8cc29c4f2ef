import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from euler_zeta._backend import BACKEND_ENV, HAVE_NUMBA
from euler_zeta.exact import ComplexRational

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=50)
gaussian = st.builds(ComplexRational, rationals, rationals)


def random_unit_disc(rng: random.Random, den: int = 12) -> ComplexRational:
    """A random Gaussian rational with modulus at most 1."""
    while True:
        z = ComplexRational(Fraction(rng.randint(-den, den), den), Fraction(rng.randint(-den, den), den))
        if z.norm() <= 1:
            return z


@pytest.fixture
def rng():
    return random.Random(1729)


BACKENDS = ["numpy"] + (["numba"] if HAVE_NUMBA else [])


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run the test once per available kernel backend."""
    monkeypatch.setenv(BACKEND_ENV, request.param)
    return request.param


def valid_sigma(spec, scale: float = 2.0):
    """A point with ``<c_l, sigma> > 1`` for every rank of every builtin."""
    import numpy as np

    return np.full(spec.dimension, scale)


# acceptance lines, printed after the run whatever the capture mode
ACCEPTANCE_LINES = {}


def record_acceptance(number: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])

from fractions import Fraction

import pytest

from polarsym.channel import make_bec, make_bsc


@pytest.fixture(scope="session")
def bsc():
    return make_bsc(Fraction(1, 3))


@pytest.fixture(scope="session")
def bec():
    return make_bec(Fraction(1, 2))

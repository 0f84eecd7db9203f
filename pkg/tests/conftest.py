import numpy as np
import pytest

from ddvv.matrix_core import SymTuple

A_PAIR = np.array([[0.0, 1.0], [1.0, 0.0]])
B_PAIR = np.array([[1.0, 0.0], [0.0, -1.0]])


@pytest.fixture
def equality_pair():
    return SymTuple([A_PAIR, B_PAIR])


@pytest.fixture
def rng():
    return np.random.default_rng(20071208)


def random_sym(rng, n, m=None):
    shape = (n, n) if m is None else (m, n, n)
    g = rng.standard_normal(shape)
    return 0.5 * (g + np.swapaxes(g, -1, -2))

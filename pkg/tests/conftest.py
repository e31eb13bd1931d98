import numpy as np
import pytest

from supercurv.grassmann import DEFAULT_ALGEBRA, odd_algebra
from supercurv.jet import Jet2


@pytest.fixture
def p():
    return 0.7 + 0.4j


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def theta_algebra():
    return DEFAULT_ALGEBRA


@pytest.fixture
def eps_algebra():
    return odd_algebra(1)


def random_jet(rng, p, orders, scale=1.0, body=None):
    shape = (orders[0] + 1, orders[1] + 1)
    c = scale * (rng.normal(size=shape) + 1j * rng.normal(size=shape))
    if body is not None:
        c[0, 0] = body
    return Jet2(p, c)


def assert_jets_close(a, b, atol=1e-12):
    assert a.orders == b.orders
    np.testing.assert_allclose(a.coeffs, b.coeffs, rtol=0, atol=atol)

import pytest

from pyintertwine.fixtures import u_pair as build_u_pair
from pyintertwine.intertwine import derive_params, construct_intertwine


@pytest.fixture
def u_pair():
    return build_u_pair()


@pytest.fixture
def flagship_params(u_pair):
    m1, m2 = u_pair
    return derive_params(m1, [], m2, [], 5)


@pytest.fixture
def flagship(flagship_params):
    return construct_intertwine(flagship_params)

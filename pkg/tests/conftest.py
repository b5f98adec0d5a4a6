from itertools import product

import pytest

from cfcolour.geometry import interval_hypergraph, random_point_set
from cfcolour.hypergraph import validate
from cfcolour.models import Hypergraph, PointSet


def brute_force_chi(hypergraph: Hypergraph, notion, t=None) -> int:
    """Smallest k such that some colouring from {1..k}^n passes `validate`."""
    for k in range(1, hypergraph.n + 1):
        for colours in product(range(1, k + 1), repeat=hypergraph.n):
            if validate(hypergraph, colours, notion, t):
                return k
    return 0


@pytest.fixture
def triangle() -> Hypergraph:
    return Hypergraph(n=3, hyperedges=[[0, 1, 2]])


@pytest.fixture
def intervals7() -> Hypergraph:
    return interval_hypergraph(7)


@pytest.fixture
def diagonal3() -> PointSet:
    return PointSet(points=[(1, 1), (2, 2), (3, 3)])


@pytest.fixture(params=[1, 2, 3])
def seeded_points(request) -> PointSet:
    return random_point_set(8, request.param)


@pytest.fixture
def brute_chi():
    return brute_force_chi

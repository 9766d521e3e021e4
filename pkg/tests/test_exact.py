import random

import networkx as nx
import pytest
from hypothesis import given

from dynmatch.exact import (
    TooLarge,
    brute_force_matching,
    has_augmenting_path,
    maximum_matching,
)
from dynmatch.graph import Graph, Matching

from .conftest import graphs, random_graph


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


@pytest.mark.parametrize(
    "g, size",
    [
        (Graph(3, [(0, 1), (1, 2), (0, 2)]), 1),
        (Graph(4, [(0, 1), (1, 2), (2, 3)]), 2),
        (Graph(0), 0),
        (Graph(5), 0),
        (Graph(2, [(0, 1)]), 1),
        (Graph(5, [(u, v) for u in range(5) for v in range(u + 1, 5)]), 2),
    ],
)
def test_known_sizes(g, size):
    assert maximum_matching(g).size == size
    assert brute_force_matching(g) == size


def test_petersen_against_brute_force():
    g = petersen()
    assert brute_force_matching(g) == 5
    assert maximum_matching(g).size == 5


def test_brute_force_limit():
    with pytest.raises(TooLarge):
        brute_force_matching(Graph(17))


def test_deterministic_output():
    g = random_graph(60, 0.08, 3)
    assert maximum_matching(g).matching.edges == maximum_matching(g).matching.edges


def test_warm_start_from_any_matching():
    g = random_graph(80, 0.06, 5)
    init = Matching([g.edges()[0]])
    assert maximum_matching(g, init=init).size == maximum_matching(g).size


@given(graphs(max_n=10))
def test_blossom_equals_brute_force(g):
    res = maximum_matching(g)
    assert res.size == brute_force_matching(g)
    assert res.matching.is_valid_in(g)
    assert not has_augmenting_path(g, res.matching)


@pytest.mark.parametrize("seed", range(20))
def test_blossom_matches_networkx_medium(seed):
    rng = random.Random(seed)
    n = rng.randint(20, 120)
    g = random_graph(n, rng.uniform(0.02, 0.15), seed)
    ref = nx.Graph()
    ref.add_nodes_from(range(n))
    ref.add_edges_from(g.edges())
    assert maximum_matching(g).size == len(nx.max_weight_matching(ref, maxcardinality=True))

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dynmatch.exact import maximum_matching
from dynmatch.graph import Graph, Matching
from dynmatch.local import (
    LocalMatcher,
    LocalParams,
    explore_ball,
    reference_from_graph,
    reference_matching,
)
from dynmatch.oracle import GMMOracle
from dynmatch.streaming import kb_ceil, union_graph

from .conftest import random_graph

A, B, C, D = 0, 1, 2, 3


def maximal(g: Graph) -> Matching:
    m = Matching()
    for u, v in g.edges():
        if not m.is_matched(u) and not m.is_matched(v):
            m.add(u, v)
    return m


def path_setup():
    g = Graph(4, [(A, B), (B, C), (C, D)])
    m = Matching([(B, C)])
    return g, m, GMMOracle(g, m, 1, 3, seed=0)


def test_params():
    p = LocalParams.make(Fraction(1, 3))
    assert (p.ell, p.d) == (5, 6)
    assert p.guarantee == Fraction(3, 4)
    with pytest.raises(ValueError):
        LocalParams.make(1)


def test_ball_isolated_vertex():
    g = Graph(5, [(0, 1)])
    o = GMMOracle(g, Matching([(0, 1)]), 1, 3, 0)
    ball = explore_ball(4, 3, o.b_edges_of, o.m)
    assert ball.vertices == {4} and ball.edges == set() and ball.closed


def test_ball_on_path():
    _, m, o = path_setup()
    ball = explore_ball(A, 3, o.b_edges_of, m)
    assert ball.vertices == {A, B, C, D}
    assert ball.edges == {(A, B), (B, C), (C, D)}
    ball = explore_ball(A, 1, o.b_edges_of, m)
    assert ball.vertices == {A, B} and ball.edges == {(A, B)} and not ball.closed


def test_path_all_matched_after_augmentation():
    _, _, o = path_setup()
    lm = LocalMatcher(o, LocalParams.make(Fraction(1, 3)))
    assert all(lm.matched_status(v) for v in range(4))
    assert lm.partner(A) == B and lm.partner(C) == D


def test_triangle_two_of_three():
    g = Graph(3, [(0, 1), (1, 2), (0, 2)])
    o = GMMOracle(g, Matching([(0, 1)]), 1, 3, 0)
    lm = LocalMatcher(o, LocalParams.make(0.25))
    assert sum(lm.matched_status(v) for v in range(3)) == 2


def test_isolated_false():
    g = Graph(3, [(0, 1)])
    o = GMMOracle(g, Matching([(0, 1)]), 1, 3, 0)
    assert not LocalMatcher(o, LocalParams.make(0.25)).matched_status(2)


def test_reference_eliminates_short_paths():
    # path 2-0-1-3: lexicographic greedy takes the middle edge (0, 1) and a
    # length-3 augmenting path replaces it by the two outer edges
    edges = [(0, 1), (0, 2), (1, 3)]
    assert reference_matching(range(4), edges, ell=1).edges == [(0, 1)]
    assert reference_matching(range(4), edges, ell=3).edges == [(0, 2), (1, 3)]


def _instance(seed):
    rng = random.Random(seed)
    g = random_graph(rng.randint(10, 60), rng.uniform(0.05, 0.2), seed)
    m = maximal(g)
    k = rng.randint(1, 3)
    o = GMMOracle(g, m, k, kb_ceil(k), seed)
    return g, m, o


@pytest.mark.parametrize("seed", range(10))
def test_global_consistency_and_approximation(seed):
    g, m, o = _instance(seed)
    params = LocalParams.make(Fraction(1, 4))
    lm = LocalMatcher(o, params)
    u = union_graph(g.n, m, o.b_matching())
    ref = reference_from_graph(u, params.ell)
    assert {v for v in range(g.n) if lm.matched_status(v)} == ref.vertices()
    for v in range(g.n):
        assert lm.partner(v) == ref.partner(v)
    assert len(ref) >= params.guarantee * maximum_matching(u).size


@pytest.mark.parametrize("seed", range(10))
def test_answer_depends_only_on_own_ball(seed):
    # the answer at v is recomputed from the closed ball around v alone,
    # with every edge outside the ball removed
    g, m, o = _instance(seed)
    params = LocalParams.make(Fraction(1, 4))
    lm = LocalMatcher(o, params)
    u = union_graph(g.n, m, o.b_matching())
    for v in range(g.n):
        d = params.d
        while not (ball := explore_ball(v, d, adjacency=u.neighbors)).closed:
            d *= 2
        alone = reference_matching(ball.vertices, ball.edges, params.ell)
        assert alone.partner(v) == lm.partner(v)
        if d == params.d:
            # the fixed radius already closes the component
            assert max(ball.dist.values()) <= params.d


@given(st.integers(0, 10**6), st.integers(2, 30))
def test_reference_is_valid_and_deterministic(seed, n):
    g = random_graph(n, 0.2, seed)
    a = reference_from_graph(g, 5)
    assert a.is_valid_in(g) and a.is_maximal_in(g)
    assert a.edges == reference_from_graph(g, 5).edges
    # no augmenting path of length <= 5 leaves at most a 3/4 gap
    assert len(a) >= Fraction(3, 4) * maximum_matching(g).size

from fractions import Fraction

import pytest
from hypothesis import given

from dynmatch.graph import (
    BMatching,
    BipartiteView,
    DuplicateEdge,
    FractionalMatching,
    Graph,
    GraphError,
    InvalidVertex,
    Matching,
    MissingEdge,
    SelfLoop,
)

from .conftest import graphs, update_sequences

A, B, C, D = 0, 1, 2, 3


def test_single_insertion():
    g = Graph(3)
    g.insert_edge(0, 1)
    assert g.neighbor_set(0) == {1}
    assert g.neighbor_set(1) == {0}
    assert g.neighbor_set(2) == set()


def test_duplicate_and_self_loop_rejected():
    g = Graph(3)
    g.insert_edge(0, 1)
    with pytest.raises(DuplicateEdge):
        g.insert_edge(1, 0)
    with pytest.raises(SelfLoop):
        g.insert_edge(2, 2)
    with pytest.raises(InvalidVertex):
        g.insert_edge(0, 3)


def test_insert_delete_inverse():
    g = Graph(3)
    g.insert_edge(0, 1)
    g.delete_edge(0, 1)
    assert g == Graph(3)
    with pytest.raises(MissingEdge):
        g.delete_edge(0, 2)


def test_triangle_minus_edge_is_path():
    g = Graph(3, [(0, 1), (1, 2), (0, 2)])
    g.delete_edge(0, 2)
    assert [g.degree(v) for v in range(3)] == [1, 2, 1]


def test_h_of_path_and_triangle():
    path = Graph(4, [(A, B), (B, C), (C, D)])
    h = BipartiteView(path, Matching([(B, C)]))
    assert h.oriented_edges() == [(B, A), (C, D)]
    tri = Graph(3, [(0, 1), (1, 2), (0, 2)])
    h = BipartiteView(tri, Matching([(0, 1)]))
    assert h.oriented_edges() == [(0, 2), (1, 2)]


def test_h_empty_for_perfect_matching():
    g = Graph(4, [(0, 1), (2, 3), (1, 2), (0, 3)])
    assert BipartiteView(g, Matching([(0, 1), (2, 3)])).edges() == []


def test_matching_rejects_shared_vertex():
    m = Matching([(0, 1)])
    with pytest.raises(GraphError):
        m.add(1, 2)


def test_bmatching_capacity():
    b = BMatching({0: 2, 1: 1, 2: 5})
    b.add(0, 2)
    b.add(0, 1)
    with pytest.raises(GraphError):
        b.add(0, 2)
    assert b.load(0) == 2 and b.residual(2) == 4
    b.check_invariants()


def test_fractional_vertex_constraint():
    x = FractionalMatching({(0, 1): Fraction(1, 2), (1, 2): Fraction(1, 2), (0, 2): Fraction(1, 2)})
    assert x.is_valid()
    x[(2, 3)] = Fraction(1, 4)
    assert x.vertex_load(2) == Fraction(5, 4)
    assert not x.is_valid()


@given(update_sequences())
def test_adjacency_symmetric_under_updates(ops):
    g = Graph(8)
    for kind, u, v in ops:
        (g.insert_edge if kind == "+" else g.delete_edge)(u, v)
        g.check_invariants()
    for u in range(8):
        for w in g.neighbors(u):
            assert u in g.neighbor_set(w)


@given(graphs(max_n=12))
def test_mate_is_involution(g):
    from dynmatch.exact import maximum_matching

    m = maximum_matching(g).matching
    for v in m.vertices():
        assert m.partner(m.partner(v)) == v

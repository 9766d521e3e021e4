import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dynmatch.exact import maximum_matching
from dynmatch.graph import BMatching, FractionalMatching, Graph, Matching
from dynmatch.oracle import GMMOracle
from dynmatch.streaming import StreamParams, pass1_maximal, two_pass
from dynmatch.surd import QSqrt2, TWO_MINUS_SQRT2
from dynmatch.verify import (
    InvalidInput,
    build_fractional,
    check_blossom,
    check_claims,
    connected_subsets,
    split_optimum,
    streaming_report,
)

from .conftest import random_graph

A, B, C, D = 0, 1, 2, 3


def path_build(k=1):
    g = Graph(4, [(A, B), (B, C), (C, D)])
    p = StreamParams.make("0.1", k)
    run = two_pass(4, [(B, C), (A, B), (C, D)], p)
    split = split_optimum(maximum_matching(g).matching, run.m)
    return run, split, p, build_fractional(run.m, run.b, split, p)


def test_path_fractional_values():
    run, split, p, fb = path_build(k=1)
    assert run.m.edges == [(B, C)] and p.kb_ceil == 3
    assert fb.x[(B, C)] == TWO_MINUS_SQRT2
    # residuals at b and a from the other B edges are both zero
    assert fb.t_at(B) - fb.t[(A, B)] == 0 and fb.t_at(A) - fb.t[(A, B)] == 0
    assert fb.t[(A, B)] == 1 and fb.x[(A, B)] == QSqrt2(Fraction(1, 3))
    assert fb.x.is_valid()


def test_empty_matching_gives_zero():
    p = StreamParams.make("0.1", 1)
    fb = build_fractional(Matching(), BMatching({}), split_optimum(Matching(), Matching()), p)
    assert fb.x.support() == []


def test_rejects_repeated_streaming_edges():
    m = Matching([(0, 1)])
    b = BMatching({0: 2, 2: 5})
    b.add(0, 2, 2)
    p = StreamParams.make("0.1", 2)
    with pytest.raises(InvalidInput):
        build_fractional(m, b, split_optimum(Matching([(0, 2)]), m), p)


def test_triangle_half_violates():
    x = FractionalMatching({(0, 1): Fraction(1, 2), (1, 2): Fraction(1, 2), (0, 2): Fraction(1, 2)})
    rep = check_blossom(x, Fraction(1, 5))
    assert not rep.ok
    assert [v[0] for v in rep.violations] == [(0, 1, 2)]


def test_zero_vector_has_no_violations():
    assert check_blossom(FractionalMatching({(0, 1): 0, (1, 2): 0, (0, 2): 0}), 0.1).ok


def test_connected_subsets_enumeration():
    adj = {0: {1}, 1: {0, 2}, 2: {1, 3}, 3: {2}}
    subs = {tuple(sorted(s)) for s in connected_subsets(adj, [0, 1, 2, 3], 3)}
    assert subs == {(0,), (1,), (2,), (3,), (0, 1), (1, 2), (2, 3), (0, 1, 2), (1, 2, 3)}


def test_path_claims_pass():
    run, split, p, fb = path_build(k=1)
    rep = check_claims(fb, run.m, split, p, final_size=run.size)
    assert rep.ok, rep.failures()
    assert {r.name for r in rep.results} >= {"x_on_M", "x_on_B", "total_weight"}
    assert all(r.slack >= 0 for r in rep.results)


def test_empty_graph_claims_trivial():
    rep, info = streaming_report(Graph(5), [], StreamParams.make("0.1"))
    assert rep.ok and info["size"] == 0
    assert all(r.slack == 0 for r in rep.results if r.name != "vertex_constraint")


@pytest.mark.parametrize("seed", range(100))
def test_random_instances_claims(seed):
    rng = random.Random(seed)
    n = rng.randint(6, 40)
    g = random_graph(n, rng.uniform(0.05, 0.35), seed)
    edges = g.edges()
    rng.shuffle(edges)
    # the claims are theorems once k reaches the default bound
    p = StreamParams.make("0.1", rng.choice([None, 500, 1000]))
    assert p.meets_bound
    rep, _ = streaming_report(g, edges, p)
    assert rep.ok, rep.failures()


@given(st.integers(0, 10**6), st.integers(2, 30), st.integers(1, 80))
def test_fractional_vertex_constraint(seed, n, k):
    g = random_graph(n, 0.3, seed)
    p = StreamParams.make("0.2", k)
    run = two_pass(n, g.edges(), p)
    split = split_optimum(maximum_matching(g).matching, run.m)
    fb = build_fractional(run.m, run.b, split, p)
    assert fb.x.is_valid()
    if p.meets_bound:
        assert check_blossom(fb.x.scaled(1 - p.eps), p.eps, classes=fb.classes()).ok


def test_blossom_needs_the_k_bound():
    # triangle hung off the matched edge: with k = 1 the B edges carry 1/3 each
    # and the scaled triangle weight exceeds 1; the default k keeps it below
    g = Graph(3, [(0, 1), (0, 2), (1, 2)])
    small = StreamParams.make("0.1", 1)
    rep, _ = streaming_report(g, g.edges(), small)
    assert "blossom" in rep.failures()
    rep, _ = streaming_report(g, g.edges(), StreamParams.make("0.1"))
    assert rep.ok


@pytest.mark.parametrize("seed", range(10))
def test_dynamic_build_value_caps(seed):
    g = random_graph(40, 0.15, seed)
    m = pass1_maximal(g.edges())
    p = StreamParams.make("0.25", 3)
    b = GMMOracle(g, m, p.k, p.kb_ceil, seed).b_matching()
    split = split_optimum(maximum_matching(g).matching, m)
    fb = build_fractional(m, b, split, p, dynamic=True)
    rep = check_claims(fb, m, split, p, blossom=False)
    caps = next(r for r in rep.results if r.name == "value_caps")
    assert caps.passed
    assert fb.x.is_valid()

from hypothesis import given

from dynmatch.dynamic import MaximalState
from dynmatch.events import UpdateEvent
from dynmatch.exact import maximum_matching
from dynmatch.generators import update_mix
from dynmatch.graph import Graph

from .conftest import update_sequences

A, B, C, D = 0, 1, 2, 3


def test_insert_cases():
    st = MaximalState(Graph(4))
    st.apply(UpdateEvent.insert(0, 1))
    assert st.m.edges == [(0, 1)]
    st.apply(UpdateEvent.insert(1, 2))
    assert st.m.edges == [(0, 1)]
    st.apply(UpdateEvent.insert(2, 3))
    st.apply(UpdateEvent.insert(0, 3))
    assert st.m.edges == [(0, 1), (2, 3)]


def test_delete_unmatched_edge_keeps_matching():
    st = MaximalState(Graph(3, [(0, 1), (1, 2)]))
    before = st.m.edges
    unmatched = next(e for e in [(0, 1), (1, 2)] if e not in before)
    st.apply(UpdateEvent.delete(*unmatched))
    assert st.m.edges == before


def test_delete_middle_of_path_repairs():
    st = MaximalState(Graph(4))
    for e in [(B, C), (A, B), (C, D)]:
        st.apply(UpdateEvent.insert(*e))
    assert st.m.edges == [(B, C)]
    st.apply(UpdateEvent.delete(B, C))
    assert st.m.edges == [(A, B), (C, D)]


def test_isolated_matched_edge_deleted():
    st = MaximalState(Graph(2, [(0, 1)]))
    st.apply(UpdateEvent.delete(0, 1))
    assert len(st.m) == 0 and st.free == {0, 1}


@given(update_sequences(n=9, max_len=150))
def test_maximal_after_every_update(ops):
    st = MaximalState(Graph(9))
    for kind, u, v in ops:
        st.apply(UpdateEvent.insert(u, v) if kind == "+" else UpdateEvent.delete(u, v))
        assert st.is_maximal()
        st.check_invariants()


def test_half_approximation_on_checkpoints():
    s = update_mix(60, 0.05, 2000, 0.4, seed=11)
    st = MaximalState(Graph(s.n))
    for i, ev in enumerate(s):
        st.apply(ev)
        if i % 97 == 0:
            assert 2 * len(st.m) >= maximum_matching(st.g).size

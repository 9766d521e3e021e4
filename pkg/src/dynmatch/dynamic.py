"""Exactly maximal matching under edge insertions and deletions.

Repair is O(deg): an insertion matches two free endpoints, a deletion of a
matched edge rematches each freed endpoint to its smallest free neighbor.
"""

from __future__ import annotations

from .events import DELETE, INSERT, UpdateEvent
from .graph import Graph, Matching


class MaximalState:
    def __init__(self, g: Graph):
        self.g = g
        self.m = Matching()
        self.free: set[int] = set(range(g.n))
        self.repairs = 0
        for u in range(g.n):
            if u in self.free:
                self._rematch(u)

    def _match(self, u: int, v: int) -> None:
        self.m.add(u, v)
        self.free.discard(u)
        self.free.discard(v)

    def _rematch(self, u: int) -> None:
        for w in self.g.neighbors(u):
            self.repairs += 1
            if w in self.free:
                self._match(u, w)
                return

    def on_insert(self, u: int, v: int) -> None:
        """Call after (u, v) was inserted into the graph."""
        if u in self.free and v in self.free:
            self._match(u, v)

    def on_delete(self, u: int, v: int) -> None:
        """Call after (u, v) was deleted from the graph."""
        if not self.m.contains(u, v):
            return
        self.m.remove(u, v)
        self.free.add(u)
        self.free.add(v)
        # a freed endpoint can only be blocked by its own neighbors, so one
        # scan per endpoint restores maximality
        self._rematch(min(u, v))
        self._rematch(max(u, v))

    def apply(self, ev: UpdateEvent) -> None:
        """Apply an event to both the graph and the matching."""
        if ev.kind == INSERT:
            self.g.insert_edge(*ev.edge)
            self.on_insert(*ev.edge)
        elif ev.kind == DELETE:
            self.g.delete_edge(*ev.edge)
            self.on_delete(*ev.edge)

    def is_maximal(self) -> bool:
        return all(u not in self.free or v not in self.free for u, v in self.g.edges())

    def check_invariants(self) -> None:
        self.m.check_invariants()
        if not self.m.is_valid_in(self.g):
            raise AssertionError("matching uses an edge absent from the graph")
        if self.free != set(range(self.g.n)) - self.m.vertices():
            raise AssertionError("free set out of sync with matching")
        if not self.is_maximal():
            raise AssertionError("matching is not maximal")

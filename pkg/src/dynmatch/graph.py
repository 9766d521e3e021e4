"""Core graph, matching and b-matching types.

Vertices are dense integers in ``[0, n)`` fixed at construction. Every
undirected edge is keyed by its canonical form ``(min(u, v), max(u, v))``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

Edge = tuple[int, int]


class GraphError(ValueError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class MissingEdge(GraphError):
    pass


class InvalidVertex(GraphError):
    pass


def canon(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Mutable undirected simple graph on a fixed vertex set.

    Neighbor sets are plain sets; ``neighbors`` returns them sorted so that
    every enumeration the algorithms rely on is deterministic.
    """

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        self.n = n
        self._adj: list[set[int]] = [set() for _ in range(n)]
        self._m = 0
        for u, v in edges:
            self.insert_edge(u, v)

    def _check_vertex(self, u: int) -> None:
        if not 0 <= u < self.n:
            raise InvalidVertex(f"vertex {u} outside [0, {self.n})")

    def insert_edge(self, u: int, v: int) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        if v in self._adj[u]:
            raise DuplicateEdge(f"edge {canon(u, v)} already present")
        self._adj[u].add(v)
        self._adj[v].add(u)
        self._m += 1

    def delete_edge(self, u: int, v: int) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        if v not in self._adj[u]:
            raise MissingEdge(f"edge {canon(u, v)} not present")
        self._adj[u].discard(v)
        self._adj[v].discard(u)
        self._m -= 1

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self._adj[u]

    def neighbors(self, u: int) -> list[int]:
        return sorted(self._adj[u])

    def neighbor_set(self, u: int) -> set[int]:
        # read-only view; callers must not mutate
        return self._adj[u]

    def degree(self, u: int) -> int:
        return len(self._adj[u])

    @property
    def num_edges(self) -> int:
        return self._m

    def edges(self) -> list[Edge]:
        """All edges in canonical form, sorted."""
        return [(u, v) for u in range(self.n) for v in sorted(self._adj[u]) if u < v]

    def copy(self) -> Graph:
        g = Graph(self.n)
        g._adj = [set(s) for s in self._adj]
        g._m = self._m
        return g

    def subgraph(self, edges: Iterable[Edge]) -> Graph:
        """Graph on the same vertex set with only the given edges (all must be present)."""
        h = Graph(self.n)
        for u, v in edges:
            if not self.has_edge(u, v):
                raise MissingEdge(f"edge {canon(u, v)} not present")
            if not h.has_edge(u, v):
                h.insert_edge(u, v)
        return h

    def check_invariants(self) -> None:
        count = 0
        for u in range(self.n):
            if u in self._adj[u]:
                raise AssertionError(f"self-loop at {u}")
            for v in self._adj[u]:
                if u not in self._adj[v]:
                    raise AssertionError(f"asymmetric adjacency {u}->{v}")
            count += len(self._adj[u])
        if count != 2 * self._m:
            raise AssertionError("edge count inconsistent with adjacency")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._adj == other._adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self._m})"


class Matching:
    """A set of vertex-disjoint edges with a mate lookup."""

    def __init__(self, edges: Iterable[Edge] = ()):
        self.mate: dict[int, int] = {}
        for u, v in edges:
            self.add(u, v)

    def add(self, u: int, v: int) -> None:
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        if u in self.mate or v in self.mate:
            raise GraphError(f"edge {canon(u, v)} shares an endpoint with the matching")
        self.mate[u] = v
        self.mate[v] = u

    def remove(self, u: int, v: int) -> None:
        if self.mate.get(u) != v:
            raise MissingEdge(f"edge {canon(u, v)} not in matching")
        del self.mate[u]
        del self.mate[v]

    def is_matched(self, u: int) -> bool:
        return u in self.mate

    def partner(self, u: int) -> int | None:
        return self.mate.get(u)

    def contains(self, u: int, v: int) -> bool:
        return self.mate.get(u) == v

    @property
    def edges(self) -> list[Edge]:
        return sorted((u, v) for u, v in self.mate.items() if u < v)

    def vertices(self) -> set[int]:
        return set(self.mate)

    def copy(self) -> Matching:
        m = Matching()
        m.mate = dict(self.mate)
        return m

    def __len__(self) -> int:
        return len(self.mate) // 2

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __contains__(self, e: object) -> bool:
        u, v = e  # type: ignore[misc]
        return self.contains(u, v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matching):
            return NotImplemented
        return self.mate == other.mate

    def __repr__(self) -> str:
        return f"Matching({self.edges})"

    def check_invariants(self) -> None:
        for u, v in self.mate.items():
            if self.mate.get(v) != u:
                raise AssertionError(f"mate is not an involution at {u}")
        if len(self.mate) % 2:
            raise AssertionError("odd number of matched vertices")

    def is_valid_in(self, g: Graph) -> bool:
        return all(g.has_edge(u, v) for u, v in self.edges)

    def is_maximal_in(self, g: Graph) -> bool:
        return all(u in self.mate or v in self.mate for u, v in g.edges())


@dataclass
class BMatching:
    """Edge multiset with per-vertex capacities.

    ``capacity`` maps every vertex that may carry edges to its bound; vertices
    absent from the map have capacity zero.
    """

    capacity: dict[int, int]
    multiplicity: dict[Edge, int] = field(default_factory=dict)
    _load: dict[int, int] = field(default_factory=dict, repr=False)

    def load(self, u: int) -> int:
        return self._load.get(u, 0)

    def residual(self, u: int) -> int:
        return self.capacity.get(u, 0) - self.load(u)

    def add(self, u: int, v: int, count: int = 1) -> None:
        if count <= 0:
            raise GraphError("multiplicity increment must be positive")
        if self.residual(u) < count or self.residual(v) < count:
            raise GraphError(f"adding {count} x {canon(u, v)} exceeds a capacity")
        e = canon(u, v)
        self.multiplicity[e] = self.multiplicity.get(e, 0) + count
        self._load[u] = self.load(u) + count
        self._load[v] = self.load(v) + count

    def edges(self) -> list[Edge]:
        return sorted(self.multiplicity)

    def incident(self, u: int) -> list[tuple[Edge, int]]:
        return [(e, c) for e, c in sorted(self.multiplicity.items()) if u in e]

    def total(self) -> int:
        return sum(self.multiplicity.values())

    def __len__(self) -> int:
        return len(self.multiplicity)

    def __contains__(self, e: object) -> bool:
        u, v = e  # type: ignore[misc]
        return canon(u, v) in self.multiplicity

    def check_invariants(self) -> None:
        load: dict[int, int] = {}
        for (u, v), c in self.multiplicity.items():
            if c <= 0:
                raise AssertionError(f"non-positive multiplicity on {(u, v)}")
            load[u] = load.get(u, 0) + c
            load[v] = load.get(v, 0) + c
        for u, total in load.items():
            if total > self.capacity.get(u, 0):
                raise AssertionError(f"capacity exceeded at {u}: {total} > {self.capacity.get(u, 0)}")


class FractionalMatching:
    """Edge weights in [0, 1]. Weights may be floats, Fractions or ``QSqrt2``."""

    def __init__(self, x: Mapping[Edge, object] | None = None):
        self.x: dict[Edge, object] = {}
        for (u, v), w in (x or {}).items():
            self.x[canon(u, v)] = w

    def __getitem__(self, e: Edge):
        return self.x.get(canon(*e), 0)

    def __setitem__(self, e: Edge, w) -> None:
        self.x[canon(*e)] = w

    def items(self):
        return sorted(self.x.items())

    def support(self) -> list[Edge]:
        return sorted(e for e, w in self.x.items() if w != 0)

    def total(self):
        return sum((w for _, w in self.items()), Fraction(0))

    def vertex_load(self, u: int):
        return sum((w for (a, b), w in self.items() if u in (a, b)), Fraction(0))

    def vertex_loads(self) -> dict[int, object]:
        loads: dict[int, object] = {}
        for (u, v), w in self.items():
            loads[u] = loads.get(u, 0) + w
            loads[v] = loads.get(v, 0) + w
        return loads

    def induced_weight(self, s: Iterable[int]):
        """x(S): total weight of edges with both endpoints in S."""
        s = set(s)
        return sum((w for (u, v), w in self.items() if u in s and v in s), Fraction(0))

    def scaled(self, factor) -> FractionalMatching:
        return FractionalMatching({e: w * factor for e, w in self.x.items()})

    def violations(self) -> list[tuple[int, object]]:
        """Vertices whose incident weight exceeds 1, and edges outside [0, 1]."""
        bad: list[tuple[int, object]] = []
        for u, load in sorted(self.vertex_loads().items()):
            if load > 1:
                bad.append((u, load))
        return bad

    def is_valid(self) -> bool:
        if any(w < 0 or w > 1 for w in self.x.values()):
            return False
        return not self.violations()


class BipartiteView:
    """Implicit H = G[V(M), V \\ V(M)]: only edges with exactly one matched endpoint.

    Nothing is materialized; neighbor queries filter the live graph.
    """

    def __init__(self, g: Graph, m: Matching):
        self.g = g
        self.m = m

    def in_vm(self, u: int) -> bool:
        return u in self.m.mate

    def neighbors(self, u: int) -> list[int]:
        side = u in self.m.mate
        return [w for w in self.g.neighbors(u) if (w in self.m.mate) != side]

    def degree(self, u: int) -> int:
        side = u in self.m.mate
        return sum(1 for w in self.g.neighbor_set(u) if (w in self.m.mate) != side)

    def has_edge(self, u: int, v: int) -> bool:
        return self.g.has_edge(u, v) and (u in self.m.mate) != (v in self.m.mate)

    def oriented_edges(self) -> list[Edge]:
        """H-edges as (matched endpoint, unmatched endpoint), sorted."""
        out = []
        for u in sorted(self.m.mate):
            for w in self.g.neighbors(u):
                if w not in self.m.mate:
                    out.append((u, w))
        return out

    def edges(self) -> list[Edge]:
        return sorted(canon(u, v) for u, v in self.oriented_edges())


def induced_bipartite_view(g: Graph, m: Matching) -> BipartiteView:
    return BipartiteView(g, m)

"""Matched-status queries for one fixed near-maximum matching L of G[M u B].

L is defined by a deterministic procedure: the lexicographically greedy
maximal matching of G[M u B], then phases that eliminate augmenting paths of
length 3, 5, ..., ell (ell = 2*ceil(1/eps) - 1). With no augmenting path of
length <= ell, |L| >= (1 - 1/(ceil(1/eps) + 1)) * mu >= (1 - eps) * mu.

Augmentations never cross connected components, so L restricted to a
component is the procedure run on that component alone. A query grows a BFS
ball around the vertex until it closes off a whole component, runs the
procedure there, and caches the answer for every vertex of the component.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import Edge, Graph, Matching, canon
from .oracle import BudgetExceeded, GMMOracle
from .streaming import as_fraction


@dataclass(frozen=True)
class LocalParams:
    eps: Fraction
    ell: int
    d: int

    @classmethod
    def make(cls, eps, d: int | None = None) -> LocalParams:
        e = as_fraction(eps)
        if not 0 < e < 1:
            raise ValueError(f"epsilon must lie in (0, 1), got {eps}")
        t = math.ceil(1 / e)
        ell = 2 * t - 1
        if d is None:
            d = ell + 1
        if d < 1:
            raise ValueError("exploration radius must be positive")
        return cls(e, ell, d)

    @property
    def guarantee(self) -> Fraction:
        t = (self.ell + 1) // 2
        return Fraction(t, t + 1)


@dataclass
class Ball:
    center: int
    radius: int
    vertices: set[int]
    edges: set[Edge]
    dist: dict[int, int] = field(default_factory=dict)
    closed: bool = False


AdjacencyFn = Callable[[int], Iterable[int]]


def union_adjacency(b_edges_of: Callable[[int], list[tuple[Edge, int]]], m: Matching) -> AdjacencyFn:
    """Neighbors of v in G[M u B] from the b-matching oracle and the mate map."""

    def nbrs(v: int) -> list[int]:
        out = {x if y == v else y for (x, y), _ in b_edges_of(v)}
        w = m.partner(v)
        if w is not None:
            out.add(w)
        return sorted(out)

    return nbrs


def explore_ball(
    center: int,
    d: int,
    b_edges_of: Callable[[int], list[tuple[Edge, int]]] | None = None,
    m: Matching | None = None,
    *,
    adjacency: AdjacencyFn | None = None,
    max_degree: int | None = None,
) -> Ball:
    """BFS to distance ``d`` over the edges of M u B.

    Adjacency of every ball vertex is fetched, so ``edges`` is the full set
    of M u B edges among ball vertices and ``closed`` tells whether no edge
    leaves the ball.
    """
    if adjacency is None:
        if b_edges_of is None or m is None:
            raise ValueError("need either adjacency or (b_edges_of, m)")
        adjacency = union_adjacency(b_edges_of, m)
    dist = {center: 0}
    frontier = [center]
    adj_cache: dict[int, list[int]] = {}
    for depth in range(d):
        nxt = []
        for u in frontier:
            adj_cache[u] = list(adjacency(u))
            for w in adj_cache[u]:
                if w not in dist:
                    dist[w] = depth + 1
                    nxt.append(w)
        frontier = nxt
        if not frontier:
            break
    closed = True
    for u in frontier:
        if u not in adj_cache:
            adj_cache[u] = list(adjacency(u))
    edges: set[Edge] = set()
    for u, ws in adj_cache.items():
        for w in ws:
            if w in dist:
                edges.add(canon(u, w))
            else:
                closed = False
    if max_degree is not None:
        bound = (max_degree + 1) ** d
        if len(dist) > bound:
            raise AssertionError(f"ball of {len(dist)} vertices exceeds bound {bound}")
    return Ball(center, d, set(dist), edges, dist, closed)


# -- reference procedure ----------------------------------------------------


def _find_augmenting(root: int, adj: dict[int, list[int]], mate: dict[int, int], max_len: int) -> list[int] | None:
    """Lexicographically first augmenting path from free ``root`` with <= max_len edges."""
    on_path = {root}
    path = [root]
    # stack of neighbor iterators for outer vertices
    iters = [iter(adj.get(root, ()))]
    while iters:
        x_len = 2 * (len(iters) - 1)  # edges used to reach current outer vertex
        it = iters[-1]
        advanced = False
        for y in it:
            if y in on_path:
                continue
            if y not in mate:
                if x_len + 1 <= max_len:
                    return path + [y]
                continue
            z = mate[y]
            if z in on_path or x_len + 3 > max_len:
                continue
            path.extend((y, z))
            on_path.update((y, z))
            iters.append(iter(adj.get(z, ())))
            advanced = True
            break
        if not advanced:
            iters.pop()
            if len(path) > 1:
                z = path.pop()
                y = path.pop()
                on_path.discard(y)
                on_path.discard(z)
    return None


def _apply_path(path: list[int], mate: dict[int, int]) -> None:
    for i in range(0, len(path) - 1, 2):
        a, b = path[i], path[i + 1]
        mate[a] = b
        mate[b] = a


def reference_matching(vertices: Iterable[int], edges: Iterable[Edge], ell: int) -> Matching:
    """The deterministic near-maximum matching L of the graph (vertices, edges)."""
    vs = sorted(set(vertices))
    es = sorted({canon(u, v) for u, v in edges})
    adj: dict[int, list[int]] = {v: [] for v in vs}
    for u, v in es:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    for v in adj:
        adj[v].sort()
    mate: dict[int, int] = {}
    for u, v in es:
        if u not in mate and v not in mate:
            mate[u] = v
            mate[v] = u
    for length in range(3, ell + 1, 2):
        changed = True
        while changed:
            changed = False
            for r in sorted(adj):
                if r in mate or not adj[r]:
                    continue
                path = _find_augmenting(r, adj, mate, length)
                if path is not None:
                    _apply_path(path, mate)
                    changed = True
    return Matching((u, v) for u, v in mate.items() if u < v)


def reference_from_graph(g: Graph, ell: int) -> Matching:
    return reference_matching(range(g.n), g.edges(), ell)


# -- query-side matcher -----------------------------------------------------


@dataclass
class LocalStats:
    balls: int = 0
    ball_vertices: int = 0
    components: int = 0
    max_radius: int = 0


class LocalMatcher:
    """Per-vertex matched status in L over one fixed epoch (G, M, seed)."""

    def __init__(self, oracle: GMMOracle, params: LocalParams):
        self.oracle = oracle
        self.m = oracle.m
        self.params = params
        self.adjacency = union_adjacency(oracle.b_edges_of, self.m)
        self._status: dict[int, int | None] = {}
        self.stats = LocalStats()

    def _resolve(self, v: int) -> None:
        d = self.params.d
        while True:
            ball = explore_ball(v, d, adjacency=self.adjacency)
            self.stats.balls += 1
            self.stats.ball_vertices += len(ball.vertices)
            if ball.closed:
                break
            d *= 2
        self.stats.max_radius = max(self.stats.max_radius, max(ball.dist.values()))
        self.stats.components += 1
        lm = reference_matching(ball.vertices, ball.edges, self.params.ell)
        for u in ball.vertices:
            self._status[u] = lm.partner(u)

    def partner(self, v: int) -> int | None:
        if v not in self._status:
            self._resolve(v)
        return self._status[v]

    def matched_status(self, v: int) -> bool:
        return self.partner(v) is not None

    def safe_status(self, v: int) -> tuple[bool, bool]:
        """(matched, aborted): exploration-budget aborts count as unmatched."""
        try:
            return self.matched_status(v), False
        except BudgetExceeded:
            return False, True

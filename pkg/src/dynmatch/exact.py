"""Exact maximum-cardinality matching for general graphs.

``maximum_matching`` is Edmonds' blossom algorithm in its BFS form with
base-array blossom contraction, O(V^3) worst case. ``brute_force_matching``
is an independent exhaustive oracle for tiny graphs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .graph import Graph, GraphError, Matching


class TooLarge(GraphError):
    pass


BRUTE_FORCE_LIMIT = 16


@dataclass
class MatchingResult:
    matching: Matching
    size: int


def _greedy_init(adj: list[list[int]], mate: list[int]) -> None:
    for u, nbrs in enumerate(adj):
        if mate[u] != -1:
            continue
        for v in nbrs:
            if mate[v] == -1:
                mate[u] = v
                mate[v] = u
                break


def _augment_from(root: int, adj: list[list[int]], mate: list[int]) -> bool:
    """Search an augmenting path from free ``root``; apply it if found."""
    n = len(adj)
    parent = [-1] * n
    base = list(range(n))
    used = [False] * n
    used[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                cur = lca(v, to)
                blossom = [False] * n
                mark_path(v, cur, to, blossom)
                mark_path(to, cur, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    # flip the alternating path root .. to
                    while to != -1:
                        pv = parent[to]
                        nxt = mate[pv]
                        mate[to] = pv
                        mate[pv] = to
                        to = nxt
                    return True
                used[mate[to]] = True
                queue.append(mate[to])
    return False


def maximum_matching(g: Graph, init: Matching | None = None) -> MatchingResult:
    """Maximum-cardinality matching of ``g``.

    Free vertices are processed in ascending id over ascending neighbor
    lists, so the returned edge set is reproducible. ``init`` optionally
    seeds the search with a valid matching (default: greedy).
    """
    n = g.n
    adj = [g.neighbors(u) for u in range(n)]
    mate = [-1] * n
    if init is not None:
        for u, v in init.edges:
            if not g.has_edge(u, v):
                raise GraphError(f"initial matching edge {(u, v)} not in graph")
            mate[u], mate[v] = v, u
    _greedy_init(adj, mate)
    for root in range(n):
        if mate[root] == -1 and adj[root]:
            _augment_from(root, adj, mate)
    m = Matching((u, v) for u, v in enumerate(mate) if v > u)
    return MatchingResult(m, len(m))


def has_augmenting_path(g: Graph, m: Matching) -> bool:
    """True iff some free vertex starts an augmenting path w.r.t. ``m`` (Berge)."""
    n = g.n
    adj = [g.neighbors(u) for u in range(n)]
    for root in range(n):
        if m.is_matched(root) or not adj[root]:
            continue
        mate = [-1] * n
        for u, v in m.mate.items():
            mate[u] = v
        if _augment_from(root, adj, mate):
            return True
    return False


def brute_force_matching(g: Graph) -> int:
    """Exact matching number by exhaustive search over matchings (|V| <= 16)."""
    if g.n > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"brute force limited to {BRUTE_FORCE_LIMIT} vertices, got {g.n}")
    nbr_mask = [0] * g.n
    for u, v in g.edges():
        nbr_mask[u] |= 1 << v
        nbr_mask[v] |= 1 << u

    @lru_cache(maxsize=None)
    def best(avail: int) -> int:
        # lowest available vertex is either left unmatched or matched to an available neighbor
        while avail and not (nbr_mask[(avail & -avail).bit_length() - 1] & avail):
            avail &= avail - 1
        if not avail:
            return 0
        low = avail & -avail
        u = low.bit_length() - 1
        rest = avail ^ low
        result = best(rest)
        cand = nbr_mask[u] & rest
        while cand:
            bit = cand & -cand
            cand ^= bit
            result = max(result, 1 + best(rest ^ bit))
        return result

    return best((1 << g.n) - 1)

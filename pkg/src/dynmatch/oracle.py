"""Local oracle for random greedy maximal matching on the copy graph H~.

H~ holds k copies of every vertex of V(M) and ceil(k*b) copies of every
unmatched vertex; each H-edge (u, v) becomes the complete bipartite graph
between their copies. The edge permutation is realized by a keyed 64-bit
hash of the canonical copy-edge encoding, ties broken by the encoding, so
any copy edge's rank is available without materializing H~.

A maximal matching of H~ induces a b-matching of H (edge multiplicity =
number of matched copy pairs over it).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .graph import BMatching, BipartiteView, Edge, Graph, GraphError, Matching, canon

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
COPY_SHIFT = 32
NO_BOUND = 1 << 200

DEFAULT_BUDGET = 10**7
GLOBAL_LIMIT = 10**6


class BudgetExceeded(RuntimeError):
    pass


class TooLarge(GraphError):
    pass


class VertexCopy(NamedTuple):
    base: int
    copy_index: int

    @property
    def code(self) -> int:
        return encode_copy(self.base, self.copy_index)


@dataclass(frozen=True)
class CopyEdge:
    a: VertexCopy
    b: VertexCopy
    rank: int

    @property
    def bases(self) -> Edge:
        return canon(self.a.base, self.b.base)

    def other(self, c: VertexCopy) -> VertexCopy:
        return self.b if c == self.a else self.a


def encode_copy(base: int, idx: int) -> int:
    return (base << COPY_SHIFT) | idx


def decode_copy(code: int) -> VertexCopy:
    return VertexCopy(code >> COPY_SHIFT, code & ((1 << COPY_SHIFT) - 1))


def _mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def _rank_codes(seed: int, lo: int, hi: int) -> int:
    s = _mix64((seed + _GOLDEN) & MASK64)
    h = _mix64(s ^ lo)
    return _mix64((h ^ hi) + _GOLDEN)


def copy_edge_rank(seed: int, a: VertexCopy | tuple[int, int], b: VertexCopy | tuple[int, int]) -> int:
    """Deterministic 64-bit rank of the copy edge {a, b}; symmetric in a, b."""
    ca, cb = encode_copy(*a), encode_copy(*b)
    lo, hi = (ca, cb) if ca < cb else (cb, ca)
    return _rank_codes(seed, lo, hi)


def order_key(rank: int, lo: int, hi: int) -> int:
    """Strict total order on copy edges: by rank, then by encoding."""
    return (rank << 128) | (lo << 64) | hi


def _mix64_np(z: np.ndarray) -> np.ndarray:
    z = z ^ (z >> np.uint64(30))
    z = z * np.uint64(_M1)
    z = z ^ (z >> np.uint64(27))
    z = z * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def rank_codes_np(seed: int, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    s = np.uint64(_mix64((seed + _GOLDEN) & MASK64))
    with np.errstate(over="ignore"):
        h = _mix64_np(lo.astype(np.uint64) ^ s)
        return _mix64_np((h ^ hi.astype(np.uint64)) + np.uint64(_GOLDEN))


@dataclass
class OracleStats:
    edge_visits: int = 0
    copies_listed: int = 0
    queries: int = 0


@dataclass
class _CopyState:
    keys: list[int]
    others: list[int]
    pos: int = 0
    # index of the GMM edge at this copy; -1 = not yet known, -2 = unmatched
    match: int = -1


@dataclass
class GMMOracle:
    """Answers matched-status queries on GMM(H~, pi) for one (G, M, seed) epoch.

    The graph and matching must not change while the oracle is in use.
    """

    g: Graph
    m: Matching
    k: int
    kb_ceil: int
    seed: int
    budget: int = DEFAULT_BUDGET
    stats: OracleStats = field(default_factory=OracleStats)

    def __post_init__(self):
        self.view = BipartiteView(self.g, self.m)
        self._state: dict[int, _CopyState] = {}
        self._seed = self.seed & MASK64

    def capacity(self, v: int) -> int:
        return self.k if self.m.is_matched(v) else self.kb_ceil

    def copies(self, v: int) -> list[VertexCopy]:
        return [VertexCopy(v, i) for i in range(self.capacity(v))]

    def clear_cache(self) -> None:
        self._state.clear()
        self.stats = OracleStats()

    def _copy_state(self, code: int) -> _CopyState:
        st = self._state.get(code)
        if st is not None:
            return st
        base = code >> COPY_SHIFT
        chunks = [
            (w << COPY_SHIFT) + np.arange(self.capacity(w), dtype=np.int64)
            for w in self.view.neighbors(base)
        ]
        if chunks:
            others = np.concatenate(chunks)
            lo = np.minimum(others, code)
            hi = np.maximum(others, code)
            ranks = rank_codes_np(self._seed, lo, hi)
            order = np.lexsort((hi, lo, ranks))
            ranks_l = ranks[order].tolist()
            lo_l = lo[order].tolist()
            hi_l = hi[order].tolist()
            keys = [(r << 128) | (a << 64) | b for r, a, b in zip(ranks_l, lo_l, hi_l)]
            st = _CopyState(keys, others[order].tolist())
        else:
            st = _CopyState([], [])
            st.match = -2
        self.stats.copies_listed += 1
        self._state[code] = st
        return st

    def _matched_below(self, code: int, bound: int) -> bool:
        """Is copy ``code`` matched by a copy edge whose order key is < bound?"""
        stack: list[tuple[int, int]] = [(code, bound)]
        result: bool | None = None
        budget = self.budget
        while stack:
            c, bnd = stack[-1]
            st = self._copy_state(c)
            if result is not None:
                # child answered for the edge at st.pos
                if result:
                    st.pos += 1
                else:
                    st.match = st.pos
                result = None
            while True:
                if st.match >= 0:
                    result = st.keys[st.match] < bnd
                    break
                if st.match == -2:
                    result = False
                    break
                if st.pos >= len(st.keys):
                    st.match = -2
                    result = False
                    break
                key = st.keys[st.pos]
                if key >= bnd:
                    result = False
                    break
                self.stats.edge_visits += 1
                if self.stats.edge_visits > budget:
                    raise BudgetExceeded(
                        f"exploration budget of {budget} edge visits exhausted"
                    )
                other = st.others[st.pos]
                ost = self._state.get(other)
                if ost is not None:
                    # resolve from the other endpoint's memo when possible
                    if ost.match >= 0:
                        if ost.keys[ost.match] < key:
                            st.pos += 1
                            continue
                        st.match = st.pos
                        continue
                    if ost.match == -2 or (ost.pos < len(ost.keys) and ost.keys[ost.pos] >= key):
                        st.match = st.pos
                        continue
                stack.append((other, key))
                break
            if result is not None:
                stack.pop()
        assert result is not None
        return result

    def is_matched(self, vc: VertexCopy | tuple[int, int]) -> tuple[bool, CopyEdge | None]:
        vc = VertexCopy(*vc)
        if not 0 <= vc.copy_index < self.capacity(vc.base):
            raise GraphError(f"copy index {vc.copy_index} outside capacity of vertex {vc.base}")
        self.stats.queries += 1
        code = vc.code
        if not self._matched_below(code, NO_BOUND):
            return False, None
        st = self._state[code]
        other = decode_copy(st.others[st.match])
        return True, CopyEdge(vc, other, st.keys[st.match] >> 128)

    def b_edges_of(self, v: int) -> list[tuple[Edge, int]]:
        """Induced b-matching edges at v with multiplicities."""
        counts: dict[Edge, int] = {}
        for vc in self.copies(v):
            matched, e = self.is_matched(vc)
            if matched:
                key = canon(v, e.other(vc).base)
                counts[key] = counts.get(key, 0) + 1
        return sorted(counts.items())

    def b_matching(self) -> BMatching:
        """The whole induced b-matching (queries every vertex)."""
        cap = {v: self.capacity(v) for v in range(self.g.n)}
        b = BMatching(cap)
        for v in range(self.g.n):
            for (x, y), c in self.b_edges_of(v):
                if x == v:
                    b.add(x, y, c)
        return b


def copy_graph_size(g: Graph, m: Matching, k: int, kb_ceil: int) -> int:
    """|E(H~)| = k * ceil(kb) * |E(H)|."""
    return k * kb_ceil * len(BipartiteView(g, m).oriented_edges())


def global_gmm(
    g: Graph, m: Matching, k: int, kb_ceil: int, seed: int, limit: int = GLOBAL_LIMIT
) -> dict[VertexCopy, VertexCopy]:
    """Reference GMM(H~, pi): sort every copy edge by order key, scan greedily.

    Returns the mate map over vertex copies.
    """
    size = copy_graph_size(g, m, k, kb_ceil)
    if size > limit:
        raise TooLarge(f"copy graph has {size} edges, limit {limit}")
    h_edges = BipartiteView(g, m).oriented_edges()
    if not h_edges:
        return {}
    los, his = [], []
    ii = np.repeat(np.arange(k, dtype=np.int64), kb_ceil)
    jj = np.tile(np.arange(kb_ceil, dtype=np.int64), k)
    for u, v in h_edges:
        a = (u << COPY_SHIFT) + ii
        b = (v << COPY_SHIFT) + jj
        los.append(np.minimum(a, b))
        his.append(np.maximum(a, b))
    lo = np.concatenate(los)
    hi = np.concatenate(his)
    ranks = rank_codes_np(seed & MASK64, lo, hi)
    order = np.lexsort((hi, lo, ranks))
    mate: dict[int, int] = {}
    for a, b in zip(lo[order].tolist(), hi[order].tolist()):
        if a not in mate and b not in mate:
            mate[a] = b
            mate[b] = a
    return {decode_copy(a): decode_copy(b) for a, b in mate.items()}


def b_matching_from_copies(
    mate: dict[VertexCopy, VertexCopy], capacity: dict[int, int]
) -> BMatching:
    b = BMatching(dict(capacity))
    for a, c in sorted(mate.items()):
        if a.base < c.base:
            b.add(a.base, c.base)
    return b

"""Two-pass semi-streaming matcher for general graphs.

Pass 1 keeps a greedy maximal matching M. Pass 2 greedily builds a b-matching
B of distinct edges between V(M) (capacity k) and the unmatched vertices
(capacity ceil(k*b), b = 1 + sqrt 2). The answer is a maximum matching of
M u B.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from .exact import MatchingResult, maximum_matching
from .graph import BMatching, Edge, Graph, Matching, canon

SQRT2 = math.sqrt(2.0)
B_FACTOR = 1.0 + SQRT2


def ceil_sqrt2_mult(k: int) -> int:
    """ceil(k * sqrt 2) in exact integer arithmetic."""
    if k < 0:
        return -math.isqrt(2 * k * k)
    t = math.isqrt(2 * k * k)
    return t if t * t == 2 * k * k else t + 1


def kb_ceil(k: int) -> int:
    """ceil(k * (1 + sqrt 2))."""
    return k + ceil_sqrt2_mult(k)


def as_fraction(eps: float | str | Fraction) -> Fraction:
    # limit_denominator keeps binary-float noise out of 0.1 -> 1/10
    if isinstance(eps, Fraction):
        return eps
    if isinstance(eps, str):
        return Fraction(eps)
    return Fraction(eps).limit_denominator(10**9)


def default_k(eps: float | str | Fraction) -> int:
    """Smallest integer k with k >= 1 / (b eps^3), exactly.

    With q = 1/eps^3 the condition is k >= (sqrt2 - 1) q, i.e.
    (k + q)^2 >= 2 q^2 with both sides rational.
    """
    q = 1 / as_fraction(eps) ** 3
    k = max(1, math.floor((SQRT2 - 1) * q) - 2)
    while (k + q) ** 2 < 2 * q * q:
        k += 1
    while k > 1 and (k - 1 + q) ** 2 >= 2 * q * q:
        k -= 1
    return k


@dataclass(frozen=True)
class StreamParams:
    eps: Fraction
    k: int

    @classmethod
    def make(cls, eps: float | str | Fraction, k: int | None = None) -> StreamParams:
        e = as_fraction(eps)
        if not 0 < e < 1:
            raise ValueError(f"epsilon must lie in (0, 1), got {eps}")
        if k is None:
            k = default_k(e)
        if k < 1:
            raise ValueError(f"k must be positive, got {k}")
        return cls(e, k)

    @property
    def b(self) -> float:
        return B_FACTOR

    @property
    def kb_ceil(self) -> int:
        return kb_ceil(self.k)

    @property
    def meets_bound(self) -> bool:
        """k >= 1/(b eps^3), the condition the approximation proof needs."""
        q = 1 / self.eps**3
        return (self.k + q) ** 2 >= 2 * q * q

    def capacity(self, matched: bool) -> int:
        return self.k if matched else self.kb_ceil


def pass1_maximal(stream: Iterable[Edge]) -> Matching:
    m = Matching()
    for u, v in stream:
        if not m.is_matched(u) and not m.is_matched(v):
            m.add(u, v)
    return m


def pass2_bmatching(stream: Iterable[Edge], m: Matching, p: StreamParams) -> BMatching:
    """Greedy b-matching of distinct H-edges in stream order."""
    kb = p.kb_ceil
    cap: dict[int, int] = {}
    b = BMatching(cap)
    for u, v in stream:
        mu, mv = m.is_matched(u), m.is_matched(v)
        if mu == mv:
            continue
        if not mu:
            u, v = v, u
        # u in V(M), v outside; each edge arrives once, so B never repeats it
        if b.load(u) < p.k and b.load(v) < kb:
            cap.setdefault(u, p.k)
            cap.setdefault(v, kb)
            b.add(u, v)
    return b


def union_graph(n: int, m: Matching, b: BMatching) -> Graph:
    g = Graph(n)
    for u, v in m.edges:
        g.insert_edge(u, v)
    for u, v in b.edges():
        if not g.has_edge(u, v):
            g.insert_edge(u, v)
    return g


def finalize(n: int, m: Matching, b: BMatching) -> MatchingResult:
    """Maximum matching of G[M u B], seeded with M."""
    return maximum_matching(union_graph(n, m, b), init=m)


@dataclass
class TwoPassResult:
    params: StreamParams
    m: Matching
    b: BMatching
    result: MatchingResult

    @property
    def size(self) -> int:
        return self.result.size

    @property
    def stored_edges(self) -> int:
        return len(self.m) + len(self.b)

    def space_bound(self, n: int) -> int:
        return len(self.m) + (self.params.k + self.params.kb_ceil) * n // 2


def two_pass(n: int, edges: list[Edge], p: StreamParams) -> TwoPassResult:
    """Run both passes over the same edge order and finalize."""
    edges = [canon(u, v) for u, v in edges]
    m = pass1_maximal(edges)
    b = pass2_bmatching(edges, m, p)
    return TwoPassResult(p, m, b, finalize(n, m, b))

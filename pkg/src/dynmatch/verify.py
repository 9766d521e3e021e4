"""Executable form of the fractional-matching analysis behind the 2 - sqrt 2 bound.

Given M, the b-matching B and a maximum matching M*, build the fractional
matching x on M u B, check it is a fractional matching, check the odd-set
(blossom) inequalities on small sets, and evaluate each inequality of the
approximation chain with its slack. All arithmetic is exact in Q(sqrt 2).
"""

from __future__ import annotations

import math
import random
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import BMatching, Edge, FractionalMatching, Graph, GraphError, Matching, canon
from .streaming import StreamParams
from .surd import INV_B, INV_B_PLUS_1, ONE_MINUS_INV_B, QSqrt2, exact


class InvalidInput(GraphError):
    pass


@dataclass
class OptSplit:
    m_star: Matching
    m1: list[Edge]  # oriented (u in V(M), v outside)
    m2: list[Edge]
    rest: list[Edge]


def split_optimum(m_star: Matching, m: Matching) -> OptSplit:
    m1, m2, rest = [], [], []
    for u, v in m_star.edges:
        iu, iv = m.is_matched(u), m.is_matched(v)
        if iu and iv:
            m2.append((u, v))
        elif iu or iv:
            m1.append((u, v) if iu else (v, u))
        else:
            rest.append((u, v))
    return OptSplit(m_star, m1, m2, rest)


@dataclass
class FractionalBuild:
    x: FractionalMatching
    t: dict[Edge, Fraction]
    m_edges: list[Edge]
    b_in_m1: list[Edge]
    b_rest: list[Edge]
    kb_ceil: int
    k: int
    dynamic: bool

    def t_at(self, u: int) -> Fraction:
        return sum((t for e, t in self.t.items() if u in e), Fraction(0))

    def classes(self) -> list[list[Edge]]:
        """Edge groups that are matchings: M and B n M1*."""
        return [self.m_edges, self.b_in_m1]


def _check_b(m: Matching, b: BMatching, p: StreamParams) -> None:
    load: dict[int, int] = {}
    for (u, v), c in b.multiplicity.items():
        if m.is_matched(u) == m.is_matched(v):
            raise InvalidInput(f"b-matching edge {(u, v)} is not an H-edge")
        if c < 1:
            raise InvalidInput(f"non-positive multiplicity on {(u, v)}")
        load[u] = load.get(u, 0) + c
        load[v] = load.get(v, 0) + c
    for u, total in load.items():
        cap = p.capacity(m.is_matched(u))
        if total > cap:
            raise InvalidInput(f"vertex {u} carries {total} b-matching edges, capacity {cap}")


def build_fractional(
    m: Matching, b: BMatching, split: OptSplit, p: StreamParams, dynamic: bool = False
) -> FractionalBuild:
    """The fractional matching x on M u B.

    x = 1 - 1/b on M. On B \\ M1*, t_e = 1 (streaming, distinct edges) or
    min(eps^3 ceil(kb), B_e) (dynamic multiset). On each (u, v) in B n M1*,
    t_e = min(k - t(u), ceil(kb) - t(v)) where t(.) sums t over the other
    B-edges at that endpoint, i.e. copies are added until an endpoint is full.
    Everywhere on B, x_e = t_e / ceil(kb).
    """
    _check_b(m, b, p)
    if not dynamic and any(c != 1 for c in b.multiplicity.values()):
        raise InvalidInput("streaming b-matching must not repeat an edge")
    kb = p.kb_ceil
    cap_light = p.eps**3 * kb
    m1 = {canon(u, v) for u, v in split.m1}
    x = FractionalMatching()
    t: dict[Edge, Fraction] = {}
    m_edges = m.edges
    for e in m_edges:
        x[e] = ONE_MINUS_INV_B
    b_rest = [e for e in b.edges() if e not in m1]
    for e in b_rest:
        c = b.multiplicity[e]
        t[e] = min(cap_light, Fraction(c)) if dynamic else Fraction(1)
    light_load: dict[int, Fraction] = {}
    for (u, v), te in t.items():
        light_load[u] = light_load.get(u, Fraction(0)) + te
        light_load[v] = light_load.get(v, Fraction(0)) + te
    b_in_m1 = []
    for u, v in split.m1:
        e = canon(u, v)
        if e not in b.multiplicity:
            continue
        b_in_m1.append(e)
        t[e] = Fraction(min(p.k - light_load.get(u, 0), kb - light_load.get(v, 0)))
    for e, te in t.items():
        x[e] = QSqrt2(Fraction(te) / kb)
    return FractionalBuild(x, t, m_edges, sorted(b_in_m1), b_rest, kb, p.k, dynamic)


# -- blossom inequalities ---------------------------------------------------


@dataclass
class BlossomReport:
    max_size: int
    violations: list[tuple[tuple[int, ...], QSqrt2, int]] = field(default_factory=list)
    checked: int = 0
    exhaustive_components: int = 0
    searched_components: int = 0
    certified_sizes: list[int] = field(default_factory=list)
    min_slack: float = math.inf

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "max_size": self.max_size,
            "violations": [
                {"set": list(s), "x": float(w), "bound": bd} for s, w, bd in self.violations
            ],
            "checked": self.checked,
            "exhaustive_components": self.exhaustive_components,
            "searched_components": self.searched_components,
            "certified_sizes": self.certified_sizes,
            "min_slack": None if math.isinf(self.min_slack) else self.min_slack,
        }


def _largest_odd_below(limit) -> int:
    """Largest odd integer strictly below ``limit`` (a positive rational)."""
    s = math.ceil(limit) - 1
    return s if s % 2 else s - 1


class _SetChecker:
    def __init__(self, x: FractionalMatching, report: BlossomReport):
        self.w = {e: exact(v) for e, v in x.x.items() if v != 0}
        self.adj: dict[int, dict[int, QSqrt2]] = {}
        for (u, v), wt in self.w.items():
            self.adj.setdefault(u, {})[v] = wt
            self.adj.setdefault(v, {})[u] = wt
        self.report = report
        self.seen: set[frozenset[int]] = set()

    def weight(self, s: Iterable[int]) -> QSqrt2:
        s = set(s)
        total = QSqrt2()
        for u in s:
            for v, wt in self.adj.get(u, {}).items():
                if u < v and v in s:
                    total = total + wt
        return total

    def check(self, s: Iterable[int]) -> None:
        key = frozenset(s)
        if len(key) % 2 == 0 or key in self.seen:
            return
        self.seen.add(key)
        rep = self.report
        rep.checked += 1
        w = self.weight(key)
        bound = len(key) // 2
        slack = bound - w
        rep.min_slack = min(rep.min_slack, float(slack))
        if slack < 0:
            rep.violations.append((tuple(sorted(key)), w, bound))


def _components(adj: dict[int, dict]) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for s in sorted(adj):
        if s in seen:
            continue
        seen.add(s)
        comp, stack = [], [s]
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def connected_subsets(adj: dict[int, Iterable[int]], vertices: Iterable[int], max_size: int):
    """Every connected vertex subset of size <= max_size, each exactly once."""
    vs = sorted(vertices)

    def extend(sub: set[int], ext: set[int], root: int, closed: set[int]):
        yield sub
        if len(sub) == max_size:
            return
        ext = set(ext)
        while ext:
            w = min(ext)
            ext.discard(w)
            new_ext = set(ext)
            for u in adj[w]:
                if u > root and u not in closed:
                    new_ext.add(u)
            yield from extend(sub | {w}, new_ext, root, closed | set(adj[w]))

    for v in vs:
        yield from extend({v}, {u for u in adj[v] if u > v}, v, {v} | set(adj[v]))


def _greedy_grow(chk: _SetChecker, start: list[int], max_size: int) -> None:
    s = set(start)
    while len(s) < max_size:
        gain: dict[int, float] = {}
        for u in s:
            for v, wt in chk.adj[u].items():
                if v not in s:
                    gain[v] = gain.get(v, 0.0) + float(wt)
        if not gain:
            return
        best = max(gain.items(), key=lambda kv: (kv[1], -kv[0]))[0]
        s.add(best)
        chk.check(s)


def _random_grow(chk: _SetChecker, start: int, size: int, rng: random.Random) -> None:
    s = {start}
    boundary = set(chk.adj[start])
    while len(s) < size and boundary:
        v = rng.choice(sorted(boundary))
        s.add(v)
        boundary.discard(v)
        boundary.update(u for u in chk.adj[v] if u not in s)
    chk.check(s)


def _odd_cycles(adj: dict[int, dict], comp: list[int], max_len: int, budget: int):
    """Simple odd cycles (length <= max_len) rooted at their minimum vertex."""
    count = 0
    for root in comp:
        stack = [(root, [root], iter(sorted(w for w in adj[root] if w > root)))]
        while stack:
            u, path, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                continue
            count += 1
            if count > budget:
                return
            if nxt in path:
                continue
            if root in adj[nxt] and len(path) >= 2 and len(path) % 2 == 0 and path[1] < nxt:
                yield path + [nxt]
            if len(path) + 1 < max_len:
                cand = sorted(w for w in adj[nxt] if w > root and w not in path)
                stack.append((nxt, path + [nxt], iter(cand)))


def _certify(x: FractionalMatching, classes: list[list[Edge]], max_size: int, report: BlossomReport) -> None:
    """Size-by-size upper bound on x(S) valid for every S.

    A set of 2s+1 vertices holds at most s edges of any matching; every
    other edge is bounded by the heaviest remaining weight times the number
    of such edges that fit.
    """
    w = {e: exact(v) for e, v in x.x.items() if v != 0}
    used: set[Edge] = set()
    groups = []
    for cls in classes:
        es = [canon(*e) for e in cls if canon(*e) in w]
        verts = [v for e in es for v in e]
        if len(verts) != len(set(verts)):
            continue  # not a matching; its edges fall through to the rest
        used.update(es)
        if es:
            groups.append((len(es), max(w[e] for e in es)))
    rest = [e for e in w if e not in used]
    deg: dict[int, int] = {}
    for u, v in rest:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    rest_max = max((w[e] for e in rest), default=QSqrt2())
    max_deg = max(deg.values(), default=0)
    for size in range(3, max_size + 1, 2):
        s = size // 2
        bound = QSqrt2()
        for count, mx in groups:
            bound = bound + min(s, count) * mx
        n_rest = min(size * (size - 1) // 2, size * max_deg // 2, len(rest))
        bound = bound + n_rest * rest_max
        if bound <= s:
            report.certified_sizes.append(size)


def check_blossom(
    x: FractionalMatching,
    eps,
    size_cap: int | None = None,
    *,
    classes: list[list[Edge]] | None = None,
    exhaustive_limit: int = 20,
    samples: int = 200,
    cycle_budget: int = 200_000,
    seed: int = 0,
) -> BlossomReport:
    """Check x(S) <= floor(|S|/2) for odd S with |S| < min(1/eps, size_cap).

    Components of the support with at most ``exhaustive_limit`` vertices are
    enumerated over all connected odd sets (a violating odd set always has a
    violating connected odd piece). Larger components get greedy growth from
    every support edge, random connected sets, and bounded odd-cycle search.
    Independently, sizes whose worst case is bounded by the matching-class
    structure are listed as certified.
    """
    from .streaming import as_fraction

    limit = 1 / as_fraction(eps)
    if size_cap is not None:
        limit = min(limit, Fraction(size_cap))
    max_size = _largest_odd_below(limit)
    report = BlossomReport(max_size)
    if max_size < 3:
        return report
    chk = _SetChecker(x, report)
    if classes:
        _certify(x, classes, max_size, report)
    rng = random.Random(seed)
    for comp in _components(chk.adj):
        if len(comp) < 3:
            continue
        if len(comp) <= exhaustive_limit:
            report.exhaustive_components += 1
            for s in connected_subsets(chk.adj, comp, max_size):
                chk.check(s)
            continue
        report.searched_components += 1
        for u in comp:
            for v in chk.adj[u]:
                if u < v:
                    _greedy_grow(chk, [u, v], max_size)
        for cyc in _odd_cycles(chk.adj, comp, max_size, cycle_budget):
            chk.check(cyc)
        for _ in range(samples):
            size = rng.randrange(3, max_size + 1, 2)
            _random_grow(chk, rng.choice(comp), size, rng)
    return report


# -- claims -----------------------------------------------------------------


@dataclass
class ClaimResult:
    name: str
    lhs: object
    rhs: object
    passed: bool
    informational: bool = False
    sense: str = ">="

    @property
    def slack(self) -> float:
        """Positive when the inequality holds with room to spare."""
        try:
            diff = float(exact(self.lhs) - exact(self.rhs))
        except TypeError:
            diff = float(self.lhs) - float(self.rhs)
        return diff if self.sense == ">=" else -diff

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": float(self.lhs),
            "rhs": float(self.rhs),
            "sense": self.sense,
            "slack": self.slack,
            "passed": self.passed,
            "informational": self.informational,
        }


@dataclass
class ClaimsReport:
    results: list[ClaimResult]
    blossom: BlossomReport | None = None

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results if not r.informational) and (
            self.blossom is None or self.blossom.ok
        )

    def failures(self) -> list[str]:
        out = [r.name for r in self.results if not r.passed and not r.informational]
        if self.blossom is not None and not self.blossom.ok:
            out.append("blossom")
        return out

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "claims": [r.to_dict() for r in self.results],
            "blossom": self.blossom.to_dict() if self.blossom else None,
        }


def _ge(lhs, rhs) -> bool:
    return exact(lhs) >= exact(rhs)


def check_claims(
    fb: FractionalBuild,
    m: Matching,
    split: OptSplit,
    p: StreamParams,
    final_size: int | None = None,
    blossom: bool = True,
    **blossom_kwargs,
) -> ClaimsReport:
    """Evaluate every inequality of the approximation chain on one instance."""
    eps = p.eps
    x = fb.x
    mu = len(split.m_star)
    m1, m2 = len(split.m1), len(split.m2)
    res: list[ClaimResult] = []

    loads = x.vertex_loads()
    worst = max((exact(v) for v in loads.values()), default=QSqrt2())
    res.append(ClaimResult("vertex_constraint", worst, 1, worst <= 1 and all(
        exact(w) >= 0 for w in x.x.values()), sense="<="))
    res.append(ClaimResult("maximal_m_covers_opt", len(split.rest), 0, not split.rest, sense="<="))

    x_m = sum((exact(x[e]) for e in fb.m_edges), QSqrt2())
    rhs_m = ONE_MINUS_INV_B * (m2 + Fraction(m1, 2))
    res.append(ClaimResult("x_on_M", x_m, rhs_m, _ge(x_m, rhs_m)))

    x_b = sum((exact(x[e]) for e in fb.t), QSqrt2())
    factor = (1 - 4 * eps) if fb.dynamic else (1 - eps)
    rhs_b = factor * INV_B_PLUS_1 * m1
    res.append(ClaimResult("x_on_B", x_b, rhs_b, _ge(x_b, rhs_b), informational=fb.dynamic))

    if not fb.dynamic:
        unsat = 0
        for u, v in split.m1:
            if fb.t_at(u) != p.k and fb.t_at(v) != p.kb_ceil:
                unsat += 1
        res.append(ClaimResult("opt_edges_saturated", -unsat, 0, unsat == 0))
    else:
        light_cap = eps**3
        m_ok = all(exact(x[e]) <= ONE_MINUS_INV_B for e in fb.m_edges)
        b1_ok = all(exact(x[e]) <= INV_B for e in fb.b_in_m1)
        rest_ok = all(exact(x[e]) <= light_cap for e in fb.b_rest)
        res.append(ClaimResult("value_caps", int(m_ok and b1_ok and rest_ok), 1, m_ok and b1_ok and rest_ok))

    total = x_m + x_b
    rhs_total = (factor if fb.dynamic else (1 - eps)) * ONE_MINUS_INV_B * mu
    res.append(ClaimResult("total_weight", total, rhs_total, _ge(total, rhs_total),
                           informational=fb.dynamic))

    if final_size is not None:
        rhs_int = (1 - eps) ** 2 * total
        res.append(ClaimResult("integral_from_fractional", final_size, rhs_int, _ge(final_size, rhs_int)))
        rhs_thm = (1 - eps) ** 3 * ONE_MINUS_INV_B * mu
        res.append(ClaimResult("approximation", final_size, rhs_thm, _ge(final_size, rhs_thm)))

    brep = None
    if blossom:
        brep = check_blossom(x.scaled(1 - eps), eps, classes=fb.classes(), **blossom_kwargs)
    return ClaimsReport(res, brep)


# -- saturation diagnostic for the random-greedy b-matching ----------------------


@dataclass
class SaturationReport:
    eps: Fraction
    seeds: int
    per_edge_failure: dict[Edge, float]

    @property
    def max_failure(self) -> float:
        return max(self.per_edge_failure.values(), default=0.0)

    @property
    def within_bound(self) -> bool:
        return self.max_failure <= 2 * float(self.eps)


def saturation_holds(e: Edge, b: BMatching, m: Matching, k: int, kb_ceil: int, eps) -> bool:
    """e is in B, or an endpoint u has >= ceil((1-2eps) b(u)) B-edges counting each
    distinct edge at most floor(eps^3 ceil(kb)) times."""
    u, v = e
    if canon(u, v) in b.multiplicity:
        return True
    per_edge = math.floor(Fraction(eps) ** 3 * kb_ceil)
    for z in (u, v):
        cap = k if m.is_matched(z) else kb_ceil
        need = math.ceil((1 - 2 * Fraction(eps)) * cap)
        avail = sum(min(c, per_edge) for _, c in b.incident(z))
        if avail >= need:
            return True
    return False


def saturation_diagnostic(
    g: Graph, m: Matching, m_star: Matching, k: int, kb_ceil: int, eps, seeds: Iterable[int]
) -> SaturationReport:
    from .oracle import b_matching_from_copies, global_gmm

    split = split_optimum(m_star, m)
    fails = {canon(*e): 0 for e in split.m1}
    seeds = list(seeds)
    cap = {v: (k if m.is_matched(v) else kb_ceil) for v in range(g.n)}
    for s in seeds:
        b = b_matching_from_copies(global_gmm(g, m, k, kb_ceil, s), cap)
        for e in fails:
            if not saturation_holds(e, b, m, k, kb_ceil, eps):
                fails[e] += 1
    n = max(len(seeds), 1)
    return SaturationReport(Fraction(eps), len(seeds), {e: c / n for e, c in fails.items()})


def streaming_report(g: Graph, edges: list[Edge], p: StreamParams, **blossom_kwargs) -> tuple[ClaimsReport, dict]:
    """Run the two-pass matcher on ``edges`` and check every claim."""
    from .exact import maximum_matching
    from .streaming import two_pass

    run = two_pass(g.n, edges, p)
    opt = maximum_matching(g)
    split = split_optimum(opt.matching, run.m)
    fb = build_fractional(run.m, run.b, split, p)
    rep = check_claims(fb, run.m, split, p, final_size=run.size, **blossom_kwargs)
    info = {
        "n": g.n,
        "edges": g.num_edges,
        "mu_exact": opt.size,
        "size": run.size,
        "maximal": len(run.m),
        "b_edges": len(run.b),
        "m1": len(split.m1),
        "m2": len(split.m2),
        "k": p.k,
        "kb_ceil": p.kb_ceil,
    }
    return rep, info


__all__ = [
    "InvalidInput",
    "OptSplit",
    "split_optimum",
    "FractionalBuild",
    "build_fractional",
    "BlossomReport",
    "check_blossom",
    "connected_subsets",
    "ClaimResult",
    "ClaimsReport",
    "check_claims",
    "SaturationReport",
    "saturation_holds",
    "saturation_diagnostic",
    "streaming_report",
]

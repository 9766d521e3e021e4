"""Deterministic instance and update-stream generators.

A generator spec is written ``family:key=value,...``, e.g.
``erdos_renyi:n=300,p=0.03,seed=7``. Every family is a pure function of its
parameters and seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .events import UpdateEvent, UpdateStream
from .graph import Edge, canon


class InvalidSpec(ValueError):
    pass


@dataclass(frozen=True)
class GenSpec:
    family: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def __str__(self) -> str:
        kv = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.family}:{kv}{',' if kv else ''}seed={self.seed}"

    def __hash__(self):
        return hash((self.family, tuple(sorted(self.params.items())), self.seed))


def _num(text: str):
    try:
        return int(text)
    except ValueError:
        return float(text)


def parse_genspec(text: str, default_seed: int = 0) -> GenSpec:
    if text.startswith("gen:"):
        text = text[4:]
    family, _, rest = text.partition(":")
    params: dict = {}
    seed = default_seed
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, eq, val = item.partition("=")
        if not eq:
            raise InvalidSpec(f"expected key=value, got {item!r}")
        try:
            parsed = _num(val)
        except ValueError:
            raise InvalidSpec(f"parameter {key} must be numeric, got {val!r}") from None
        if key == "seed":
            seed = int(parsed)
        else:
            params[key] = parsed
    if family not in FAMILIES:
        raise InvalidSpec(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    return GenSpec(family, params, seed)


def _require(params: dict, name: str, kind=int, lo=None, hi=None, default=None):
    if name not in params:
        if default is None:
            raise InvalidSpec(f"missing parameter {name}")
        return default
    val = params[name]
    if kind is int and (not isinstance(val, int) or isinstance(val, bool)):
        raise InvalidSpec(f"{name} must be an integer, got {val!r}")
    val = kind(val)
    if lo is not None and val < lo or hi is not None and val > hi:
        raise InvalidSpec(f"{name}={val} outside [{lo}, {hi}]")
    return val


def _er_edges(n: int, p: float, rng: random.Random) -> list[Edge]:
    return [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]


def erdos_renyi(n: int, p: float, seed: int) -> UpdateStream:
    rng = random.Random(seed)
    edges = _er_edges(n, p, rng)
    rng.shuffle(edges)
    return UpdateStream(n, [UpdateEvent.insert(u, v) for u, v in edges])


def random_bipartiteish(n: int, p: float, imbalance: float, seed: int) -> UpdateStream:
    """Two sides of sizes ~n(1 +- imbalance)/2; cross edges with prob p, same-side
    edges with prob p/10 (so the graph is close to, but not, bipartite)."""
    rng = random.Random(seed)
    left = min(n, max(0, round(n * (1 + imbalance) / 2)))
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            same = (u < left) == (v < left)
            if rng.random() < (p / 10 if same else p):
                edges.append((u, v))
    rng.shuffle(edges)
    return UpdateStream(n, [UpdateEvent.insert(u, v) for u, v in edges])


def path(n: int) -> UpdateStream:
    return UpdateStream(n, [UpdateEvent.insert(i, i + 1) for i in range(n - 1)])


def triangle_chain(t: int, seed: int) -> UpdateStream:
    """t triangles, consecutive ones joined by a bridge edge; arrival order shuffled."""
    edges = []
    for i in range(t):
        a, b, c = 3 * i, 3 * i + 1, 3 * i + 2
        edges += [(a, b), (b, c), (a, c)]
        if i + 1 < t:
            edges.append((c, c + 1))
    random.Random(seed).shuffle(edges)
    return UpdateStream(3 * t, [UpdateEvent.insert(u, v) for u, v in edges])


def fig1_gadget(copies: int) -> UpdateStream:
    """Disjoint copies of the parallel-edge trap.

    Per copy (u1..u4): the matched edge (u1, u2) arrives first, then the
    triangle edges (u1, u4), (u2, u4) to the trap vertex u4, then (u1, u3).
    A b-matching that may repeat edges spends u1's whole capacity on copies
    of (u1, u4) and never takes (u1, u3), leaving M u B with matching number
    1 against mu = 2. Distinct edges keep (u1, u3) whenever k >= 2.
    """
    events = []
    for c in range(copies):
        u1, u2, u3, u4 = 4 * c, 4 * c + 1, 4 * c + 2, 4 * c + 3
        for e in ((u1, u2), (u1, u4), (u2, u4), (u1, u3)):
            events.append(UpdateEvent.insert(*e))
    return UpdateStream(4 * copies, events)


class _EdgePool:
    """Live edge set with O(1) uniform sampling and removal."""

    def __init__(self):
        self.items: list[Edge] = []
        self.index: dict[Edge, int] = {}

    def add(self, e: Edge) -> None:
        self.index[e] = len(self.items)
        self.items.append(e)

    def remove(self, e: Edge) -> None:
        i = self.index.pop(e)
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.index[last] = i

    def __contains__(self, e: Edge) -> bool:
        return e in self.index

    def __len__(self) -> int:
        return len(self.items)


def update_mix(n: int, p: float, steps: int, delete_ratio: float, seed: int) -> UpdateStream:
    """ER(n, p) inserts followed by ``steps`` random updates; each is a delete of a
    uniform live edge with probability ``delete_ratio`` (when any edge is live),
    otherwise an insert of a uniform absent pair."""
    rng = random.Random(seed)
    initial = _er_edges(n, p, rng)
    rng.shuffle(initial)
    pool = _EdgePool()
    events = []
    for e in initial:
        pool.add(e)
        events.append(UpdateEvent.insert(*e))
    max_edges = n * (n - 1) // 2
    for _ in range(steps):
        want_delete = rng.random() < delete_ratio
        if len(pool) and (want_delete or len(pool) == max_edges):
            e = pool.items[rng.randrange(len(pool))]
            pool.remove(e)
            events.append(UpdateEvent.delete(*e))
        elif len(pool) < max_edges:
            while True:
                u, v = rng.randrange(n), rng.randrange(n)
                if u != v and canon(u, v) not in pool:
                    break
            e = canon(u, v)
            pool.add(e)
            events.append(UpdateEvent.insert(*e))
    return UpdateStream(n, events)


FAMILIES = {
    "erdos_renyi",
    "random_bipartiteish",
    "path",
    "triangle_chain",
    "fig1_gadget",
    "update_mix",
}


def generate(spec: GenSpec | str) -> UpdateStream:
    if isinstance(spec, str):
        spec = parse_genspec(spec)
    f, prm, seed = spec.family, spec.params, spec.seed
    if f == "erdos_renyi":
        return erdos_renyi(_require(prm, "n", lo=0), _require(prm, "p", float, 0, 1), seed)
    if f == "random_bipartiteish":
        return random_bipartiteish(
            _require(prm, "n", lo=0),
            _require(prm, "p", float, 0, 1),
            _require(prm, "imbalance", float, -1, 1, default=0.0),
            seed,
        )
    if f == "path":
        return path(_require(prm, "n", lo=1))
    if f == "triangle_chain":
        return triangle_chain(_require(prm, "t", lo=1), seed)
    if f == "fig1_gadget":
        return fig1_gadget(_require(prm, "k", lo=1, default=1))
    if f == "update_mix":
        return update_mix(
            _require(prm, "n", lo=2),
            _require(prm, "p", float, 0, 1),
            _require(prm, "steps", lo=0),
            _require(prm, "delete_ratio", float, 0, 1),
            seed,
        )
    raise InvalidSpec(f"unknown family {f!r}")


def avg_degree_p(n: int, avg_degree: float) -> float:
    return min(1.0, avg_degree / max(n - 1, 1))

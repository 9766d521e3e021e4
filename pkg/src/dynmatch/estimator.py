"""Semi-dynamic matching-size estimator and its periodic re-query wrapper.

A query samples r vertices uniformly with replacement, asks whether each is
matched in the near-maximum matching L of G[M u B], and returns

    mu_tilde = n * X / (2 r) - eps * n / 2      (clamped to [0, n/2])

where X counts matched samples. The fully dynamic wrapper maintains M on
every update and re-queries every ``requery_interval`` updates, emitting
the cached estimate in between (stale by at most the interval, since mu
moves by at most one per update).
"""

from __future__ import annotations

import logging
import math
import time
from collections.abc import Iterable
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .dynamic import MaximalState
from .events import QUERY, UpdateEvent
from .exact import maximum_matching
from .graph import Graph, Matching
from .local import LocalMatcher, LocalParams
from .oracle import DEFAULT_BUDGET, GMMOracle
from .streaming import as_fraction, default_k, kb_ceil

log = logging.getLogger(__name__)


def sample_count(eps: Fraction | float, n: int) -> int:
    """r = ceil(24 eps^-2 ln n), clamped to [1, n]."""
    if n <= 1:
        return 1
    r = math.ceil(24 / float(eps) ** 2 * math.log(n))
    return max(1, min(r, n))


@dataclass(frozen=True)
class EstimatorConfig:
    eps: Fraction
    k: int
    d: int
    seed: int = 0
    r: int | None = None
    exploration_budget: int = DEFAULT_BUDGET
    requery_interval: int | None = None

    @classmethod
    def make(
        cls,
        eps,
        k: int | None = None,
        d: int | None = None,
        seed: int = 0,
        r: int | None = None,
        exploration_budget: int = DEFAULT_BUDGET,
        requery_interval: int | None = None,
    ) -> EstimatorConfig:
        e = as_fraction(eps)
        if not 0 < e < 1:
            raise ValueError(f"epsilon must lie in (0, 1), got {eps}")
        if k is None:
            k = default_k(e)
        local = LocalParams.make(e, d)
        for name, val in (("k", k), ("r", r), ("exploration_budget", exploration_budget),
                          ("requery_interval", requery_interval)):
            if val is not None and val < 1:
                raise ValueError(f"{name} must be positive, got {val}")
        return cls(e, k, local.d, seed, r, exploration_budget, requery_interval)

    @property
    def b(self) -> float:
        return 1 + math.sqrt(2)

    @property
    def kb_ceil(self) -> int:
        return kb_ceil(self.k)

    @property
    def local(self) -> LocalParams:
        return LocalParams.make(self.eps, self.d)

    def samples_for(self, n: int) -> int:
        return self.r if self.r is not None else sample_count(self.eps, n)

    def with_seed(self, seed: int) -> EstimatorConfig:
        return replace(self, seed=seed)


@dataclass
class Estimate:
    mu_tilde: float
    X: int
    r: int
    raw: float
    samples: list[tuple[int, bool]] = field(default_factory=list)
    aborted: int = 0
    explored_edges: int = 0


def estimate_from_count(n: int, X: int, r: int, eps) -> tuple[float, float]:
    """(clamped, raw) estimate for X matched out of r samples."""
    raw = n * X / (2 * r) - float(eps) * n / 2
    return min(max(raw, 0.0), n / 2), raw


def query(g: Graph, m: Matching, cfg: EstimatorConfig, epoch: int = 0) -> Estimate:
    """One semi-dynamic query over the frozen epoch (g, m).

    ``m`` must be maximal in ``g``. The copy-edge permutation and the vertex
    samples both derive from (cfg.seed, epoch).
    """
    n = g.n
    r = cfg.samples_for(n)
    if n == 0:
        return Estimate(0.0, 0, r, 0.0)
    ss = np.random.SeedSequence([cfg.seed & ((1 << 63) - 1), epoch])
    perm_seed, sample_seed = ss.generate_state(2, dtype=np.uint64).tolist()
    oracle = GMMOracle(g, m, cfg.k, cfg.kb_ceil, perm_seed, cfg.exploration_budget)
    matcher = LocalMatcher(oracle, cfg.local)
    rng = np.random.default_rng(sample_seed)
    picks = rng.integers(0, n, size=r).tolist()
    samples = []
    aborted = 0
    for v in picks:
        hit, failed = matcher.safe_status(v)
        aborted += failed
        samples.append((v, hit))
    if aborted:
        log.warning("%d of %d samples hit the exploration budget; counted unmatched", aborted, r)
    X = sum(hit for _, hit in samples)
    mu, raw = estimate_from_count(n, X, r, cfg.eps)
    return Estimate(mu, X, r, raw, samples, aborted, oracle.stats.edge_visits)


@dataclass
class DynamicRow:
    event_index: int
    kind: str
    mu_tilde: float
    X: int
    r: int
    explored_edges: int
    mu_exact: int | None = None
    fresh: bool = False
    staleness: int = 0
    wall_time: float = 0.0


def run_fully_dynamic(
    n: int,
    events: Iterable[UpdateEvent],
    cfg: EstimatorConfig,
    exact: bool = False,
) -> list[DynamicRow]:
    """Feed every event to the maximal-matching maintainer; emit one row per event.

    A fresh query runs at the first event and whenever ``staleness`` (updates
    since the last query) reaches the re-query interval. ``exact`` adds mu(G)
    at every fresh query and every explicit query event.
    """
    state = MaximalState(Graph(n))
    rows: list[DynamicRow] = []
    last: Estimate | None = None
    since = 0
    epoch = 0
    opt: Matching | None = None
    for i, ev in enumerate(events):
        t0 = time.perf_counter()
        if ev.kind != QUERY:
            state.apply(ev)
            since += 1
        if cfg.requery_interval is not None:
            interval = cfg.requery_interval
        else:
            interval = max(1, math.floor(float(cfg.eps) * (last.mu_tilde if last else 0)))
        fresh = last is None or since >= interval
        if fresh:
            last = query(state.g, state.m, cfg, epoch)
            epoch += 1
            since = 0
        mu_exact = None
        if exact and (fresh or ev.kind == QUERY):
            init = Matching(e for e in opt.edges if state.g.has_edge(*e)) if opt else state.m
            opt = maximum_matching(state.g, init=init).matching
            mu_exact = len(opt)
        rows.append(DynamicRow(i, ev.kind, last.mu_tilde, last.X, last.r, last.explored_edges,
                               mu_exact, fresh, since, time.perf_counter() - t0))
    return rows

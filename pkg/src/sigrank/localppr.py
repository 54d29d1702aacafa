"""Monte-Carlo estimation of one personalized-PageRank row.

The estimator runs r independent restart walks from the source and reports,
for each node, the fraction of walks whose termination coin fired there.
Walks are capped so a single row estimate costs O(log(n) * log(1/eps) /
(eps * rho^2)) crawl queries no matter how large or dense the graph is.

Contract for approx_row(v, eps, rho), holding per node with failure
probability O(1/n^2): every reported node carries a value within
[(1 - rho) * p - eps/4, (1 + rho) * p] of its true row value p, and every
omitted node has p <= eps/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._kernels import run_walks
from .graph import DirectedGraph, NodeId, QueryLedger, random_crawl
from .rng import MASK64, RngStream, coin_threshold

DEFAULT_WALKS_CONST = 16.0


@dataclass
class WalkOutcome:
    """One simulated walk: where (and whether) the termination coin fired."""

    terminated: bool
    last_node: NodeId  # -1 when the walk hit its cap instead of terminating
    steps_taken: int


@dataclass
class PprEstimate:
    """Sparse personalized-row estimate with its accuracy parameters.

    Every stored value is positive and equals count / walks_run, so the
    values sum to at most 1.
    """

    source: NodeId
    alpha: float
    epsilon: float
    rho: float
    entries: dict[NodeId, float] = field(default_factory=dict)
    walks_run: int = 0
    walk_length_cap: int = 0

    def total(self) -> float:
        return sum(self.entries.values())

    def get(self, v: NodeId) -> float:
        return self.entries.get(v, 0.0)


def walk_length_cap(epsilon: float, alpha: float) -> int:
    """Steps per walk: smallest cap with survival mass (1-alpha)^cap <= eps/4."""
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    return math.ceil(math.log(4.0 / epsilon) / math.log(1.0 / (1.0 - alpha)))


def walk_count(n: int, epsilon: float, rho: float,
               walks_const: float = DEFAULT_WALKS_CONST) -> int:
    """Walks per row estimate: ceil(walks_const * log2(n) / (eps * rho^2))."""
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    if not 0.0 < rho < 1.0:
        raise ValueError(f"rho must be in (0, 1), got {rho}")
    r = math.ceil(walks_const * math.log2(n) / (epsilon * rho * rho))
    return max(1, r)


def simulate_walk(g: DirectedGraph, source: NodeId, alpha: float, cap: int,
                  rng: RngStream, ledger: QueryLedger) -> WalkOutcome:
    """One restart walk: each step flips the termination coin, else crawls.

    The node recorded on termination is the one occupied before the coin, so
    a walk terminating on its first step records the source.  Termination
    consumes no crawl; a walk cut off at `cap` has made `cap` crawl moves.
    """
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    if not 0 <= source < g.n:
        raise ValueError(f"node {source} out of range for n={g.n}")
    thr = coin_threshold(alpha)
    node = source
    steps = 0
    for _ in range(cap):
        steps += 1
        ledger.walk_steps += 1
        if (rng.next_u64() >> 11) < thr:
            return WalkOutcome(True, node, steps)
        node = random_crawl(g, node, rng, ledger)
    return WalkOutcome(False, -1, steps)


def approx_row(g: DirectedGraph, v: NodeId, epsilon: float, rho: float,
               alpha: float = 0.15, seed: int = 0,
               ledger: QueryLedger | None = None, *,
               walks_const: float = DEFAULT_WALKS_CONST) -> PprEstimate:
    """Estimate the personalized-PageRank row of v from capped random walks.

    Walk w of the batch consumes exactly the draws of RngStream(seed, w), so
    the result is a pure function of (graph, v, epsilon, rho, alpha, seed)
    and is unchanged by thread count.
    """
    if ledger is None:
        ledger = QueryLedger()
    if not 0 <= v < g.n:
        raise ValueError(f"node {v} out of range for n={g.n}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    cap = walk_length_cap(epsilon, alpha)
    r = walk_count(g.n, epsilon, rho, walks_const)
    last = np.full(r, -1, dtype=np.int64)
    steps = int(
        run_walks(
            g.out_offsets,
            g.out_targets,
            np.int64(g.n),
            np.int64(v),
            np.uint64(coin_threshold(alpha)),
            np.int64(cap),
            np.int64(r),
            np.uint64(seed & MASK64),
            last,
        )
    )
    finished = last[last >= 0]
    ledger.walk_steps += steps
    ledger.crawls += steps - finished.size
    entries: dict[NodeId, float] = {}
    if finished.size:
        counts = np.bincount(finished)
        for u in np.nonzero(counts)[0]:
            entries[int(u)] = int(counts[u]) / r
    return PprEstimate(
        source=v,
        alpha=alpha,
        epsilon=epsilon,
        rho=rho,
        entries=entries,
        walks_run=r,
        walk_length_cap=cap,
    )

"""Threshold detection by multi-scale sampling of personalized-PageRank rows.

A node's PageRank equals the sum of its column in the matrix whose rows are
personalized-PageRank vectors.  Rather than estimating any column directly,
the sampler splits column entries into dyadic value bands ("chunks"): band t
holds entries in [eps_t, 2 * eps_t) with eps_t = 2^-t.  Entries below
delta / (4n) are ignored; they cannot move a score that matters.

For each band the sampler jumps to a batch of uniformly random rows, runs
the local row estimator on each, and counts how often an estimated entry for
a node lands inside the band.  Coarse bands need few sampled rows because
their entries are large; fine bands need many rows but each row estimate is
cheap at the coarse additive error used there.  A band whose entry sum is
heavy (at least delta / (2 log n)) collects enough counts to be estimated
within a factor of two, and per-node scores reconstructed from heavy-band
counts land inside a constant-factor bracket of the true PageRank.  Nodes
scoring at least delta / 4 are emitted.

Total probe cost: at most 2 * sample_const * (n / delta) * log2(n)^2 jumps,
plus the capped walks behind each row estimate; both bounds are exact and
asserted against the query ledger in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .graph import DirectedGraph, NodeId, QueryLedger, jump
from .localppr import PprEstimate, approx_row, walk_count, walk_length_cap
from .rng import RngStream, derive_key

SUM_SCALE = "sum_scale"
PAPER_LITERAL = "paper_literal"

_JUMP_STREAM_TAG = 0x4A
_ROW_SEED_TAG = 0x52


def log2n(n: int) -> float:
    """log2(n) clamped to >= 1 so degenerate graphs keep formulas defined."""
    return max(math.log2(n), 1.0)


def num_scales(n: int, delta: float) -> int:
    """Finest band index T = ceil(log2(4n / delta)); bands run t = 0..T."""
    return max(0, math.ceil(math.log2(4.0 * n / delta)))


def scale_epsilon(t: int) -> float:
    return 2.0 ** -t


def sample_count(t: int, n: int, delta: float, sample_const: float) -> int:
    """Rows jumped at band t: ceil(sample_const * (n/delta) * eps_t * log2(n)^2)."""
    ell = log2n(n)
    return math.ceil(sample_const * (n / delta) * scale_epsilon(t) * ell * ell)


@dataclass
class ChunkAccumulator:
    """Counts of estimated entries per (node, band), merged by addition."""

    counts: dict[tuple[NodeId, int], int] = field(default_factory=dict)

    def increment(self, node: NodeId, t: int) -> None:
        key = (node, t)
        self.counts[key] = self.counts.get(key, 0) + 1

    def merge(self, other: "ChunkAccumulator") -> None:
        for key, c in other.counts.items():
            self.counts[key] = self.counts.get(key, 0) + c

    def items_sorted(self) -> list[tuple[tuple[NodeId, int], int]]:
        return sorted(self.counts.items())

    def __len__(self) -> int:
        return len(self.counts)


@dataclass(frozen=True)
class SignificantConfig:
    """Constants of the sampler; defaults give the analyzed guarantees (c=6).

    reconstruction_mode picks how heavy-band counts become score mass:

    * sum_scale (default): add count * delta / (sample_const * log2(n)^2),
      an unbiased band-sum estimate up to the within-band factor of two.
    * paper_literal: add delta / (2 * eps_t * log2(n)^2) once per heavy
      band, ignoring the count.  Kept selectable for comparison; its scores
      are not on the PageRank scale, so default guarantees do not apply.
    """

    sample_const: float = 4.0
    walks_const: float = 16.0
    heavy_count_threshold_fraction: float = 0.5
    output_threshold_fraction: float = 0.25
    reconstruction_mode: str = SUM_SCALE
    rho: float = 0.5

    def __post_init__(self):
        for name in ("sample_const", "walks_const", "heavy_count_threshold_fraction",
                     "output_threshold_fraction", "rho"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.reconstruction_mode not in (SUM_SCALE, PAPER_LITERAL):
            raise ValueError(f"unknown reconstruction_mode {self.reconstruction_mode!r}")
        if not self.rho < 1.0:
            raise ValueError("rho must be in (0, 1)")

    def scaled(self, factor: float) -> "SignificantConfig":
        """Uniformly scale the sampling constants (test-time speed knob)."""
        if factor <= 0:
            raise ValueError("factor must be positive")
        return replace(self, sample_const=self.sample_const * factor,
                       walks_const=self.walks_const * factor)

    def as_dict(self) -> dict:
        return {
            "sample_const": self.sample_const,
            "walks_const": self.walks_const,
            "heavy_count_threshold_fraction": self.heavy_count_threshold_fraction,
            "output_threshold_fraction": self.output_threshold_fraction,
            "reconstruction_mode": self.reconstruction_mode,
            "rho": self.rho,
        }


@dataclass
class SignificantResult:
    """Detected nodes with score estimates plus the probes spent finding them."""

    members: dict[NodeId, float]
    delta: float
    c_claimed: float
    jumps: int
    crawls: int
    walk_steps: int
    config: SignificantConfig

    def members_sorted(self) -> list[tuple[NodeId, float]]:
        """Descending by estimate; ties broken by node id for stable output."""
        return sorted(self.members.items(), key=lambda kv: (-kv[1], kv[0]))

    def to_json_dict(self) -> dict:
        return {
            "delta": self.delta,
            "c": self.c_claimed,
            "members": [
                {"node": u, "estimate": est} for u, est in self.members_sorted()
            ],
            "jumps": self.jumps,
            "crawls": self.crawls,
            "walk_steps": self.walk_steps,
            "config": self.config.as_dict(),
        }


def chunk_assign(estimates: PprEstimate, t: int, acc: ChunkAccumulator) -> ChunkAccumulator:
    """Count estimated entries that fall in band t's half-open interval.

    An entry with value exactly 2 * eps_t belongs to band t - 1, not t.
    """
    eps_t = scale_epsilon(t)
    upper = 2.0 * eps_t
    for u, val in estimates.entries.items():
        if eps_t <= val < upper:
            acc.increment(u, t)
    return acc


def reconstruct_scores(acc: ChunkAccumulator, delta: float, n: int,
                       cfg: SignificantConfig) -> dict[NodeId, float]:
    """Turn heavy-band counts into per-node scores (see SignificantConfig)."""
    ell = log2n(n)
    heavy_thr = cfg.heavy_count_threshold_fraction * ell
    scores: dict[NodeId, float] = {}
    for (u, t), count in acc.counts.items():
        if count < heavy_thr:
            continue
        if cfg.reconstruction_mode == SUM_SCALE:
            add = count * delta / (cfg.sample_const * ell * ell)
        else:
            add = delta / (2.0 * scale_epsilon(t) * ell * ell)
        scores[u] = scores.get(u, 0.0) + add
    return scores


def jump_budget(n: int, delta: float, cfg: SignificantConfig) -> int:
    """Exact total jumps one run will spend (sum of per-band sample counts)."""
    return sum(sample_count(t, n, delta, cfg.sample_const)
               for t in range(num_scales(n, delta) + 1))


def walk_step_budget(n: int, delta: float, alpha: float,
                     cfg: SignificantConfig) -> int:
    """Exact upper bound on walk steps: every walk running to its cap."""
    total = 0
    for t in range(num_scales(n, delta) + 1):
        eps = scale_epsilon(t) / 2.0
        total += (sample_count(t, n, delta, cfg.sample_const)
                  * walk_count(n, eps, cfg.rho, cfg.walks_const)
                  * walk_length_cap(eps, alpha))
    return total


def significant_pageranks(g: DirectedGraph, delta: float, alpha: float = 0.15,
                          seed: int = 0, cfg: SignificantConfig | None = None,
                          ledger: QueryLedger | None = None) -> SignificantResult:
    """Return every node whose reconstructed score reaches delta / 4.

    With default constants the output contains, with high probability, all
    nodes of PageRank at least delta and no node below delta / 6.  Jump
    targets and per-row walk streams derive from (seed, band, sample index),
    so a run is reproducible from the seed alone.
    """
    if cfg is None:
        cfg = SignificantConfig()
    if ledger is None:
        ledger = QueryLedger()
    if not 1.0 <= delta <= g.n:
        raise ValueError(f"delta must be in [1, n={g.n}], got {delta}")
    before = ledger.snapshot()
    jump_rng = RngStream(derive_key(seed, _JUMP_STREAM_TAG), 0)
    acc = ChunkAccumulator()
    for t in range(num_scales(g.n, delta) + 1):
        eps_t = scale_epsilon(t)
        for i in range(sample_count(t, g.n, delta, cfg.sample_const)):
            v = jump(g, jump_rng, ledger)
            est = approx_row(
                g, v, eps_t / 2.0, cfg.rho, alpha,
                seed=derive_key(seed, _ROW_SEED_TAG, t, i),
                ledger=ledger, walks_const=cfg.walks_const,
            )
            chunk_assign(est, t, acc)
    scores = reconstruct_scores(acc, delta, g.n, cfg)
    out_thr = cfg.output_threshold_fraction * delta
    members = {u: s for u, s in sorted(scores.items()) if s >= out_thr}
    spent = ledger.delta_since(before)
    return SignificantResult(
        members=members,
        delta=delta,
        c_claimed=6.0,
        jumps=spent["jumps"],
        crawls=spent["crawls"],
        walk_steps=spent["walk_steps"],
        config=cfg,
    )

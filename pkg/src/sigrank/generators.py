"""Deterministic graph constructions used by experiments and tests."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import DirectedGraph, NodeId
from .rng import RngStream

SELF_LOOPS = "self-loops"
DIRECTED_CYCLE = "directed-cycle"
DIRECTED_STAR = "directed-star"
UNIFORM_RANDOM = "uniform-random"

NAMED_KINDS = (SELF_LOOPS, DIRECTED_CYCLE, DIRECTED_STAR, UNIFORM_RANDOM)


@dataclass(frozen=True)
class PathStarSpec:
    """Geometry of a path-plus-star instance.

    The graph has two weakly connected components: an undirected path on
    path_len nodes (ids 0..path_len-1) and an isolated star whose hub
    (id path_len) joins d leaves.  The hub is the unique node whose
    PageRank clears the threshold the instance was built for.
    """

    n: int
    delta: float
    d: int
    hub_id: NodeId
    path_len: int

    @property
    def star_nodes(self) -> range:
        return range(self.path_len, self.n)


def gen_path_star(n: int, delta: float) -> tuple[DirectedGraph, PathStarSpec]:
    """Undirected path on n-d-1 nodes plus isolated star with d = 2*ceil(delta).

    Every undirected edge is materialized as two directed arcs.  Requires
    n >= 8 and a star small enough (d + 1 < n / 2) that the path dominates.
    """
    if n < 8:
        raise ValueError(f"need n >= 8, got {n}")
    if not delta < n / 2 - 1:
        raise ValueError(f"need delta < n/2 - 1, got delta={delta}, n={n}")
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    d = 2 * math.ceil(delta)
    if not d + 1 < n / 2:
        raise ValueError(f"star too large: d+1={d + 1} must be < n/2={n / 2}")
    path_len = n - d - 1
    hub = path_len
    arcs: list[tuple[int, int]] = []
    for i in range(path_len - 1):
        arcs.append((i, i + 1))
        arcs.append((i + 1, i))
    for leaf in range(hub + 1, n):
        arcs.append((hub, leaf))
        arcs.append((leaf, hub))
    spec = PathStarSpec(n=n, delta=delta, d=d, hub_id=hub, path_len=path_len)
    return DirectedGraph(n, arcs), spec


def gen_named(kind: str, n: int, m: int = 0, seed: int = 0) -> DirectedGraph:
    """Deterministic fixture families; uniform-random draws m arcs iid."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if kind == SELF_LOOPS:
        return DirectedGraph(n, ((v, v) for v in range(n)))
    if kind == DIRECTED_CYCLE:
        return DirectedGraph(n, ((v, (v + 1) % n) for v in range(n)))
    if kind == DIRECTED_STAR:
        if n < 2:
            raise ValueError("directed star needs n >= 2")
        arcs = [(leaf, 0) for leaf in range(1, n)]
        arcs.append((0, 1))
        return DirectedGraph(n, arcs)
    if kind == UNIFORM_RANDOM:
        if m < 0:
            raise ValueError(f"need m >= 0, got {m}")
        rng = RngStream(seed, 0)
        arcs = [(rng.next_below(n), rng.next_below(n)) for _ in range(m)]
        return DirectedGraph(n, arcs)
    raise ValueError(f"unknown graph kind {kind!r}; choose from {NAMED_KINDS}")

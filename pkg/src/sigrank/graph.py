"""Directed-graph storage and the two network probes used by every algorithm.

The graph is an immutable CSR-style out-adjacency over dense integer node
ids.  Algorithms never scan the arrays wholesale; they access the network
through two probes:

* ``jump``          -- returns a uniformly random node
* ``random_crawl``  -- returns a uniformly random out-neighbor of a node

Both probes charge a ``QueryLedger``.  The ledger totals are the evidence
behind every query-budget claim made by the estimators and benchmarks here,
so the probes are the only place counters are incremented.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Iterator

import numpy as np

from .rng import RngStream

NodeId = int

#: A node with no out-edges behaves as if it linked to every node.
DANGLING_UNIFORM_ALL = "uniform_all"

_HEADER_RE = re.compile(r"#\s*nodes\s*=\s*(\d+)\s*$")


class EdgeListError(ValueError):
    """Malformed edge-list input; carries the offending line number."""

    def __init__(self, message: str, line_no: int | None = None):
        super().__init__(message)
        self.line_no = line_no


@dataclass
class QueryLedger:
    """Counts of network probes; merge across workers by addition.

    ``walk_steps`` counts every step of a simulated restart walk, including
    the terminating one; ``crawls`` counts only steps that consulted the
    network, so ``walk_steps >= crawls`` always.
    """

    jumps: int = 0
    crawls: int = 0
    walk_steps: int = 0

    def reset(self) -> None:
        self.jumps = self.crawls = self.walk_steps = 0

    def merge(self, other: "QueryLedger") -> None:
        self.jumps += other.jumps
        self.crawls += other.crawls
        self.walk_steps += other.walk_steps

    def snapshot(self) -> dict[str, int]:
        return {"jumps": self.jumps, "crawls": self.crawls, "walk_steps": self.walk_steps}

    def delta_since(self, snap: dict[str, int]) -> dict[str, int]:
        return {k: v - snap[k] for k, v in self.snapshot().items()}


class DirectedGraph:
    """Immutable out-adjacency over dense node ids 0..n-1.

    Self-loops and parallel edges are kept with multiplicity and sampled
    accordingly.  Dangling nodes (no out-edges) are treated by every
    operation as if they linked to all n nodes; the edges are never
    materialized, a crawl from such a node simply draws a uniform node.
    """

    __slots__ = ("n", "out_offsets", "out_targets", "dangling_policy")

    def __init__(self, n: int, edges: Iterable[tuple[NodeId, NodeId]]):
        if n < 1:
            raise ValueError(f"graph needs at least one node, got n={n}")
        pairs = list(edges)
        counts = np.zeros(n + 1, dtype=np.int64)
        for u, v in pairs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            counts[u + 1] += 1
        offsets = np.cumsum(counts)
        targets = np.empty(len(pairs), dtype=np.int32)
        cursor = offsets[:-1].copy()
        for u, v in pairs:
            targets[cursor[u]] = v
            cursor[u] += 1
        offsets.setflags(write=False)
        targets.setflags(write=False)
        self.n = n
        self.out_offsets = offsets
        self.out_targets = targets
        self.dangling_policy = DANGLING_UNIFORM_ALL

    @property
    def num_arcs(self) -> int:
        return int(self.out_offsets[-1])

    def out_degree(self, v: NodeId) -> int:
        return int(self.out_offsets[v + 1] - self.out_offsets[v])

    def out_neighbors(self, v: NodeId) -> np.ndarray:
        """Read-only view of v's out-neighbor list (with multiplicity)."""
        return self.out_targets[self.out_offsets[v] : self.out_offsets[v + 1]]

    def edges(self) -> Iterator[tuple[NodeId, NodeId]]:
        for u in range(self.n):
            for v in self.out_neighbors(u):
                yield u, int(v)

    def dangling_nodes(self) -> np.ndarray:
        return np.nonzero(np.diff(self.out_offsets) == 0)[0]

    def __repr__(self) -> str:
        return f"DirectedGraph(n={self.n}, arcs={self.num_arcs})"


def jump(g: DirectedGraph, rng: RngStream, ledger: QueryLedger) -> NodeId:
    """Uniformly random node; charges one jump."""
    ledger.jumps += 1
    return rng.next_below(g.n)


def random_crawl(g: DirectedGraph, v: NodeId, rng: RngStream, ledger: QueryLedger) -> NodeId:
    """Uniformly random out-neighbor of v (with multiplicity); one crawl.

    On a dangling node the draw is uniform over all n nodes, which is the
    same distribution as materializing out-links to everything.
    """
    if not 0 <= v < g.n:
        raise ValueError(f"node {v} out of range for n={g.n}")
    ledger.crawls += 1
    deg = g.out_degree(v)
    if deg == 0:
        return rng.next_below(g.n)
    return int(g.out_targets[g.out_offsets[v] + rng.next_below(deg)])


def parse_edge_list(text: str) -> DirectedGraph:
    """Parse edge-list text: '#' comments, 'u v' or 'u<TAB>v' integer pairs.

    An optional header comment '# nodes=N' fixes the node count; otherwise
    n = max id + 1.  Edge multiset and per-source line order are preserved.
    """
    declared_n: int | None = None
    edges: list[tuple[int, int]] = []
    lines: list[int] = []
    max_id = -1
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _HEADER_RE.match(line)
            if m and declared_n is None:
                declared_n = int(m.group(1))
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListError(
                f"line {line_no}: expected two integers, got {raw!r}", line_no
            )
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(
                f"line {line_no}: expected two integers, got {raw!r}", line_no
            ) from None
        if u < 0 or v < 0:
            raise EdgeListError(f"line {line_no}: negative node id", line_no)
        edges.append((u, v))
        lines.append(line_no)
        if u > max_id:
            max_id = u
        if v > max_id:
            max_id = v
    if declared_n is None:
        if not edges:
            raise EdgeListError("empty edge list and no '# nodes=N' header")
        n = max_id + 1
    else:
        if declared_n < 1:
            raise EdgeListError("header declares an empty graph")
        n = declared_n
        if max_id >= n:
            bad = next(i for (u, v), i in zip(edges, lines) if u >= n or v >= n)
            raise EdgeListError(
                f"line {bad}: node id >= declared nodes={n}", bad
            )
    return DirectedGraph(n, edges)


def load_edge_list(source: str | Path | IO) -> DirectedGraph:
    """Load a graph from a path or an open text/binary stream."""
    if hasattr(source, "read"):
        data = source.read()
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        return parse_edge_list(data)
    return parse_edge_list(Path(source).read_text(encoding="utf-8"))


def write_edge_list(g: DirectedGraph, out: IO[str], comments: Iterable[str] = ()) -> None:
    """Write the standard edge-list format with a '# nodes=N' header."""
    out.write(f"# nodes={g.n}\n")
    for c in comments:
        out.write(f"# {c}\n")
    for u, v in g.edges():
        out.write(f"{u}\t{v}\n")

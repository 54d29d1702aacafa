"""Ground-truth PageRank and personalized PageRank by power iteration.

Dense and test-scale only.  The query-model estimators never call anything
in this module; it exists to produce reference values that estimator tests
and the acceptance harness compare against.

Conventions: a personalized row sums to 1; global PageRank sums to n (each
node's score is the sum of its column across all personalized rows).  The
iteration map is a contraction with factor (1 - alpha), so convergence is
geometric and the iterate after k rounds equals the length-<=k walk
contribution exactly. That makes truncated rows entrywise lower bounds of
the converged ones.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .graph import DirectedGraph, NodeId

SUM_TO_ONE = "sum_to_one"
SUM_TO_N = "sum_to_n"
TRUNCATED = "truncated"


class ConvergenceError(RuntimeError):
    """Power iteration failed to reach the requested residual."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


@dataclass
class ScoreVector:
    """Dense non-negative scores, one per node, tagged by normalization."""

    values: np.ndarray
    normalization: str

    def total(self) -> float:
        return float(self.values.sum())

    def __getitem__(self, v: NodeId) -> float:
        return float(self.values[v])

    def __len__(self) -> int:
        return len(self.values)


def _transition(g: DirectedGraph) -> tuple[sp.csr_matrix, np.ndarray]:
    """Transposed walk matrix P^T (so x.P is PT @ x) plus dangling mask."""
    n = g.n
    degs = np.diff(g.out_offsets)
    dangling = degs == 0
    src = np.repeat(np.arange(n, dtype=np.int64), degs)
    weights = 1.0 / degs[src]
    pt = sp.csr_matrix(
        (weights, (g.out_targets.astype(np.int64), src)), shape=(n, n)
    )
    return pt, dangling


def _iterate(pt: sp.csr_matrix, dangling: np.ndarray, b: np.ndarray, alpha: float,
             tol: float, max_iter: int) -> np.ndarray:
    n = b.shape[0]
    x = b.copy()
    residual = np.inf
    for _ in range(max_iter):
        flow = pt @ x
        if dangling.any():
            flow += x[dangling].sum() / n
        x_next = b + (1.0 - alpha) * flow
        residual = float(np.abs(x_next - x).sum())
        x = x_next
        if residual <= tol:
            return x
    raise ConvergenceError(
        f"no convergence after {max_iter} iterations (residual={residual:.3e})",
        residual,
    )


def exact_ppr_row(g: DirectedGraph, v: NodeId, alpha: float = 0.15,
                  tol: float = 1e-10, max_iter: int = 100_000) -> ScoreVector:
    """Personalized PageRank row of source v, converged to l1 residual tol."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if not 0 <= v < g.n:
        raise ValueError(f"node {v} out of range for n={g.n}")
    pt, dangling = _transition(g)
    b = np.zeros(g.n)
    b[v] = alpha
    return ScoreVector(_iterate(pt, dangling, b, alpha, tol, max_iter), SUM_TO_ONE)


def exact_pagerank(g: DirectedGraph, alpha: float = 0.15,
                   tol: float = 1e-10, max_iter: int = 100_000) -> ScoreVector:
    """Global PageRank, normalized to sum to n."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    pt, dangling = _transition(g)
    b = np.full(g.n, alpha)
    return ScoreVector(_iterate(pt, dangling, b, alpha, tol, max_iter), SUM_TO_N)


def truncated_ppr_row(g: DirectedGraph, v: NodeId, alpha: float, k: int) -> ScoreVector:
    """Contribution to v's personalized row from walks of length at most k.

    Entrywise below the converged row; the missing mass is exactly
    (1 - alpha)^(k + 1).
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    if not 0 <= v < g.n:
        raise ValueError(f"node {v} out of range for n={g.n}")
    pt, dangling = _transition(g)
    b = np.zeros(g.n)
    b[v] = alpha
    x = b.copy()
    for _ in range(k):
        flow = pt @ x
        if dangling.any():
            flow += x[dangling].sum() / g.n
        x = b + (1.0 - alpha) * flow
    return ScoreVector(x, TRUNCATED)


def scores_to_tsv(sv: ScoreVector) -> str:
    """TSV 'node<TAB>score', sorted by node id, 12 significant digits."""
    lines = [f"{i}\t{x:.12g}" for i, x in enumerate(sv.values)]
    return "\n".join(lines) + "\n"


def scores_to_json_dict(sv: ScoreVector, alpha: float) -> dict:
    return {
        "alpha": alpha,
        "normalization": sv.normalization,
        "scores": [float(x) for x in sv.values],
    }

"""sigrank: find every node with PageRank above a threshold using only
uniform-node and random-out-neighbor probes, with exact query accounting."""

__version__ = "0.1.0"

from .generators import PathStarSpec, gen_named, gen_path_star
from .graph import (
    DirectedGraph,
    EdgeListError,
    NodeId,
    QueryLedger,
    jump,
    load_edge_list,
    parse_edge_list,
    random_crawl,
    write_edge_list,
)
from .localppr import (
    PprEstimate,
    WalkOutcome,
    approx_row,
    simulate_walk,
    walk_count,
    walk_length_cap,
)
from .lowerbound import DiscoveryTrial, jump_discovery_trial, run_lower_bound_experiment
from .multiscale import (
    ChunkAccumulator,
    SignificantConfig,
    SignificantResult,
    chunk_assign,
    jump_budget,
    num_scales,
    reconstruct_scores,
    significant_pageranks,
    walk_step_budget,
)
from .oracle import (
    ConvergenceError,
    ScoreVector,
    exact_pagerank,
    exact_ppr_row,
    truncated_ppr_row,
)
from .rng import RngStream, derive_key

__all__ = [
    "DirectedGraph",
    "QueryLedger",
    "NodeId",
    "EdgeListError",
    "RngStream",
    "derive_key",
    "jump",
    "random_crawl",
    "load_edge_list",
    "parse_edge_list",
    "write_edge_list",
    "ScoreVector",
    "ConvergenceError",
    "exact_ppr_row",
    "exact_pagerank",
    "truncated_ppr_row",
    "WalkOutcome",
    "PprEstimate",
    "simulate_walk",
    "approx_row",
    "walk_count",
    "walk_length_cap",
    "ChunkAccumulator",
    "SignificantConfig",
    "SignificantResult",
    "chunk_assign",
    "reconstruct_scores",
    "significant_pageranks",
    "num_scales",
    "jump_budget",
    "walk_step_budget",
    "PathStarSpec",
    "gen_path_star",
    "gen_named",
    "DiscoveryTrial",
    "jump_discovery_trial",
    "run_lower_bound_experiment",
    "__version__",
]

"""Command-line entry point wiring generators, oracle, estimators, benchmarks.

Every invocation emits the result payload to stdout (or --out) and a
single-line JSON run manifest to stderr (or --manifest) carrying the
parameters, seed, probe totals, and wall-clock time.  Identical argv
reproduces byte-identical payloads; --threads changes speed only.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
import time

from . import __version__
from .generators import (
    NAMED_KINDS,
    UNIFORM_RANDOM,
    gen_named,
    gen_path_star,
)
from .graph import (
    EdgeListError,
    QueryLedger,
    load_edge_list,
    write_edge_list,
)
from .localppr import approx_row
from .lowerbound import run_lower_bound_experiment
from .multiscale import (
    PAPER_LITERAL,
    SUM_SCALE,
    SignificantConfig,
    significant_pageranks,
)
from .oracle import exact_pagerank, exact_ppr_row, scores_to_json_dict, scores_to_tsv

GEN_KINDS = ("path-star",) + NAMED_KINDS


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # raise instead of exiting so run() can map usage problems to code 1
    def error(self, message):
        raise _UsageError(message)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=0.15)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the result payload here instead of stdout")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--threads", type=int, default=0,
                   help="worker threads for walk batches; affects speed only")
    p.add_argument("--const-scale", type=float, default=1.0,
                   help="uniform scaling of sampling constants (testing knob)")
    p.add_argument("--manifest", help="write the run manifest here instead of stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sigrank")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("gen", help="emit a generated graph as an edge list")
    p.add_argument("kind", choices=GEN_KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=float, help="threshold (path-star only)")
    p.add_argument("--m", type=int, default=0, help="arc count (uniform-random only)")
    _add_common(p)

    p = sub.add_parser("exact", help="converged scores by power iteration")
    p.add_argument("graph", help="edge-list file")
    p.add_argument("--source", type=int, default=None,
                   help="emit this node's personalized row instead of PageRank")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=100_000)
    _add_common(p)

    p = sub.add_parser("approx-row", help="Monte-Carlo personalized-row estimate")
    p.add_argument("graph", help="edge-list file")
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--rho", type=float, required=True)
    _add_common(p)

    p = sub.add_parser("significant", help="all nodes with PageRank above a threshold")
    p.add_argument("graph", help="edge-list file")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--mode", choices=(SUM_SCALE, PAPER_LITERAL), default=SUM_SCALE)
    _add_common(p)

    p = sub.add_parser("bench-lower-bound", help="jump cost of finding the star component")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--trials", type=int, default=2000)
    _add_common(p)

    return parser


def _set_threads(threads: int) -> None:
    if threads > 0:
        import numba

        numba.set_num_threads(max(1, min(threads, numba.config.NUMBA_NUM_THREADS)))


def _cmd_gen(args, ledger: QueryLedger) -> str:
    comments = []
    if args.kind == "path-star":
        if args.delta is None:
            raise _UsageError("gen path-star requires --delta")
        g, spec = gen_path_star(args.n, args.delta)
        comments.append(f"hub={spec.hub_id}")
    else:
        if args.kind == UNIFORM_RANDOM and args.m <= 0:
            raise _UsageError("gen uniform-random requires --m")
        g = gen_named(args.kind, args.n, m=args.m, seed=args.seed)
    buf = io.StringIO()
    write_edge_list(g, buf, comments)
    return buf.getvalue()


def _cmd_exact(args, ledger: QueryLedger) -> str:
    g = load_edge_list(args.graph)
    if args.source is None:
        sv = exact_pagerank(g, args.alpha, args.tol, args.max_iter)
    else:
        sv = exact_ppr_row(g, args.source, args.alpha, args.tol, args.max_iter)
    if args.format == "json":
        return json.dumps(scores_to_json_dict(sv, args.alpha)) + "\n"
    return scores_to_tsv(sv)


def _cmd_approx_row(args, ledger: QueryLedger) -> str:
    g = load_edge_list(args.graph)
    est = approx_row(
        g, args.source, args.epsilon, args.rho, args.alpha,
        seed=args.seed, ledger=ledger,
        walks_const=16.0 * args.const_scale,
    )
    if args.format == "json":
        payload = {
            "source": est.source,
            "alpha": est.alpha,
            "epsilon": est.epsilon,
            "rho": est.rho,
            "walks": est.walks_run,
            "cap": est.walk_length_cap,
            "steps": ledger.walk_steps,
            "crawls": ledger.crawls,
            "entries": [
                {"node": u, "estimate": val}
                for u, val in sorted(est.entries.items())
            ],
        }
        return json.dumps(payload) + "\n"
    lines = [f"{u}\t{val:.12g}" for u, val in sorted(est.entries.items())]
    lines.append(
        f"# walks={est.walks_run} cap={est.walk_length_cap} "
        f"steps={ledger.walk_steps} crawls={ledger.crawls}"
    )
    return "\n".join(lines) + "\n"


def _cmd_significant(args, ledger: QueryLedger) -> str:
    g = load_edge_list(args.graph)
    cfg = SignificantConfig(reconstruction_mode=args.mode).scaled(args.const_scale)
    result = significant_pageranks(
        g, args.delta, args.alpha, seed=args.seed, cfg=cfg, ledger=ledger
    )
    return json.dumps(result.to_json_dict()) + "\n"


def _cmd_bench(args, ledger: QueryLedger) -> str:
    summary = run_lower_bound_experiment(args.n, args.delta, args.trials, args.seed)
    return json.dumps(summary) + "\n"


_DISPATCH = {
    "gen": _cmd_gen,
    "exact": _cmd_exact,
    "approx-row": _cmd_approx_row,
    "significant": _cmd_significant,
    "bench-lower-bound": _cmd_bench,
}

_MANIFEST_SKIP = {"out", "manifest", "subcommand"}


def _manifest(args, ledger: QueryLedger, wall_ms: float) -> str:
    params = {
        k.replace("_", "-"): v
        for k, v in sorted(vars(args).items())
        if k not in _MANIFEST_SKIP and v is not None
    }
    doc = {
        "subcommand": args.subcommand,
        "params": params,
        "seed": getattr(args, "seed", None),
        "jumps": ledger.jumps,
        "crawls": ledger.crawls,
        "walk_steps": ledger.walk_steps,
        "wall_ms": round(wall_ms, 3),
        "version": __version__,
    }
    return json.dumps(doc)


def run(argv: list[str] | None = None) -> int:
    """Execute one subcommand; returns 0, 1 (usage), or 2 (runtime failure)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help and friends
        return 0 if exc.code in (0, None) else 1

    ledger = QueryLedger()
    started = time.monotonic()
    try:
        _set_threads(args.threads)
        payload = _DISPATCH[args.subcommand](args, ledger)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (EdgeListError, OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    wall_ms = (time.monotonic() - started) * 1e3

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    manifest = _manifest(args, ledger, wall_ms)
    if args.manifest:
        with open(args.manifest, "w", encoding="utf-8") as fh:
            fh.write(manifest + "\n")
    else:
        print(manifest, file=sys.stderr)
    return 0


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()

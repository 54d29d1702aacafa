"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s`.  The end-to-end detection
runs (criteria 5-7) use full sampling constants and take a few minutes.
"""

import math
import time

import numpy as np
import pytest

from sigrank import (
    approx_row,
    exact_pagerank,
    exact_ppr_row,
    gen_named,
    gen_path_star,
    jump_budget,
    run_lower_bound_experiment,
    significant_pageranks,
    truncated_ppr_row,
    walk_step_budget,
    QueryLedger,
    SignificantConfig,
)
from sigrank.cli import run as cli_run

from conftest import oracle_fixture_graphs

ALPHA = 0.15


def report(criterion: int, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"\n[acceptance] criterion {criterion}: {status} - {detail}")
    assert ok, f"criterion {criterion}: {detail}"


# -- shared expensive runs ---------------------------------------------------

@pytest.fixture(scope="module")
def approx_runs():
    """Criterion 2/3 grid: 4 graphs x 50 seeds of approx_row(eps=.1, rho=.25)."""
    graphs = {
        "two_cycle": gen_named("directed-cycle", 2),
        "three_cycle": gen_named("directed-cycle", 3),
        "star_50": gen_named("directed-star", 50),
        "uniform_200_800": gen_named("uniform-random", 200, m=800, seed=0),
    }
    eps, rho = 0.1, 0.25
    started = time.monotonic()
    out = {}
    for name, g in graphs.items():
        source = 0
        exact = exact_ppr_row(g, source, ALPHA).values
        runs = []
        for seed in range(50):
            led = QueryLedger()
            est = approx_row(g, source, eps, rho, ALPHA, seed=seed, ledger=led)
            runs.append((est, led.snapshot()))
        out[name] = (g, source, exact, runs)
    elapsed = time.monotonic() - started
    return out, eps, rho, elapsed


@pytest.fixture(scope="module")
def detection_runs():
    """Criterion 5/6 runs: path-star n=2000, delta=50, 10 seeds, full constants."""
    n, delta = 2000, 50.0
    g, spec = gen_path_star(n, delta)
    oracle = exact_pagerank(g, ALPHA)
    cfg = SignificantConfig()
    started = time.monotonic()
    runs = []
    for seed in range(10):
        res = significant_pageranks(g, delta, ALPHA, seed=seed, cfg=cfg)
        runs.append(res)
    elapsed = time.monotonic() - started
    return dict(n=n, delta=delta, spec=spec, oracle=oracle, cfg=cfg,
                runs=runs, elapsed=elapsed)


# -- criteria ----------------------------------------------------------------

def test_criterion_1_oracle_identities():
    started = time.monotonic()
    graphs = oracle_fixture_graphs()
    assert all(g.n <= 300 for g in graphs.values())
    worst_row = worst_pr = worst_col = 0.0
    for name, g in graphs.items():
        rows = np.zeros(g.n)
        for v in range(g.n):
            row = exact_ppr_row(g, v, ALPHA).values
            worst_row = max(worst_row, abs(row.sum() - 1.0))
            rows += row
        pr = exact_pagerank(g, ALPHA)
        worst_pr = max(worst_pr, abs(pr.total() - g.n))
        worst_col = max(worst_col, float(np.abs(rows - pr.values).max()))
    elapsed = time.monotonic() - started
    ok = worst_row <= 1e-8 and worst_pr <= 1e-6 and worst_col <= 1e-6 and elapsed < 10
    report(1, ok,
           f"10 fixtures: row-sum err {worst_row:.2e} (<=1e-8), "
           f"pagerank-sum err {worst_pr:.2e} (<=1e-6), "
           f"column-identity err {worst_col:.2e} (<=1e-6), {elapsed:.1f}s (<10s)")


def test_criterion_2_approx_row_contract(approx_runs):
    data, eps, rho, elapsed = approx_runs
    in_bracket = 0
    bracket_total = 0
    missed_heavy = 0
    for name, (g, source, exact, runs) in data.items():
        heavy = np.nonzero(exact > eps)[0]
        for est, _ in runs:
            for u in heavy:
                bracket_total += 1
                p = exact[u]
                if (1 - rho) * p - eps / 4 <= est.get(int(u)) <= (1 + rho) * p:
                    in_bracket += 1
            for u in np.nonzero(exact > eps / 2)[0]:
                if int(u) not in est.entries:
                    missed_heavy += 1
    frac = in_bracket / bracket_total
    ok = frac >= 0.95 and missed_heavy == 0 and elapsed < 120
    report(2, ok,
           f"{in_bracket}/{bracket_total} (seed,node) pairs in bracket "
           f"({frac:.1%} >= 95%), unlisted nodes above eps/2: {missed_heavy} (=0), "
           f"{elapsed:.1f}s (<120s)")


def test_criterion_3_approx_row_budget(approx_runs):
    data, eps, rho, _ = approx_runs
    violations = 0
    checked = 0
    for name, (g, source, exact, runs) in data.items():
        r_bound = math.ceil(16 * math.log2(g.n) / (eps * rho**2))
        cap_bound = math.ceil(math.log(4 / eps) / math.log(1 / (1 - ALPHA)))
        for est, ledger in runs:
            checked += 1
            if ledger["crawls"] > r_bound * cap_bound:
                violations += 1
    ok = violations == 0
    report(3, ok, f"crawls <= ceil(16 log2(n)/(eps rho^2)) * ceil(log(4/eps)) "
                  f"in {checked - violations}/{checked} calls")


def test_criterion_4_truncation_bound():
    graphs = oracle_fixture_graphs()
    worst_slack = -np.inf
    for name, g in graphs.items():
        exact = exact_ppr_row(g, 0, ALPHA).values
        for k in (1, 5, 20):
            trunc = truncated_ppr_row(g, 0, ALPHA, k).values
            l1 = float(np.abs(exact - trunc).sum())
            bound = (1 - ALPHA) ** (k + 1)
            worst_slack = max(worst_slack, l1 - bound)
    ok = worst_slack <= 0
    report(4, ok, f"||exact - truncated(k)||_1 - (1-a)^(k+1) <= {worst_slack:.2e} "
                  f"for k in {{1,5,20}} on 10 fixtures")


def test_criterion_5_significant_end_to_end(detection_runs):
    d = detection_runs
    hub = d["spec"].hub_id
    hub_pr = d["oracle"][hub]
    slack = d["delta"] / (2 * math.log2(d["n"]))
    lo, hi = hub_pr / 4 - slack, 2 * hub_pr + slack
    hub_hits = 0
    unsound = []
    bracket_bad = []
    for res in d["runs"]:
        if hub in res.members:
            hub_hits += 1
            if not lo <= res.members[hub] <= hi:
                bracket_bad.append(res.members[hub])
        for u in res.members:
            if d["oracle"][u] < d["delta"] / 6:
                unsound.append(u)
    ok = (hub_hits >= 9 and not unsound and not bracket_bad
          and d["elapsed"] < 600)
    report(5, ok,
           f"hub emitted {hub_hits}/10 (>=9), members below delta/6: {len(unsound)} (=0), "
           f"hub estimates within [{lo:.2f}, {hi:.2f}] (oracle {hub_pr:.2f}), "
           f"{d['elapsed']:.0f}s (<600s)")


def test_criterion_6_detection_query_budget(detection_runs):
    d = detection_runs
    n, delta, cfg = d["n"], d["delta"], d["cfg"]
    jump_cap = 8 * (n / delta) * math.log2(n) ** 2
    exact_jumps = jump_budget(n, delta, cfg)
    step_cap = walk_step_budget(n, delta, ALPHA, cfg)
    ok = True
    for res in d["runs"]:
        ok &= res.jumps == exact_jumps
        ok &= res.jumps <= jump_cap
        ok &= res.walk_steps <= step_cap
        ok &= res.crawls <= res.walk_steps
    report(6, ok,
           f"all 10 runs: jumps = {exact_jumps} (closed form, <= {jump_cap:.0f}), "
           f"walk_steps <= {step_cap} (closed form)")


def test_criterion_7_negative_control():
    g = gen_named("self-loops", 1024)
    nonempty = 0
    for seed in range(20):
        res = significant_pageranks(g, 512.0, ALPHA, seed=seed)
        if res.members:
            nonempty += 1
    ok = nonempty == 0
    report(7, ok, f"self-loop n=1024 delta=512: member set empty in {20 - nonempty}/20 runs")


def test_criterion_8_lower_bound_statistics():
    started = time.monotonic()
    summary = run_lower_bound_experiment(10_000, 50, trials=2000, seed=11)
    elapsed = time.monotonic() - started
    star = summary["star_size"]
    budget = summary["budget"]
    expected_rate = 1 - (1 - star / 10_000) ** budget
    rate_err = abs(summary["found_rate"] - expected_rate)
    mean_target = 10_000 / star
    mean_err = abs(summary["mean_queries"] - mean_target) / mean_target
    ok = rate_err <= 0.04 and mean_err <= 0.10 and elapsed < 30
    report(8, ok,
           f"found-rate {summary['found_rate']:.3f} vs {expected_rate:.3f} "
           f"(err {rate_err:.3f} <= 0.04), mean queries {summary['mean_queries']:.1f} "
           f"vs {mean_target:.1f} (err {mean_err:.1%} <= 10%), {elapsed:.1f}s (<30s)")


def test_criterion_9_thread_count_determinism(tmp_path):
    gpath = tmp_path / "ps.tsv"
    assert cli_run(["gen", "path-star", "--n", "200", "--delta", "8",
                    "--out", str(gpath), "--manifest", str(tmp_path / "mg")]) == 0
    commands = {
        "gen-uniform-random": ["gen", "uniform-random", "--n", "100", "--m", "300",
                               "--seed", "3"],
        "approx-row": ["approx-row", str(gpath), "--source", "0",
                       "--epsilon", "0.1", "--rho", "0.25", "--seed", "5"],
        "significant": ["significant", str(gpath), "--delta", "8", "--seed", "5",
                        "--const-scale", "0.25"],
        "bench-lower-bound": ["bench-lower-bound", "--n", "2000", "--delta", "20",
                              "--trials", "200", "--seed", "5"],
    }
    mismatched = []
    for name, argv in commands.items():
        payloads = []
        for threads in ("1", "2"):
            out = tmp_path / f"{name}-t{threads}.out"
            rc = cli_run(argv + ["--threads", threads, "--out", str(out),
                                 "--manifest", str(tmp_path / f"{name}-t{threads}.m")])
            assert rc == 0
            payloads.append(out.read_bytes())
        if payloads[0] != payloads[1]:
            mismatched.append(name)
    ok = not mismatched
    report(9, ok, f"byte-identical payloads across --threads for "
                  f"{len(commands) - len(mismatched)}/{len(commands)} randomized subcommands")

import pytest

from sigrank import DirectedGraph, gen_named, gen_path_star


@pytest.fixture
def two_cycle():
    return DirectedGraph(2, [(0, 1), (1, 0)])


@pytest.fixture
def three_cycle():
    return gen_named("directed-cycle", 3)


@pytest.fixture
def self_loop_single():
    return DirectedGraph(1, [(0, 0)])


def oracle_fixture_graphs():
    """Ten small graphs covering cycles, stars, paths, dangling and
    parallel edges; every oracle identity test runs over all of them."""
    graphs = {
        "two_cycle": DirectedGraph(2, [(0, 1), (1, 0)]),
        "three_cycle": gen_named("directed-cycle", 3),
        "self_loops_4": gen_named("self-loops", 4),
        "cycle_7": gen_named("directed-cycle", 7),
        "star_10": gen_named("directed-star", 10),
        "star_50": gen_named("directed-star", 50),
        "path_star_20_4": gen_path_star(20, 4)[0],
        "path_star_60_6": gen_path_star(60, 6)[0],
        "uniform_100_400": gen_named("uniform-random", 100, m=400, seed=3),
        "dangling_parallel": DirectedGraph(6, [(0, 1), (0, 1), (5, 0), (2, 2)]),
    }
    assert len(graphs) == 10
    return graphs


@pytest.fixture(scope="session")
def fixture_graphs():
    return oracle_fixture_graphs()

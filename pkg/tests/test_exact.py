import random

import pytest

from helpers import atlas_connected, min_rcds_oracle, random_connected
from rcds.bench import load_bundled
from rcds.exact import (
    BRUTE_FORCE_LIMIT,
    Infeasible,
    SizeGuardError,
    bnb_min_rcds,
    brute_force_min_rcds,
    min_connected_dominating_set,
    min_dominating_set,
)
from rcds.graph import DomainError, Graph, cycle_graph, path_graph, star_graph
from rcds.protection import is_perfect_protection, is_rcds


def test_brute_force_examples(c6):
    r = brute_force_min_rcds(c6)
    assert r.cardinality == 3 and is_rcds(c6, r.optimum)
    assert r.optimum == (1, 2, 4)
    assert brute_force_min_rcds(path_graph(2)).optimum == (1,)
    assert brute_force_min_rcds(star_graph(5)).optimum == (1,)


def test_brute_force_limits(c6):
    with pytest.raises(Infeasible):
        brute_force_min_rcds(c6, max_card=2)
    big = star_graph(BRUTE_FORCE_LIMIT)
    assert big.n == BRUTE_FORCE_LIMIT + 1
    with pytest.raises(SizeGuardError):
        brute_force_min_rcds(big)
    assert brute_force_min_rcds(big, max_card=2).optimum == (1,)


def test_disconnected_rejected():
    g = Graph.from_edges([(1, 2), (3, 4)])
    for solve in (brute_force_min_rcds, bnb_min_rcds, min_connected_dominating_set):
        with pytest.raises(DomainError):
            solve(g)


def test_bnb_examples(c6):
    assert bnb_min_rcds(c6).cardinality == 3
    assert bnb_min_rcds(load_bundled("ieee14")).cardinality == 4


def test_dominating_set_examples(c6):
    assert min_dominating_set(c6).cardinality == 2
    assert min_dominating_set(load_bundled("ieee14")).cardinality == 4
    assert min_dominating_set(star_graph(5)).optimum == (1,)


def test_connected_dominating_set_examples(c6):
    assert min_connected_dominating_set(c6).cardinality == 4
    assert min_connected_dominating_set(path_graph(2)).cardinality == 1
    assert min_connected_dominating_set(path_graph(5)).optimum == (2, 3, 4)


def test_solve_result_json(c6):
    r = bnb_min_rcds(c6)
    d = r.to_dict()
    assert d["cardinality"] == 3 and d["method"] == "bnb" and len(d["set"]) == 3
    assert '"cardinality": 3' in r.to_json()


def test_bnb_matches_oracle_exhaustive():
    for g in atlas_connected(6, 2):
        r = bnb_min_rcds(g)
        assert r.cardinality == min_rcds_oracle(g), g.sorted_edges()
        assert is_perfect_protection(g, r.optimum) and is_rcds(g, r.optimum)


def test_bnb_matches_brute_force_sampled():
    rng = random.Random(7)
    for _ in range(150):
        g = random_connected(rng, rng.randint(7, 12), extra=rng.uniform(0.2, 1.0))
        assert bnb_min_rcds(g).cardinality == brute_force_min_rcds(g).cardinality


def test_pendant_rule_cases():
    # a star of paths: supports are forced, leaves excluded
    g = Graph.from_edges([(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)])
    assert bnb_min_rcds(g).cardinality == brute_force_min_rcds(g).cardinality == 3
    assert bnb_min_rcds(path_graph(3)).cardinality == 1


def test_tiny_graphs():
    one = Graph.from_edges([], vertices=[5])
    assert bnb_min_rcds(one).optimum == ()
    assert min_dominating_set(one).optimum == (5,)
    assert bnb_min_rcds(cycle_graph(3)).cardinality == 1

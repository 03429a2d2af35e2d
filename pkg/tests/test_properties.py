"""Invariants checked on generated graphs."""
import random

import networkx as nx
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from helpers import nx_graph, perfect_oracle, random_connected, random_planar
from rcds.dp import dp_recursion, solve_planar_rcds
from rcds.exact import (
    bnb_min_rcds,
    brute_force_min_rcds,
    min_connected_dominating_set,
    min_dominating_set,
)
from rcds.graph import Graph, connected_components, incident_edges, parse_edge_list
from rcds.milp import build_milp, witness
from rcds.planar import planarity_embed, planarize
from rcds.protection import construct_stealth_attack, is_perfect_protection, is_rcds, verify_attack
from rcds.scd import heuristic_sphere_cut, root_decomposition, validate

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def graphs(draw, min_n=1, max_n=9, connected=True):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    extra = draw(st.floats(0.0, 1.5))
    rng = random.Random(seed)
    if connected:
        if n == 1:
            return Graph.from_edges([], vertices=[1])
        return random_connected(rng, n, extra)
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < extra / 2]
    return Graph.from_edges(edges, vertices=range(1, n + 1))


@st.composite
def graph_and_subset(draw, **kw):
    g = draw(graphs(**kw))
    D = draw(st.sets(st.sampled_from(g.vertices)))
    return g, D


@st.composite
def planar_graphs(draw, min_n=3, max_n=10):
    n = draw(st.integers(min_n, max_n))
    return random_planar(random.Random(draw(st.integers(0, 2 ** 32 - 1))), n)


@SETTINGS
@given(graphs(connected=False), st.data())
def test_incident_edges_distribute_over_union(g, data):
    U1 = data.draw(st.sets(st.sampled_from(g.vertices)))
    U2 = data.draw(st.sets(st.sampled_from(g.vertices)))
    assert incident_edges(g, U1 | U2) == incident_edges(g, U1) | incident_edges(g, U2)


@SETTINGS
@given(graphs(connected=False))
def test_components_partition_vertices(g):
    comps = connected_components(g, g.edges)
    flat = sorted(v for c in comps for v in c)
    assert flat == list(g.vertices)
    assert (len(comps) == 1) == g.is_connected() == nx.is_connected(nx_graph(g))
    assert sorted(map(sorted, nx.connected_components(nx_graph(g)))) == sorted(map(list, comps))


@SETTINGS
@given(graphs(min_n=2, connected=False))
def test_edge_list_round_trip(g):
    assume(g.m > 0)
    h = parse_edge_list(g.to_edge_list())
    assert h.edges == g.edges
    assert parse_edge_list(h.to_edge_list()) == h


@SETTINGS
@given(graph_and_subset(min_n=2, max_n=12))
def test_two_characterizations_agree(gD):
    g, D = gD
    assert is_perfect_protection(g, D) == is_rcds(g, D) == perfect_oracle(g, D)


@SETTINGS
@given(graph_and_subset(min_n=2, max_n=12), st.data())
def test_supersets_stay_perfect(gD, data):
    g, D = gD
    assume(is_perfect_protection(g, D))
    more = data.draw(st.sets(st.sampled_from(g.vertices)))
    assert is_perfect_protection(g, D | more)


@SETTINGS
@given(graph_and_subset(min_n=2, max_n=12))
def test_attack_iff_not_perfect(gD):
    g, D = gD
    a = construct_stealth_attack(g, D)
    if is_perfect_protection(g, D):
        assert a is None
    else:
        assert a is not None and verify_attack(g, D, a)


@SETTINGS
@given(graphs(min_n=2, max_n=10))
def test_sandwich_and_solver_agreement(g):
    ds = min_dominating_set(g).cardinality
    r = bnb_min_rcds(g)
    cds = min_connected_dominating_set(g).cardinality
    assert ds <= r.cardinality <= cds
    assert r.cardinality == brute_force_min_rcds(g).cardinality
    assert is_rcds(g, r.optimum) and is_perfect_protection(g, r.optimum)


@SETTINGS
@given(graphs(min_n=2, max_n=14))
def test_milp_witness_for_optimum(g):
    D = bnb_min_rcds(g).optimum
    m = build_milp(g)
    x, y = witness(m, g, D)
    assert m.violations(x, y) == [] and m.objective(x) == len(D)


@SETTINGS
@given(graphs(min_n=2, max_n=9))
def test_planarization_upper_bound(g):
    pr = planarize(g)
    assert pr.planar_graph.edges == g.edges - pr.removed_edges
    assert pr.planar_graph.is_connected()
    assert planarize(pr.planar_graph).removed_edges == frozenset()
    opt = brute_force_min_rcds(g).cardinality
    assert brute_force_min_rcds(pr.planar_graph).cardinality >= opt
    assert solve_planar_rcds(g).cardinality >= opt


@SETTINGS
@given(planar_graphs())
def test_embedding_faces_partition_darts(g):
    emb = planarity_embed(g)
    darts = [d for f in emb.faces for d in f]
    assert len(darts) == len(set(darts)) == 2 * g.m
    assert g.n - g.m + len(emb.faces) == 2


@SETTINGS
@given(planar_graphs(), st.integers(0, 1000))
def test_dp_value_independent_of_decomposition(g, seed):
    assume(g.m >= 3)
    emb = planarity_embed(g)
    values = set()
    for d in (heuristic_sphere_cut(emb), heuristic_sphere_cut(emb, seed=seed)):
        assert validate(emb, d).ok
        for attach in (d.tree_edges[0], d.tree_edges[-1]):
            values.add(dp_recursion(root_decomposition(d, attach)).root_value)
    assert values == {brute_force_min_rcds(g).cardinality}

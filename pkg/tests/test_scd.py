import json
import random

import pytest

from helpers import disc_drawable, random_planar
from rcds.bench import load_bundled
from rcds.graph import DomainError, Graph, path_graph, star_graph
from rcds.planar import planarity_embed
from rcds.scd import (
    DecompositionError,
    canonical_cycle,
    context_from_sets,
    export_lines,
    find_noose,
    heuristic_sphere_cut,
    import_decomposition,
    merge_context,
    root_decomposition,
    validate,
)

# the ring split into the paths 1-2-3-4 and 4-5-6-1
RING_SPLIT = {
    "nodes": [
        {"id": 0, "leaf_edge": [1, 2], "children": [6]},
        {"id": 1, "leaf_edge": [2, 3], "children": [6]},
        {"id": 2, "leaf_edge": [3, 4], "children": [7]},
        {"id": 3, "leaf_edge": [4, 5], "children": [9]},
        {"id": 4, "leaf_edge": [5, 6], "children": [9]},
        {"id": 5, "leaf_edge": [1, 6], "children": [8]},
        {"id": 6, "children": [0, 1, 7]},
        {"id": 7, "children": [6, 2, 8]},
        {"id": 8, "children": [7, 9, 5]},
        {"id": 9, "children": [8, 3, 4]},
    ]
}


def test_hand_decomposition_of_ring(c6):
    emb = planarity_embed(c6)
    d = import_decomposition(c6, emb, json.dumps(RING_SPLIT))
    assert d.width == 2
    assert d.middle[(7, 8)] == {1, 4}
    rep = validate(emb, d)
    assert rep.ok and rep.width == 2


def test_round_trips(c6):
    emb = planarity_embed(c6)
    d = heuristic_sphere_cut(emb)
    e = import_decomposition(c6, emb, d.to_json())
    assert (e.adj, e.leaf_edge, e.middle, e.pi) == (d.adj, d.leaf_edge, d.middle, d.pi)
    f = import_decomposition(c6, emb, export_lines(d))
    assert (f.middle, f.pi, f.leaf_edge) == (d.middle, d.pi, d.leaf_edge)


def test_missing_edge_is_bijection_error(c6):
    emb = planarity_embed(c6)
    broken = json.loads(json.dumps(RING_SPLIT))
    broken["nodes"][5]["leaf_edge"] = [1, 2]
    with pytest.raises(DecompositionError):
        import_decomposition(c6, emb, broken)


def test_leaf_mapped_twice_in_lines(c6):
    emb = planarity_embed(c6)
    text = "t 0 6\nl 0 1 2\nl 0 2 3\n"
    with pytest.raises(DecompositionError):
        import_decomposition(c6, emb, text)


def test_non_binary_tree_reported(c6):
    emb = planarity_embed(c6)
    d = heuristic_sphere_cut(emb)
    bad = json.loads(d.to_json())
    # hang an extra leaf off an internal node
    internal = next(n for n in bad["nodes"] if "leaf_edge" not in n)
    internal["children"].append(99)
    bad["nodes"].append({"id": 99, "leaf_edge": [1, 2], "children": [internal["id"]]})
    with pytest.raises(DecompositionError):
        import_decomposition(c6, emb, bad)


def test_wrong_cyclic_order_rejected():
    g = load_bundled("ieee118")
    emb = planarity_embed(g)
    d = heuristic_sphere_cut(emb)
    data = json.loads(d.to_json())
    key, order = next((k, v) for k, v in data["pi"].items() if len(v) >= 4)
    order[1], order[2] = order[2], order[1]
    with pytest.raises(DecompositionError):
        import_decomposition(g, emb, data)


def test_heuristic_small_cases(c6):
    assert heuristic_sphere_cut(planarity_embed(c6)).width == 2
    for tree in (path_graph(7), star_graph(6),
                 Graph.from_edges([(1, 2), (2, 3), (2, 4), (4, 5), (4, 6), (6, 7)])):
        d = heuristic_sphere_cut(planarity_embed(tree))
        assert d.width <= 2
        assert validate(planarity_embed(tree), d).ok


def test_heuristic_on_ieee14():
    emb = planarity_embed(load_bundled("ieee14"))
    d = heuristic_sphere_cut(emb)
    assert d.width >= 2
    assert validate(emb, d).ok


def test_seeds_give_other_valid_trees():
    emb = planarity_embed(load_bundled("ieee30"))
    trees = {json.dumps(heuristic_sphere_cut(emb, seed=s).to_dict(), sort_keys=True)
             for s in (None, 1, 2)}
    assert len(trees) >= 2
    for s in (None, 1, 2):
        assert validate(emb, heuristic_sphere_cut(emb, seed=s)).ok


def test_noose_orders_are_disc_drawable():
    rng = random.Random(11)
    graphs = [load_bundled("ieee14"), load_bundled("ieee30")]
    graphs += [random_planar(rng, rng.randint(5, 12)) for _ in range(40)]
    for g in graphs:
        d = heuristic_sphere_cut(planarity_embed(g))
        for a, b in d.tree_edges:
            order = d.pi[(a, b)]
            assert set(order) == d.middle[(a, b)]
            assert disc_drawable(d.side(a, b), order)
            assert disc_drawable(d.side(b, a), order)


def test_find_noose_on_ring(c6):
    emb = planarity_embed(c6)
    nz = find_noose(emb, {(1, 2), (2, 3)})
    assert nz is not None and canonical_cycle(nz.order) == (1, 3)
    # cutting off two separated ring edges would enter each face twice
    assert find_noose(emb, {(1, 2), (4, 5)}) is None
    assert find_noose(emb, {(1, 2), (3, 4)}) is None


def test_canonical_cycle():
    assert canonical_cycle([3, 1, 2]) == (1, 2, 3)
    assert canonical_cycle([3, 2, 1]) == (1, 2, 3)
    assert canonical_cycle([2, 4, 1, 3]) == (1, 3, 2, 4)


def test_merge_context_from_sets():
    ctx = context_from_sets({1, 4, 3, 5}, {1, 2, 3, 4}, {1, 2, 3, 5})
    assert (ctx.X1, ctx.X2, ctx.X3, ctx.X4) == ({4}, {5}, {1, 3}, {2})
    ctx = context_from_sets(set(), {1, 2}, {1, 2})
    assert (ctx.X1, ctx.X2, ctx.X3, ctx.X4) == (set(), set(), set(), {1, 2})
    ctx = context_from_sets({1, 2}, {1, 2}, {1, 2})
    assert ctx.X4 == set() and ctx.X3 == {1, 2}


def test_rooting():
    g = load_bundled("ieee14")
    d = heuristic_sphere_cut(planarity_embed(g))
    rs = root_decomposition(d)
    assert len(rs.edges) == len(d.tree_edges) + 2
    assert rs.middle[rs.z] == frozenset() and rs.parent[rs.z] == rs.root
    u, v = rs.children[rs.z]
    assert rs.middle[u] == rs.middle[v] == d.middle[d.tree_edges[0]]
    ctx = merge_context(rs, rs.z)
    assert ctx.X1 == ctx.X2 == ctx.X3 == frozenset()
    for c in rs.edges:
        ch = rs.children[c]
        assert len(ch) in (0, 2)
        if ch:
            assert rs.subgraph_edges(c) == rs.subgraph_edges(ch[0]) | rs.subgraph_edges(ch[1])
            ctx = merge_context(rs, c)
            w, w1, w2 = rs.middle[c], rs.middle[ch[0]], rs.middle[ch[1]]
            assert ctx.X3 | ctx.X4 == w1 & w2
            assert not (ctx.X3 & ctx.X4)
            # nobody sits in exactly one of the three middle sets
            assert all((x in w) + (x in w1) + (x in w2) != 1 for x in w | w1 | w2)
        else:
            with pytest.raises(DomainError):
                merge_context(rs, c)
    assert sorted(rs.subgraph_edges(rs.z)) == g.sorted_edges()


def test_rooting_at_chosen_edge():
    d = heuristic_sphere_cut(planarity_embed(load_bundled("ieee9")))
    te = d.tree_edges[-1]
    rs = root_decomposition(d, te)
    assert rs.middle[rs.children[rs.z][0]] == d.middle[te]
    with pytest.raises(DomainError):
        root_decomposition(d, (10 ** 6, 10 ** 6 + 1))

#!/usr/bin/env python3
"""Dynamic programming over a sphere-cut decomposition, step by step.

Embeds the 14-bus system, builds a decomposition, prints the middle sets
along one root-to-leaf path and the size of every value table, then traces
back an optimal protection set.
"""
from rcds import (
    bnb_min_rcds,
    dp_recursion,
    heuristic_sphere_cut,
    load_bundled,
    planarity_embed,
    root_decomposition,
    traceback,
    validate,
)
from rcds.dp import show

g = load_bundled("ieee14")
emb = planarity_embed(g)
print(f"ieee14: {g.n} buses, {g.m} lines, {len(emb.faces)} faces in the embedding")

dec = heuristic_sphere_cut(emb)
rep = validate(emb, dec)
print(f"decomposition: {len(dec.leaf_edge)} leaves, width {dec.width}, valid: {rep.ok}")

rs = root_decomposition(dec)
res = dp_recursion(rs)

# follow the heavier child from the root down to a leaf
c = rs.z
depth = 0
while rs.children[c]:
    c = max(rs.children[c], key=lambda k: len(rs.subgraph_edges(k)))
    depth += 1
    table = res.tables[c]
    print(f"{'  ' * depth}middle set {rs.pi[c]}: {len(table)} finite colorings")
    if len(table) <= 4:
        for col, v in sorted(table.items()):
            print(f"{'  ' * depth}  {show(col)} -> {v}")

sizes = [len(t) for t in res.tables.values()]
print(f"\ntables: {len(sizes)}, largest {max(sizes)}, merge pairs tried {res.stats['pairs']}")
D = traceback(res, rs)
print("root value", res.root_value, "-> protection set", D)
print("branch-and-bound agrees:", bnb_min_rcds(g).cardinality == len(D))

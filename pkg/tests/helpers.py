"""Graph generators and independent oracles shared by the tests.

The oracles deliberately avoid the package's own algorithms: components
come from networkx, partial-problem tables from plain subset enumeration,
and noose orders are checked by an embedding-free planarity argument.
"""
from __future__ import annotations

import random
from itertools import combinations

import networkx as nx

from rcds import Graph
from rcds.dp import NAMES


def to_graph(G: nx.Graph, offset: int = 1) -> Graph:
    return Graph.from_edges([(u + offset, v + offset) for u, v in G.edges()],
                            vertices=[v + offset for v in G.nodes()])


def atlas_connected(max_n: int, min_n: int = 1) -> list[Graph]:
    """Every connected graph on min_n..max_n vertices (max_n <= 7), up to isomorphism."""
    out = []
    for G in nx.graph_atlas_g():
        k = G.number_of_nodes()
        if min_n <= k <= max_n and nx.is_connected(G):
            out.append(to_graph(G))
    return out


def random_connected(rng: random.Random, n: int, extra: float = 0.5) -> Graph:
    """Random spanning tree plus each remaining pair with probability ``extra * 3/n``."""
    verts = list(range(1, n + 1))
    rng.shuffle(verts)
    edges = {tuple(sorted((verts[i], verts[rng.randrange(i)]))) for i in range(1, n)}
    p = min(1.0, extra * 3 / n)
    for u, v in combinations(range(1, n + 1), 2):
        if rng.random() < p:
            edges.add((u, v))
    return Graph.from_edges(edges, vertices=range(1, n + 1))


def random_planar(rng: random.Random, n: int, density: float | None = None) -> Graph:
    """Random connected planar graph: a random tree grown by planarity-preserving edges."""
    verts = list(range(1, n + 1))
    rng.shuffle(verts)
    G = nx.Graph()
    G.add_nodes_from(range(1, n + 1))
    for i in range(1, n):
        G.add_edge(verts[i], verts[rng.randrange(i)])
    pairs = [p for p in combinations(range(1, n + 1), 2) if not G.has_edge(*p)]
    rng.shuffle(pairs)
    target = (n - 1) + int((density if density is not None else rng.random()) * (2 * n - 5))
    for u, v in pairs:
        if G.number_of_edges() >= target:
            break
        G.add_edge(u, v)
        if not nx.check_planarity(G)[0]:
            G.remove_edge(u, v)
    return Graph.from_edges(G.edges(), vertices=G.nodes())


def nx_graph(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(g.vertices)
    G.add_edges_from(g.sorted_edges())
    return G


def perfect_oracle(g: Graph, D) -> bool:
    """(V, I_D(E)) connected, via networkx."""
    D = set(D)
    H = nx.Graph()
    H.add_nodes_from(g.vertices)
    H.add_edges_from(e for e in g.edges if e[0] in D or e[1] in D)
    return nx.is_connected(H)


def min_rcds_oracle(g: Graph) -> int:
    for k in range(g.n + 1):
        for D in combinations(g.vertices, k):
            if perfect_oracle(g, D):
                return k
    raise AssertionError("unreachable")


# -- partial problems -----------------------------------------------------------

def _sym(name: str) -> int:
    return NAMES.index(name)


def detailed_coloring(order, D, touched, comps) -> tuple[int, ...]:
    """Symbols for one subset, from explicit component position lists."""
    where = {}
    for k, comp in enumerate(comps):
        for v in comp:
            where[v] = k
    pos: dict[int, list[int]] = {}
    for i, v in enumerate(order):
        if v in touched:
            pos.setdefault(where[v], []).append(i)
    spans = list(pos.values())
    for a in spans:
        for b in spans:
            if a is b:
                continue
            # interleaving a1 < b1 < a2 < b2 would need crossing curves
            for i, j in combinations(a, 2):
                inside = [x for x in b if i < x < j]
                if inside and len(inside) != len(b):
                    raise AssertionError(f"crossing blocks on {order}")
    out = []
    for i, v in enumerate(order):
        if v not in touched:
            out.append(_sym("^0"))
            continue
        p = pos[where[v]]
        b = "1" if v in D else "0"
        if len(p) == 1:
            s = "s"
        elif i == p[0]:
            s = "["
        elif i == p[-1]:
            s = "]"
        else:
            s = "*"
        out.append(_sym(b + s))
    return tuple(out)


def partial_table(edges, order) -> dict[tuple[int, ...], int]:
    """Minimum |D| per detailed coloring, by enumerating D over V(G_e)."""
    edges = list(edges)
    V = sorted({x for e in edges for x in e})
    inner = set(V) - set(order)
    table: dict[tuple[int, ...], int] = {}
    for k in range(len(V) + 1):
        for D in combinations(V, k):
            D = set(D)
            active = [e for e in edges if e[0] in D or e[1] in D]
            touched = {x for e in active for x in e}
            if not inner <= touched:
                continue
            comps = list(nx.connected_components(nx.Graph(active))) if active else []
            if any(not (c & set(order)) for c in comps):
                continue
            col = detailed_coloring(order, D, touched, comps)
            if col not in table:
                table[col] = k
    return table


# -- nooses -------------------------------------------------------------------

def disc_drawable(edges, order) -> bool:
    """Can the edges be drawn in a closed disc with ``order`` on its rim, in that order?

    Rim drawn as a cycle through ``order`` plus an apex outside it; the
    result must be planar.  Necessary for a noose with that cyclic order in
    any embedding.
    """
    H = nx.Graph()
    H.add_edges_from(edges)
    k = len(order)
    if k >= 2:
        for i in range(k if k >= 3 else 1):
            H.add_edge(order[i], order[(i + 1) % k])
    apex = ("apex",)
    for v in order:
        H.add_edge(apex, v)
    return nx.check_planarity(H)[0]

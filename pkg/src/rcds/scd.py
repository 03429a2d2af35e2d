"""Sphere-cut decompositions of plane graphs.

A branch decomposition is an unrooted tree whose leaves are the graph's
edges.  Removing a tree edge splits the graph edges into two sides; the
middle set is the set of vertices touched by both.  In a sphere-cut
decomposition every such split is realised by a noose: a closed curve that
meets the drawing only at the middle-set vertices, each once.  The order in
which the noose visits them is stored per tree edge.

Nooses are checked combinatorially on corners of the rotation system.  For
an edge set ``S`` every boundary vertex must see its ``S``-edges as one
contiguous block of its rotation; the curve enters and leaves the vertex
through the two corners where ``S`` meets the rest.  Inside each face the
curve runs alongside the maximal stretches of the face walk, connecting
consecutive transition corners.  ``S`` is noose-bounded when these arcs close
up into a single cycle through all boundary vertices.
"""
from __future__ import annotations

import heapq
import json
import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .graph import DomainError, Edge, Graph, GraphError, norm_edge
from .planar import Dart, PlaneEmbedding

TreeEdge = tuple[int, int]


class DecompositionError(GraphError):
    """Structurally invalid or non sphere-cut decomposition."""


def tree_edge(a: int, b: int) -> TreeEdge:
    return (a, b) if a < b else (b, a)


def canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically smallest rotation over both traversal directions."""
    seq = tuple(seq)
    if len(seq) <= 1:
        return seq
    best = None
    for s in (seq, seq[::-1]):
        for i in range(len(s)):
            r = s[i:] + s[:i]
            if best is None or r < best:
                best = r
    return best


# -- nooses -------------------------------------------------------------------

@dataclass(frozen=True)
class Noose:
    order: tuple[int, ...]     # boundary vertices in curve order
    faces: tuple[int, ...]     # face crossed after each vertex

    @property
    def radial_walk(self) -> list[int | tuple[str, int]]:
        walk: list = []
        for v, f in zip(self.order, self.faces):
            walk.extend([v, ("face", f)])
        return walk


def boundary_vertices(g: Graph, S: frozenset[Edge] | set[Edge]) -> list[int]:
    cnt: dict[int, int] = defaultdict(int)
    for u, v in S:
        cnt[u] += 1
        cnt[v] += 1
    return sorted(v for v, c in cnt.items() if c < g.degree(v))


def find_noose(emb: PlaneEmbedding, S: Iterable[Edge]) -> Noose | None:
    """Noose separating ``S`` from the remaining edges, or None."""
    S = S if isinstance(S, (set, frozenset)) else set(S)
    g = emb.graph
    bnd = boundary_vertices(g, S)
    if not bnd:
        return Noose((), ())
    enter: dict[int, int] = {}   # v -> u: corner (u, succ u) goes rest -> S
    leave: dict[int, int] = {}   # v -> u: corner (u, succ u) goes S -> rest
    for v in bnd:
        rot = emb.rotation[v]
        flags = [norm_edge(v, u) in S for u in rot]
        k = len(rot)
        trans = 0
        for i in range(k):
            a, b = flags[i], flags[(i + 1) % k]
            if a != b:
                trans += 1
                if a:
                    leave[v] = rot[i]
                else:
                    enter[v] = rot[i]
        if trans != 2:
            return None
    for hug_s in (True, False):
        nz = _trace(emb, S, bnd, enter, leave, hug_s)
        if nz is not None:
            return nz
    return None


def _trace(emb: PlaneEmbedding, S, bnd, enter, leave, hug_s: bool) -> Noose | None:
    # hug_s: each arc runs along a stretch of S-darts, from a rest->S corner
    # to the next S->rest corner of the same face walk; otherwise along
    # stretches of the remaining darts.
    start_map, stop_map = (enter, leave) if hug_s else (leave, enter)
    v0 = bnd[0]
    order: list[int] = []
    faces: list[int] = []
    seen: set[int] = set()
    v = v0
    limit = 2 * emb.graph.m + 2
    while True:
        if v in seen:
            return None
        seen.add(v)
        order.append(v)
        u = start_map[v]
        d: Dart = (v, emb.succ(v, u))
        faces.append(emb.face_of[d])
        steps = 0
        while True:
            nxt = emb.next_dart(d)
            if (norm_edge(*nxt) in S) != hug_s:
                break
            d = nxt
            steps += 1
            if steps > limit:
                return None
        x, y = d
        if stop_map.get(y) != x:
            return None
        v = y
        if v == v0:
            break
    if len(order) != len(bnd):
        return None
    return Noose(tuple(order), tuple(faces))


# -- decompositions -------------------------------------------------------------

@dataclass
class ScDecomposition:
    """Unrooted branch decomposition with middle sets and noose orders."""

    graph: Graph
    adj: dict[int, tuple[int, ...]]
    leaf_edge: dict[int, Edge]
    middle: dict[TreeEdge, frozenset[int]] = field(default_factory=dict)
    pi: dict[TreeEdge, tuple[int, ...]] = field(default_factory=dict)

    @property
    def tree_edges(self) -> list[TreeEdge]:
        return sorted({tree_edge(a, b) for a, nb in self.adj.items() for b in nb})

    @property
    def width(self) -> int:
        return max((len(m) for m in self.middle.values()), default=0)

    def side(self, a: int, b: int) -> frozenset[Edge]:
        """Graph edges on the ``b`` side of tree edge ``{a, b}``."""
        out = []
        stack = [(b, a)]
        while stack:
            x, p = stack.pop()
            if x in self.leaf_edge:
                out.append(self.leaf_edge[x])
            for y in self.adj[x]:
                if y != p:
                    stack.append((y, x))
        return frozenset(out)

    def to_dict(self) -> dict:
        nodes = []
        for k in sorted(self.adj):
            if k in self.leaf_edge:
                nodes.append({"id": k, "leaf_edge": list(self.leaf_edge[k]),
                              "children": list(self.adj[k])})
            else:
                nodes.append({"id": k, "children": list(self.adj[k])})
        return {"nodes": nodes,
                "pi": {f"{a}-{b}": list(p) for (a, b), p in sorted(self.pi.items())},
                "width": self.width}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _check_tree(g: Graph, adj: Mapping[int, Sequence[int]], leaf_edge: Mapping[int, Edge]) -> list[str]:
    errs = []
    for a, nb in adj.items():
        for b in nb:
            if a not in adj.get(b, ()):
                errs.append(f"tree edge {a}-{b} is not symmetric")
    n_nodes = len(adj)
    n_edges = sum(len(nb) for nb in adj.values()) // 2
    if n_nodes and n_edges != n_nodes - 1:
        errs.append(f"tree has {n_nodes} nodes but {n_edges} edges")
    elif n_nodes:
        start = next(iter(adj))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != n_nodes:
            errs.append("tree is not connected")
    for a, nb in adj.items():
        if a in leaf_edge:
            if len(nb) > 1:
                errs.append(f"leaf {a} has degree {len(nb)}")
        elif len(nb) != 3:
            errs.append(f"internal node {a} has degree {len(nb)}, expected 3")
    mapped = [norm_edge(*e) for e in leaf_edge.values()]
    if len(set(mapped)) != len(mapped):
        errs.append("leaf map is not injective: an edge is mapped twice")
    if set(mapped) != set(g.edges):
        missing = sorted(set(g.edges) - set(mapped))
        extra = sorted(set(mapped) - set(g.edges))
        errs.append(f"leaf map is not a bijection onto E (missing {missing}, unknown {extra})")
    for k in leaf_edge:
        if k not in adj:
            errs.append(f"leaf {k} is not a tree node")
    return errs


def compute_middle_sets(d: ScDecomposition) -> dict[TreeEdge, frozenset[int]]:
    g = d.graph
    out = {}
    for a, b in d.tree_edges:
        side = d.side(a, b)
        out[(a, b)] = frozenset(boundary_vertices(g, side))
    return out


@dataclass
class ValidationReport:
    ok: bool
    width: int
    errors: list[str]
    middle: dict[TreeEdge, frozenset[int]]
    pi: dict[TreeEdge, tuple[int, ...]]
    nooses: dict[TreeEdge, Noose]


def validate(emb: PlaneEmbedding, d: ScDecomposition) -> ValidationReport:
    """Recompute middle sets, widths and nooses; collect every failure."""
    errs = _check_tree(emb.graph, d.adj, d.leaf_edge)
    if errs:
        return ValidationReport(False, 0, errs, {}, {}, {})
    middle = compute_middle_sets(d)
    pis: dict[TreeEdge, tuple[int, ...]] = {}
    nooses: dict[TreeEdge, Noose] = {}
    for te in d.tree_edges:
        if te in d.middle and d.middle[te] != middle[te]:
            errs.append(f"stored middle set of {te} differs from recomputed")
        nz = find_noose(emb, d.side(*te))
        if nz is None:
            errs.append(f"no noose for tree edge {te} (middle set {sorted(middle[te])})")
            continue
        if set(nz.order) != middle[te]:
            errs.append(f"noose of {te} does not pass exactly through its middle set")
            continue
        nooses[te] = nz
        pis[te] = canonical_cycle(nz.order)
        if te in d.pi and canonical_cycle(d.pi[te]) != pis[te]:
            errs.append(f"stored cyclic order of {te} is not realised by a noose")
    width = max((len(m) for m in middle.values()), default=0)
    return ValidationReport(not errs, width, errs, middle, pis, nooses)


def _finish(emb: PlaneEmbedding, d: ScDecomposition) -> ScDecomposition:
    rep = validate(emb, d)
    if not rep.ok:
        raise DecompositionError("; ".join(rep.errors))
    d.middle = rep.middle
    d.pi = rep.pi
    return d


# -- construction ---------------------------------------------------------------

def trivial_decomposition(g: Graph) -> ScDecomposition:
    """Decomposition of a graph with at most two edges."""
    edges = g.sorted_edges()
    if len(edges) > 2:
        raise DomainError("trivial decomposition needs at most two edges")
    adj = {i: tuple(j for j in range(len(edges)) if j != i) for i in range(len(edges))}
    return ScDecomposition(g, adj, {i: e for i, e in enumerate(edges)})


class _Piece:
    __slots__ = ("node", "edges", "cnt")

    def __init__(self, node: int, edges: frozenset[Edge], cnt: dict[int, int]):
        self.node = node
        self.edges = edges
        self.cnt = cnt


def heuristic_sphere_cut(emb: PlaneEmbedding, seed: int | None = None) -> ScDecomposition:
    """Greedy bottom-up sphere-cut decomposition.

    Starting from one piece per edge, repeatedly fuse the two touching
    pieces whose union has the smallest boundary, provided the union is
    still bounded by a noose.  Each fusion becomes an internal tree node.
    The width is whatever the greedy order yields; it is not optimal.

    Ties go to the smaller union, then to piece ids.  With ``seed`` set,
    ties are broken at random instead, which gives a different (still
    valid) decomposition.
    """
    rng = random.Random(seed) if seed is not None else None
    g = emb.graph
    edges = g.sorted_edges()
    m = len(edges)
    if m <= 2:
        return _finish(emb, trivial_decomposition(g))

    deg = {v: g.degree(v) for v in g.vertices}
    pieces: dict[int, _Piece] = {}
    touch: dict[int, set[int]] = defaultdict(set)
    adj: dict[int, list[int]] = {}
    leaf_edge: dict[int, Edge] = {}
    for i, (u, v) in enumerate(edges):
        pieces[i] = _Piece(i, frozenset([(u, v)]), {u: 1, v: 1})
        touch[u].add(i)
        touch[v].add(i)
        adj[i] = []
        leaf_edge[i] = (u, v)

    def union_boundary(a: _Piece, b: _Piece) -> int:
        n = 0
        for v, c in a.cnt.items():
            if c + b.cnt.get(v, 0) < deg[v]:
                n += 1
        for v, c in b.cnt.items():
            if v not in a.cnt and c < deg[v]:
                n += 1
        return n

    heap: list = []

    def push_pairs(pid: int) -> None:
        p = pieces[pid]
        others = set()
        for v in p.cnt:
            others |= touch[v]
        others.discard(pid)
        for q in sorted(others):
            o = pieces[q]
            w = union_boundary(p, o)
            tie = rng.random() if rng is not None else len(p.edges) + len(o.edges)
            heapq.heappush(heap, (w, tie, min(pid, q), max(pid, q)))

    for pid in range(m):
        push_pairs(pid)
    next_id = m
    while len(pieces) > 2:
        if not heap:
            raise DecompositionError("greedy noose merging got stuck")
        w, _, a, b = heapq.heappop(heap)
        if a not in pieces or b not in pieces:
            continue
        pa, pb = pieces[a], pieces[b]
        merged = pa.edges | pb.edges
        if find_noose(emb, merged) is None:
            continue
        cnt = dict(pa.cnt)
        for v, c in pb.cnt.items():
            cnt[v] = cnt.get(v, 0) + c
        node = next_id
        next_id += 1
        adj[node] = [pa.node, pb.node]
        adj[pa.node].append(node)
        adj[pb.node].append(node)
        del pieces[a], pieces[b]
        for v in pa.cnt:
            touch[v].discard(a)
        for v in pb.cnt:
            touch[v].discard(b)
        pieces[node] = _Piece(node, merged, cnt)
        for v in cnt:
            touch[v].add(node)
        push_pairs(node)
    p, q = (pieces[k] for k in sorted(pieces))
    adj[p.node].append(q.node)
    adj[q.node].append(p.node)
    d = ScDecomposition(g, {k: tuple(v) for k, v in adj.items()}, leaf_edge)
    return _finish(emb, d)


# -- import / export ---------------------------------------------------------

def _parse_tree_edge_key(k: str) -> TreeEdge:
    a, b = k.split("-")
    return tree_edge(int(a), int(b))


def import_decomposition(g: Graph, emb: PlaneEmbedding, source: str | Mapping) -> ScDecomposition:
    """Load a decomposition from JSON (text or dict) or the line format.

    Line format::

        t <node> <node>       tree edge
        l <node> <u> <v>      leaf node mapped to graph edge {u, v}

    Middle sets are always recomputed; cyclic orders are checked against a
    noose when given and derived otherwise.
    """
    if isinstance(source, str) and not source.lstrip().startswith("{"):
        adj, leaf_edge = _parse_lines(source)
        pi: dict[TreeEdge, tuple[int, ...]] = {}
    else:
        data = json.loads(source) if isinstance(source, str) else source
        adj = {}
        leaf_edge = {}
        for node in data["nodes"]:
            k = int(node["id"])
            adj[k] = tuple(int(x) for x in node.get("children", ()))
            if "leaf_edge" in node:
                u, v = node["leaf_edge"]
                leaf_edge[k] = norm_edge(int(u), int(v))
        pi = {_parse_tree_edge_key(k): tuple(int(x) for x in v)
              for k, v in data.get("pi", {}).items()}
    d = ScDecomposition(g, adj, leaf_edge, pi=pi)
    return _finish(emb, d)


def _parse_lines(text: str) -> tuple[dict[int, tuple[int, ...]], dict[int, Edge]]:
    nb: dict[int, list[int]] = defaultdict(list)
    leaf_edge: dict[int, Edge] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "t" and len(parts) == 3:
                a, b = int(parts[1]), int(parts[2])
                nb[a].append(b)
                nb[b].append(a)
            elif parts[0] == "l" and len(parts) == 4:
                k, u, v = (int(x) for x in parts[1:])
                if k in leaf_edge:
                    raise DecompositionError(f"line {lineno}: leaf {k} mapped twice")
                leaf_edge[k] = norm_edge(u, v)
                nb.setdefault(k, [])
            else:
                raise ValueError
        except ValueError:
            raise DecompositionError(f"line {lineno}: cannot parse {raw!r}") from None
    return {k: tuple(v) for k, v in nb.items()}, leaf_edge


def export_lines(d: ScDecomposition) -> str:
    out = [f"t {a} {b}" for a, b in d.tree_edges]
    out += [f"l {k} {u} {v}" for k, (u, v) in sorted(d.leaf_edge.items())]
    return "\n".join(out) + "\n"


# -- rooting ------------------------------------------------------------------------

@dataclass(frozen=True)
class MergeContext:
    X1: frozenset[int]
    X2: frozenset[int]
    X3: frozenset[int]
    X4: frozenset[int]


@dataclass
class RootedScd:
    """Rooted tree T' obtained by subdividing one tree edge with ``z`` and
    hanging ``z`` below a new root ``r``.

    Every edge of T' is named by its lower endpoint ``c`` (the edge is
    ``{parent[c], c}``).
    """

    dec: ScDecomposition
    root: int
    z: int
    parent: dict[int, int]
    children: dict[int, tuple[int, ...]]
    middle: dict[int, frozenset[int]]
    pi: dict[int, tuple[int, ...]]

    def is_leaf_edge(self, c: int) -> bool:
        return c in self.dec.leaf_edge

    @property
    def edges(self) -> list[int]:
        return sorted(self.parent)

    def postorder(self) -> list[int]:
        out = []
        stack = [(self.z, False)]
        while stack:
            c, done = stack.pop()
            if done:
                out.append(c)
                continue
            stack.append((c, True))
            for ch in reversed(self.children[c]):
                stack.append((ch, False))
        return out

    def subgraph_edges(self, c: int) -> frozenset[Edge]:
        """Edges of ``G_e`` for the T' edge above ``c``."""
        out = []
        stack = [c]
        while stack:
            x = stack.pop()
            if x in self.dec.leaf_edge:
                out.append(self.dec.leaf_edge[x])
            stack.extend(self.children[x])
        return frozenset(out)

    def edge_children(self, c: int) -> tuple[int, ...]:
        return self.children[c]


def root_decomposition(d: ScDecomposition, attach: TreeEdge | None = None) -> RootedScd:
    tes = d.tree_edges
    if not tes:
        raise DomainError("decomposition has no tree edge to root at")
    u, v = tree_edge(*attach) if attach is not None else tes[0]
    if (u, v) not in set(tes):
        raise DomainError(f"{(u, v)} is not a tree edge")
    z = max(d.adj) + 1
    r = z + 1
    adj = {k: list(nb) for k, nb in d.adj.items()}
    adj[u].remove(v)
    adj[v].remove(u)
    adj[u].append(z)
    adj[v].append(z)
    adj[z] = [u, v]
    parent = {z: r}
    children: dict[int, tuple[int, ...]] = {}
    stack = [z]
    while stack:
        x = stack.pop()
        ch = tuple(sorted(y for y in adj[x] if y != parent[x]))
        children[x] = ch
        for y in ch:
            parent[y] = x
            stack.append(y)
    middle: dict[int, frozenset[int]] = {z: frozenset()}
    pi: dict[int, tuple[int, ...]] = {z: ()}
    for c, p in parent.items():
        if c == z:
            continue
        te = (u, v) if p == z else tree_edge(p, c)
        middle[c] = d.middle[te]
        pi[c] = d.pi[te]
    return RootedScd(d, r, z, parent, children, middle, pi)


def merge_context(rs: RootedScd, c: int) -> MergeContext:
    ch = rs.children[c]
    if len(ch) != 2:
        raise DomainError(f"T' edge above {c} is incident to a leaf")
    return context_from_sets(rs.middle[c], rs.middle[ch[0]], rs.middle[ch[1]])


def context_from_sets(w: Iterable[int], w1: Iterable[int], w2: Iterable[int]) -> MergeContext:
    w, w1, w2 = frozenset(w), frozenset(w1), frozenset(w2)
    return MergeContext(w - w2, w - w1, w & w1 & w2, (w1 & w2) - w)

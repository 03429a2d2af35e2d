"""Combinatorial plane embeddings (rotation systems), faces and planarization.

The planarity test itself is networkx's left-right algorithm; everything
downstream (faces, corners, radial graph) works on the plain rotation
system so embeddings can also be imported from JSON.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

import networkx as nx

from .graph import DomainError, Edge, Graph, GraphError, norm_edge

Dart = tuple[int, int]


class EmbeddingError(GraphError):
    pass


class PlaneEmbedding:
    """Rotation system of a connected graph together with its face cycles.

    ``rotation[v]`` lists the neighbours of ``v`` in cyclic order.  The face
    to the left of dart ``(u, v)`` continues with ``(v, w)`` where ``w``
    follows ``u`` in ``rotation[v]``; the angle at ``v`` between ``u`` and
    ``w`` is the corner the face passes through.
    """

    def __init__(self, graph: Graph, rotation: Mapping[int, Sequence[int]]):
        self.graph = graph
        self.rotation = {v: tuple(rotation[v]) for v in graph.vertices}
        self._pos = {}
        for v, rot in self.rotation.items():
            if sorted(rot) != list(graph.neighbors(v)):
                raise EmbeddingError(f"rotation at {v} is not a permutation of its neighbours")
            self._pos[v] = {u: i for i, u in enumerate(rot)}
        self.faces = self._trace_faces()
        self.face_of = {d: k for k, f in enumerate(self.faces) for d in f}
        if not self.is_spherical():
            raise EmbeddingError(
                f"rotation system is not planar: V-E+F = "
                f"{graph.n - graph.m + len(self.faces)}")

    # rotation helpers -----------------------------------------------------
    def succ(self, v: int, u: int) -> int:
        rot = self.rotation[v]
        return rot[(self._pos[v][u] + 1) % len(rot)]

    def pred(self, v: int, u: int) -> int:
        rot = self.rotation[v]
        return rot[(self._pos[v][u] - 1) % len(rot)]

    def next_dart(self, d: Dart) -> Dart:
        u, v = d
        return (v, self.succ(v, u))

    def _trace_faces(self) -> list[tuple[Dart, ...]]:
        darts = sorted((u, v) for u, v in self.graph.edges) + sorted(
            (v, u) for u, v in self.graph.edges)
        darts.sort()
        seen: set[Dart] = set()
        faces = []
        for d in darts:
            if d in seen:
                continue
            cyc = []
            x = d
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self.next_dart(x)
            faces.append(tuple(cyc))
        if not faces and self.graph.n == 1:
            faces.append(())
        return faces

    def is_spherical(self) -> bool:
        g = self.graph
        return g.n - g.m + len(self.faces) == 2

    def face_vertices(self, k: int) -> list[int]:
        return [d[0] for d in self.faces[k]]

    def to_dict(self) -> dict:
        return {"rotation": {str(v): list(r) for v, r in sorted(self.rotation.items())}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, graph: Graph, d: Mapping) -> PlaneEmbedding:
        return cls(graph, {int(v): [int(x) for x in r] for v, r in d["rotation"].items()})


def _nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.sorted_edges())
    return h


def is_planar(g: Graph) -> bool:
    return nx.check_planarity(_nx(g))[0]


def planarity_embed(g: Graph) -> PlaneEmbedding | None:
    """Plane embedding of a connected graph, or None if it is not planar."""
    if not g.is_connected():
        raise DomainError("graph must be connected")
    ok, emb = nx.check_planarity(_nx(g))
    if not ok:
        return None
    rotation = {v: list(emb.neighbors_cw_order(v)) for v in g.vertices}
    return PlaneEmbedding(g, rotation)


def faces(emb: PlaneEmbedding) -> list[tuple[Dart, ...]]:
    return list(emb.faces)


def face_node_offset(emb: PlaneEmbedding) -> int:
    return max(emb.graph.vertices) + 1


def radial_graph(emb: PlaneEmbedding) -> Graph:
    """Vertex-face incidence graph.  Face ``k`` becomes node ``offset + k``."""
    off = face_node_offset(emb)
    pairs = {(v, off + k) for k, f in enumerate(emb.faces) for v, _ in f}
    if emb.graph.n == 1:
        pairs.add((emb.graph.vertices[0], off))
    return Graph.from_edges(sorted(pairs))


@dataclass(frozen=True)
class PlanarizationResult:
    planar_graph: Graph
    removed_edges: frozenset[Edge]
    embedding: PlaneEmbedding


def _bfs_tree(g: Graph) -> list[Edge]:
    root = min(g.vertices, key=lambda v: (-g.degree(v), v))
    seen = {root}
    queue = deque([root])
    tree = []
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w not in seen:
                seen.add(w)
                tree.append(norm_edge(u, w))
                queue.append(w)
    return tree


def planarize(g: Graph) -> PlanarizationResult:
    """Greedy maximal planar subgraph containing a BFS spanning tree.

    Remaining edges are tried in sorted order and kept when the graph stays
    planar.
    """
    if not g.is_connected():
        raise DomainError("graph must be connected")
    emb = planarity_embed(g)
    if emb is not None:
        return PlanarizationResult(g, frozenset(), emb)
    tree = _bfs_tree(g)
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(tree)
    removed = []
    in_tree = set(tree)
    for e in g.sorted_edges():
        if e in in_tree:
            continue
        h.add_edge(*e)
        if not nx.check_planarity(h)[0]:
            h.remove_edge(*e)
            removed.append(e)
    pg = g.without_edges(removed)
    emb = planarity_embed(pg)
    assert emb is not None
    return PlanarizationResult(pg, frozenset(removed), emb)

"""Simple undirected graphs with integer vertex ids.

Vertex ids are kept exactly as they appear in the input (IEEE cases use
bus numbers, which are not contiguous).  Everything iterates in sorted
order so solver traces are reproducible.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

Edge = tuple[int, int]


class GraphError(ValueError):
    """Base class for invalid graph input."""


class ParseError(GraphError):
    def __init__(self, lineno: int, line: str, reason: str):
        super().__init__(f"line {lineno}: {reason}: {line!r}")
        self.lineno = lineno


class SelfLoopError(GraphError):
    pass


class DomainError(GraphError):
    """A precondition on the graph or a vertex set is violated."""


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph.  ``edges`` holds pairs with ``u < v``."""

    vertices: tuple[int, ...]
    edges: frozenset[Edge]
    _adj: dict[int, tuple[int, ...]] = field(repr=False, compare=False, hash=False)

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[int]], vertices: Iterable[int] = ()) -> Graph:
        es: set[Edge] = set()
        vs: set[int] = set(vertices)
        for pair in edges:
            u, v = (int(x) for x in pair)
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {u}")
            if u <= 0 or v <= 0:
                raise GraphError(f"vertex ids must be positive, got {u}, {v}")
            es.add(norm_edge(u, v))
            vs.update((u, v))
        adj: dict[int, list[int]] = {v: [] for v in vs}
        for u, v in es:
            adj[u].append(v)
            adj[v].append(u)
        return cls(tuple(sorted(vs)), frozenset(es),
                   {v: tuple(sorted(nb)) for v, nb in adj.items()})

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def subgraph_edges(self, edges: Iterable[Edge]) -> Graph:
        """Graph formed by ``edges`` and their endpoints."""
        return Graph.from_edges(edges)

    def without_edges(self, removed: Iterable[Edge]) -> Graph:
        drop = {norm_edge(*e) for e in removed}
        return Graph.from_edges((e for e in self.edges if e not in drop), self.vertices)

    def is_connected(self) -> bool:
        return len(connected_components(self, self.edges)) <= 1

    # serialization -------------------------------------------------------
    def to_edge_list(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.sorted_edges())

    def to_dict(self) -> dict:
        d = {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}
        touched = {x for e in self.edges for x in e}
        if len(touched) != self.n:
            d["vertices"] = list(self.vertices)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> Graph:
        g = cls.from_edges(d["edges"], d.get("vertices", ()))
        if "n" in d and d["n"] != g.n:
            raise GraphError(f"declared n={d['n']} but found {g.n} vertices")
        return g

    @classmethod
    def from_json(cls, text: str) -> Graph:
        return cls.from_dict(json.loads(text))


def parse_edge_list(text: str) -> Graph:
    """Parse ``u v`` lines; ``#`` starts a comment.  Duplicates are merged."""
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(lineno, raw, "expected two vertex ids")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(lineno, raw, "vertex ids must be integers") from None
        if u <= 0 or v <= 0:
            raise ParseError(lineno, raw, "vertex ids must be positive")
        if u == v:
            raise SelfLoopError(f"line {lineno}: self-loop at vertex {u}")
        edges.append((u, v))
    return Graph.from_edges(edges)


def load_graph(path) -> Graph:
    """Read an edge-list file, or a JSON graph if the content starts with ``{``."""
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return Graph.from_json(text)
    return parse_edge_list(text)


def _check_subset(g: Graph, U: Iterable[int]) -> frozenset[int]:
    U = frozenset(U)
    bad = [u for u in U if u not in g]
    if bad:
        raise DomainError(f"unknown vertices {sorted(bad)}")
    return U


def incident_edges(g: Graph, U: Iterable[int]) -> frozenset[Edge]:
    """Edges of ``g`` with at least one endpoint in ``U``."""
    U = _check_subset(g, U)
    return frozenset(e for e in g.edges if e[0] in U or e[1] in U)


def connected_components(g: Graph, active_edges: Iterable[Edge]) -> list[tuple[int, ...]]:
    """Components of ``(V(g), active_edges)``; isolated vertices are singletons.

    Components come back sorted, each as a sorted tuple.
    """
    adj: dict[int, list[int]] = {v: [] for v in g.vertices}
    for u, v in active_edges:
        adj[u].append(v)
        adj[v].append(u)
    seen: set[int] = set()
    comps = []
    for s in g.vertices:
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        comps.append(tuple(sorted(comp)))
    return comps


def is_dominating(g: Graph, D: Iterable[int]) -> bool:
    D = set(D)
    return all(v in D or any(u in D for u in g.neighbors(v)) for v in g.vertices)


def induces_connected(g: Graph, D: Iterable[int]) -> bool:
    D = set(D)
    if len(D) <= 1:
        return True
    start = min(D)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if y in D and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(D)


# small named graphs used throughout tests and demos

def cycle_graph(k: int) -> Graph:
    return Graph.from_edges((i, i % k + 1) for i in range(1, k + 1))


def path_graph(k: int) -> Graph:
    return Graph.from_edges((i, i + 1) for i in range(1, k))


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges((1, i) for i in range(2, leaves + 2))


def complete_graph(k: int) -> Graph:
    return Graph.from_edges((i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1))

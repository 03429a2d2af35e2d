"""Flow-based mixed integer model of the perfect protection problem.

Binary ``x_i`` marks protected buses.  A unit of flow is shipped from the
source to every other vertex; a line may carry flow only if one of its
endpoints is protected, which forces ``(V, I_D(E))`` to be connected.

The model is exported in CPLEX LP format for external solvers; it is not
solved here.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from .graph import DomainError, Graph, incident_edges

Arc = tuple[int, int]


@dataclass(frozen=True)
class MilpModel:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    source: int

    @property
    def capacity(self) -> int:
        return len(self.vertices) - 1

    @property
    def binaries(self) -> list[str]:
        return [f"x_{i}" for i in self.vertices]

    @property
    def arcs(self) -> list[Arc]:
        return [a for u, v in self.edges for a in ((u, v), (v, u))]

    @property
    def flow_vars(self) -> list[str]:
        return [f"y_{i}_{j}" for i, j in self.arcs]

    @property
    def conservation_rows(self) -> list[int]:
        return [i for i in self.vertices if i != self.source]

    @property
    def capacity_rows(self) -> list[tuple[int, int]]:
        return list(self.edges)

    def violations(self, x: Mapping[int, float], y: Mapping[Arc, float],
                   tol: float = 1e-9) -> list[str]:
        """Constraint rows not satisfied by the assignment ``(x, y)``."""
        bad = []
        for i in self.vertices:
            if x.get(i, 0) not in (0, 1):
                bad.append(f"x_{i} not binary")
        for a in self.arcs:
            if y.get(a, 0.0) < -tol:
                bad.append(f"y_{a[0]}_{a[1]} negative")
        net = {i: 0.0 for i in self.vertices}
        for (i, j) in self.arcs:
            f = y.get((i, j), 0.0)
            net[i] += f
            net[j] -= f
        for i in self.conservation_rows:
            if abs(net[i] + 1.0) > tol:
                bad.append(f"flow_{i}: net outflow {net[i]} != -1")
        for i, j in self.capacity_rows:
            lhs = y.get((i, j), 0.0) + y.get((j, i), 0.0)
            rhs = self.capacity * (x.get(i, 0) + x.get(j, 0))
            if lhs > rhs + tol:
                bad.append(f"cap_{i}_{j}: {lhs} > {rhs}")
        return bad

    def objective(self, x: Mapping[int, float]) -> float:
        return sum(x.get(i, 0) for i in self.vertices)


def build_milp(g: Graph, source: int | None = None) -> MilpModel:
    if not g.is_connected():
        raise DomainError("graph must be connected")
    s = g.vertices[0] if source is None else source
    if s not in g:
        raise DomainError(f"source {s} is not a vertex")
    return MilpModel(g.vertices, tuple(g.sorted_edges()), s)


def _terms(coeffs: Iterable[tuple[float, str]]) -> str:
    out = []
    for c, name in coeffs:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = name if mag == 1 else f"{mag:g} {name}"
        out.append(f"{sign} {body}")
    text = " ".join(out)
    return text[2:] if text.startswith("+ ") else text


def export_lp(m: MilpModel) -> str:
    lines = ["\\ minimum perfect protection set (flow formulation)", "Minimize",
             " obj: " + _terms((1, v) for v in m.binaries), "Subject To"]
    nbrs: dict[int, list[int]] = {i: [] for i in m.vertices}
    for u, v in m.edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    for i in m.conservation_rows:
        out = [(1, f"y_{i}_{j}") for j in sorted(nbrs[i])]
        inn = [(-1, f"y_{j}_{i}") for j in sorted(nbrs[i])]
        lines.append(f" flow_{i}: {_terms(out + inn)} = -1")
    for i, j in m.capacity_rows:
        c = m.capacity
        lines.append(f" cap_{i}_{j}: {_terms([(1, f'y_{i}_{j}'), (1, f'y_{j}_{i}'), (-c, f'x_{i}'), (-c, f'x_{j}')])} <= 0")
    lines.append("Bounds")
    lines.extend(f" {y} >= 0" for y in m.flow_vars)
    lines.append("Binary")
    lines.extend(f" {x}" for x in m.binaries)
    lines.append("End")
    return "\n".join(lines) + "\n"


def witness(m: MilpModel, g: Graph, D: Iterable[int]) -> tuple[dict[int, int], dict[Arc, float]]:
    """Feasible ``(x, y)`` for a perfect protection set ``D``.

    Flows follow a BFS tree of ``(V, I_D(E))`` rooted at the source; each
    tree arc carries the number of vertices below it.
    """
    D = set(D)
    active = incident_edges(g, D)
    adj: dict[int, list[int]] = {v: [] for v in g.vertices}
    for u, v in sorted(active):
        adj[u].append(v)
        adj[v].append(u)
    parent = {m.source: None}
    order = [m.source]
    queue = deque([m.source])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
                queue.append(w)
    if len(parent) != len(g.vertices):
        raise DomainError("D is not a perfect protection set")
    below = {v: 1 for v in g.vertices}
    y: dict[Arc, float] = {a: 0.0 for a in m.arcs}
    for v in reversed(order[1:]):
        p = parent[v]
        y[(p, v)] = float(below[v])
        below[p] += below[v]
    x = {i: int(i in D) for i in g.vertices}
    return x, y

"""Perfect protection sets and stealth attacks on DC measurement models.

Two characterizations of a perfect protection set ``D`` are provided:

* :func:`is_perfect_protection` -- the subgraph ``(V, I_D(E))`` is connected;
* :func:`is_rcds` -- ``D`` is dominating and every pair of members is linked
  by a relaxed path (at most one non-member between consecutive members).

When ``D`` is not perfect, :func:`construct_stealth_attack` produces a
concrete attack that the bad-data detector cannot see.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .graph import (
    DomainError,
    Edge,
    Graph,
    _check_subset,
    connected_components,
    incident_edges,
    is_dominating,
    norm_edge,
)


def _require_connected(g: Graph) -> None:
    if not g.is_connected():
        raise DomainError("graph must be connected")


def is_perfect_protection(g: Graph, D: Iterable[int]) -> bool:
    """True iff ``(V, I_D(E))`` is connected."""
    _require_connected(g)
    D = _check_subset(g, D)
    return len(connected_components(g, incident_edges(g, D))) == 1


def relaxed_adjacency(g: Graph, D: Iterable[int]) -> dict[int, set[int]]:
    """Members of ``D`` linked directly or through one non-member."""
    D = set(D)
    aux: dict[int, set[int]] = {d: set() for d in D}
    for d in D:
        for w in g.neighbors(d):
            if w in D:
                aux[d].add(w)
            else:
                for d2 in g.neighbors(w):
                    if d2 in D and d2 != d:
                        aux[d].add(d2)
    return aux


def is_rcds(g: Graph, D: Iterable[int]) -> bool:
    """Relaxed connected dominating set test.

    A single-vertex graph admits no nonzero attack, so every subset of it,
    the empty one included, counts.
    """
    D = _check_subset(g, D)
    if g.n == 1:
        return True
    if not is_dominating(g, D):
        return False
    if len(D) <= 1:
        return True
    aux = relaxed_adjacency(g, D)
    start = min(D)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in aux[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(D)


@dataclass
class Attack:
    """Detection-evading perturbation ``dz = H theta``.

    ``flow`` is keyed by normalized edges ``(u, v)`` with ``u < v`` and holds
    ``H_uv * (theta_u - theta_v)``.  ``injection[v]`` is the net flow out of
    ``v``.  ``line_constants`` defaults to 1 on every line.
    """

    phasors: dict[int, float]
    flow: dict[Edge, float]
    injection: dict[int, float]
    line_constants: dict[Edge, float] = field(default_factory=dict)

    def constant(self, e: Edge) -> float:
        return self.line_constants.get(e, 1.0)

    def is_zero(self, tol: float = 1e-12) -> bool:
        return all(abs(x) <= tol for x in self.flow.values()) and all(
            abs(x) <= tol for x in self.injection.values())

    def to_dict(self) -> dict:
        d = {
            "phasors": {str(v): x for v, x in sorted(self.phasors.items())},
            "flow": {f"{u}-{v}": x for (u, v), x in sorted(self.flow.items())},
            "injection": {str(v): x for v, x in sorted(self.injection.items())},
        }
        if any(h != 1.0 for h in self.line_constants.values()):
            d["H"] = {f"{u}-{v}": h for (u, v), h in sorted(self.line_constants.items())}
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: Mapping) -> Attack:
        def edge_key(k: str) -> Edge:
            u, v = k.split("-")
            return norm_edge(int(u), int(v))

        return cls(
            phasors={int(k): float(x) for k, x in d["phasors"].items()},
            flow={edge_key(k): float(x) for k, x in d["flow"].items()},
            injection={int(k): float(x) for k, x in d["injection"].items()},
            line_constants={edge_key(k): float(x) for k, x in d.get("H", {}).items()},
        )

    @classmethod
    def from_json(cls, text: str) -> Attack:
        return cls.from_dict(json.loads(text))


def attack_from_phasors(g: Graph, theta: Mapping[int, float],
                        H: Mapping[Edge, float] | None = None) -> Attack:
    """Flows and injections implied by fictitious phasors ``theta``."""
    H = {norm_edge(*e): h for e, h in (H or {}).items()}
    flow = {}
    injection = {v: 0.0 for v in g.vertices}
    for u, v in g.sorted_edges():
        f = H.get((u, v), 1.0) * (theta[u] - theta[v])
        flow[(u, v)] = f
        injection[u] += f
        injection[v] -= f
    return Attack(dict(theta), flow, injection, H)


def construct_stealth_attack(g: Graph, D: Iterable[int],
                             H: Mapping[Edge, float] | None = None) -> Attack | None:
    """Return an attack evading detection under protection ``D``, or None.

    Phasors are 1 on the component of ``(V, I_D(E))`` holding the smallest
    vertex id and 0 elsewhere, so only lines leaving that component carry a
    nonzero flow component.
    """
    _require_connected(g)
    D = _check_subset(g, D)
    comps = connected_components(g, incident_edges(g, D))
    if len(comps) == 1:
        return None
    v0 = set(comps[0])
    theta = {v: (1.0 if v in v0 else 0.0) for v in g.vertices}
    return attack_from_phasors(g, theta, H)


def verify_attack(g: Graph, D: Iterable[int], a: Attack, tol: float = 1e-9) -> bool:
    """Check attack rules A1/A2, protection rule P1 and nonzeroness."""
    D = set(D)
    if set(a.phasors) != set(g.vertices) or set(a.injection) != set(g.vertices):
        return False
    if set(a.flow) != set(g.edges):
        return False
    close = lambda x, y: math.isclose(x, y, rel_tol=0.0, abs_tol=tol)  # noqa: E731
    net = {v: 0.0 for v in g.vertices}
    for (u, v), f in a.flow.items():
        # A1
        if not close(f, a.constant((u, v)) * (a.phasors[u] - a.phasors[v])):
            return False
        # P1 on lines
        if (u in D or v in D) and not close(f, 0.0):
            return False
        net[u] += f
        net[v] -= f
    for v, inj in a.injection.items():
        # A2
        if not close(inj, net[v]):
            return False
        # P1 on buses
        if v in D and not close(inj, 0.0):
            return False
    return not a.is_zero(tol)

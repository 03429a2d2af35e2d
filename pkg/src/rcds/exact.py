"""Exact reference solvers: brute force and branch-and-bound.

The branch-and-bound search is shared by three problems that differ only
in the feasibility test applied once the partial set dominates the graph:

* ``"ds"``   plain domination,
* ``"rcds"`` ``(V, I_D(E))`` connected (perfect protection),
* ``"cds"``  ``G[D]`` connected.

All three properties are closed under supersets, which the search uses to
prune: if every still-allowed vertex together cannot satisfy the property,
no completion can.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from itertools import combinations

from .graph import DomainError, Graph
from .protection import is_perfect_protection, is_rcds

BRUTE_FORCE_LIMIT = 20


class Infeasible(Exception):
    """No feasible set within the requested cardinality limit."""


class SizeGuardError(ValueError):
    pass


@dataclass
class SolveResult:
    optimum: tuple[int, ...]
    method: str
    stats: dict = field(default_factory=dict)

    @property
    def cardinality(self) -> int:
        return len(self.optimum)

    def to_dict(self) -> dict:
        return {"set": list(self.optimum), "cardinality": self.cardinality,
                "method": self.method, "stats": self.stats}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _require_connected(g: Graph) -> None:
    if not g.is_connected():
        raise DomainError("graph must be connected")


def brute_force_min_rcds(g: Graph, max_card: int | None = None) -> SolveResult:
    """Enumerate subsets by increasing size, lexicographically within a size."""
    _require_connected(g)
    if max_card is None and g.n > BRUTE_FORCE_LIMIT:
        raise SizeGuardError(
            f"brute force refuses {g.n} vertices (limit {BRUTE_FORCE_LIMIT}); pass max_card")
    t0 = time.perf_counter()
    top = g.n if max_card is None else min(max_card, g.n)
    tried = 0
    for k in range(0, top + 1):
        for D in combinations(g.vertices, k):
            tried += 1
            if is_rcds(g, D):
                return SolveResult(D, "brute", {"subsets": tried,
                                                "seconds": time.perf_counter() - t0})
    raise Infeasible(f"no RCDS with at most {max_card} vertices")


def _connected_in(g: Graph, S: set[int]) -> bool:
    if len(S) <= 1:
        return True
    start = min(S)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if y in S and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(S)


def _extension_candidates_cds(g: Graph, D: set[int], allowed: set[int]) -> list[int]:
    start = min(D)
    comp = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if y in D and y not in comp:
                comp.add(y)
                stack.append(y)
    return sorted({w for u in comp for w in g.neighbors(u) if w in allowed})


class _Search:
    """Depth-first in/out branching with admissible lower bounds.

    Each branch point picks a set of candidate vertices at least one of which
    must join ``D``; the i-th child takes candidate i and excludes the earlier
    ones, so the children partition the remaining search space.
    """

    def __init__(self, g: Graph, mode: str):
        if mode not in ("ds", "rcds", "cds"):
            raise ValueError(mode)
        self.g = g
        self.mode = mode
        self.closed = {v: frozenset(g.neighbors(v)) | {v} for v in g.vertices}
        self.best: tuple[int, ...] | None = None
        self.nodes = 0

    def _forced(self) -> tuple[set[int], set[int]]:
        """Support vertices of pendants go in, the pendants stay out."""
        g = self.g
        inside: set[int] = set()
        out: set[int] = set()
        if g.n <= 2:
            return inside, out
        for v in g.vertices:
            if g.degree(v) == 1:
                inside.add(g.neighbors(v)[0])
        for v in g.vertices:
            if g.degree(v) == 1 and v not in inside:
                out.add(v)
        return inside, out

    def _cover_bound(self, undominated: set[int], allowed: set[int]) -> float:
        if not undominated:
            return 0.0
        gain = {u: len(self.closed[u] & undominated) for u in allowed}
        lb = 0.0
        for v in undominated:
            best = max((gain[u] for u in self.closed[v] if u in allowed), default=0)
            if best == 0:
                return float("inf")
            lb += 1.0 / best
        return lb

    def run(self, upper: tuple[int, ...] | None = None) -> tuple[int, ...]:
        self.best = upper
        D, X = self._forced()
        if self.mode == "rcds":
            self._branch_rcds(D, X)
        else:
            self._branch(D, X)
        assert self.best is not None
        return self.best

    def _bound_ok(self, size: float) -> bool:
        # strict: ties never replace the incumbent
        return self.best is None or size < len(self.best) - 1e-9

    # -- RCDS: merge components of (V, I_D(E)) until one is left ----------
    def _labels(self, D: set[int]) -> tuple[dict[int, int], int]:
        g = self.g
        parent = {v: v for v in g.vertices}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for d in D:
            rd = find(d)
            for w in g.neighbors(d):
                rw = find(w)
                if rw != rd:
                    parent[rw] = rd
        label = {v: find(v) for v in g.vertices}
        return label, len(set(label.values()))

    def _branch_rcds(self, D: set[int], X: set[int]) -> None:
        self.nodes += 1
        g = self.g
        label, k = self._labels(D)
        if k == 1:
            self.best = tuple(sorted(D))
            return
        allowed = set(g.vertices) - X
        if self._labels(allowed)[1] != 1:
            return
        undecided = allowed - D
        # adding w fuses every component met by N[w]
        reduction = {w: len({label[u] for u in self.closed[w]}) - 1 for w in undecided}
        gains = sorted(reduction.values(), reverse=True)
        need, t = k - 1, 0
        for r in gains:
            if need <= 0 or r <= 0:
                break
            need -= r
            t += 1
        if need > 0:
            return
        dominated = set()
        for d in D:
            dominated |= self.closed[d]
        lb = max(t, _ceil(self._cover_bound(set(g.vertices) - dominated, allowed)))
        if not self._bound_ok(len(D) + lb):
            return
        members: dict[int, list[int]] = {}
        for v in g.vertices:
            members.setdefault(label[v], []).append(v)
        best_cands: list[int] | None = None
        best_key = 0
        for comp in members.values():
            cset = set(comp)
            cands = set()
            for u in comp:
                for w in g.neighbors(u):
                    if w not in cset:
                        if u in undecided:
                            cands.add(u)
                        if w in undecided:
                            cands.add(w)
            if best_cands is None or (len(cands), min(comp)) < (len(best_cands), best_key):
                best_cands, best_key = sorted(cands), min(comp)
        assert best_cands is not None
        order = sorted(best_cands, key=lambda w: (-reduction[w], -g.degree(w), w))
        excluded: set[int] = set()
        for w in order:
            self._branch_rcds(D | {w}, X | excluded)
            excluded = excluded | {w}

    # -- DS / CDS ----------------------------------------------------------
    def _feasible(self, D: set[int]) -> bool:
        return self.mode == "ds" or _connected_in(self.g, D)

    def _branch(self, D: set[int], X: set[int]) -> None:
        self.nodes += 1
        g = self.g
        allowed = set(g.vertices) - X
        undecided = allowed - D
        if self.mode == "cds" and not _connected_in(g, allowed):
            return
        dominated = set()
        for d in D:
            dominated |= self.closed[d]
        undominated = set(g.vertices) - dominated
        lb = self._cover_bound(undominated, allowed)
        if not self._bound_ok(len(D) + _ceil(lb)):
            return
        if not undominated:
            if self._feasible(D):
                self.best = tuple(sorted(D))
                return
            if not self._bound_ok(len(D) + 1):
                return
            cands = _extension_candidates_cds(g, D, undecided)
        else:
            # undominated vertex with the fewest remaining dominators
            v = min(undominated, key=lambda x: (len(self.closed[x] & allowed), x))
            cands = sorted(self.closed[v] & undecided,
                           key=lambda u: (-len(self.closed[u] & undominated), -g.degree(u), u))
        excluded: list[int] = []
        for u in cands:
            self._branch(D | {u}, X | set(excluded))
            excluded.append(u)


def _ceil(x: float) -> int:
    if x == float("inf"):
        return 1 << 30
    n = int(x)
    return n if x - n < 1e-9 else n + 1


def _solve(g: Graph, mode: str, method: str) -> SolveResult:
    t0 = time.perf_counter()
    if g.n == 0:
        return SolveResult((), method, {"nodes": 0, "seconds": 0.0})
    if g.n == 1:
        D = () if mode == "rcds" else (g.vertices[0],)
        return SolveResult(D, method, {"nodes": 0, "seconds": 0.0})
    s = _Search(g, mode)
    best = s.run(tuple(g.vertices))
    return SolveResult(best, method, {"nodes": s.nodes, "seconds": time.perf_counter() - t0})


def bnb_min_rcds(g: Graph) -> SolveResult:
    """Minimum relaxed connected dominating set by branch-and-bound."""
    _require_connected(g)
    res = _solve(g, "rcds", "bnb")
    assert g.n < 2 or is_perfect_protection(g, res.optimum)
    return res


def min_dominating_set(g: Graph) -> SolveResult:
    return _solve(g, "ds", "bnb-ds")


def min_connected_dominating_set(g: Graph) -> SolveResult:
    _require_connected(g)
    return _solve(g, "cds", "bnb-cds")

"""Dynamic program for minimum RCDS over a rooted sphere-cut decomposition.

States on a middle set are detailed colorings: one symbol per middle-set
vertex, listed in noose order.  The basic part says whether the vertex is
in ``D`` (1), dominated inside ``G_e`` (0) or undominated inside ``G_e``
(hat).  The subscript records where the vertex sits within its component
block: ``[`` first, ``]`` last, ``*`` in between, ``s`` alone.  A block is
the trace on the middle set of one connected component of
``(V(G_e), I_D(E(G_e)))``, counting only vertices that touch an active edge;
so hat vertices are never in a block and 0-vertices always are.  Because the
components live inside a disc with the middle set on its boundary, the
blocks never cross and a bracket stack recovers them.

Tables are sparse dicts ``coloring -> cost``; an absent key means infinity.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from .exact import SolveResult, bnb_min_rcds, brute_force_min_rcds
from .graph import DomainError, Graph
from .planar import planarize
from .protection import is_rcds
from .scd import (
    DecompositionError,
    MergeContext,
    RootedScd,
    heuristic_sphere_cut,
    root_decomposition,
)

# symbols, ordered as the alphabet 0[ 0] 0* 0s hat 1[ 1] 1* 1s
Z_OPEN, Z_CLOSE, Z_MID, Z_SING, HAT, O_OPEN, O_CLOSE, O_MID, O_SING = range(9)
OPEN, CLOSE, MID, SING = range(4)
ZERO, ONE, NONE = 0, 1, 2   # basic colors; NONE is hat

NAMES = ["0[", "0]", "0*", "0s", "^0", "1[", "1]", "1*", "1s"]
Coloring = tuple[int, ...]


class MalformedState(RuntimeError):
    """A detailed coloring whose brackets do not balance."""


class CrossingBlocks(RuntimeError):
    """Merged blocks interleave along the noose; the decomposition is broken."""


def basic(sym: int) -> int:
    if sym == HAT:
        return NONE
    return ONE if sym > HAT else ZERO


def symbol(b: int, kind: int) -> int:
    if b == NONE:
        return HAT
    return kind + (O_OPEN if b == ONE else 0)


def kind_of(sym: int) -> int:
    return sym - O_OPEN if sym > HAT else sym


def show(col: Coloring) -> str:
    return "(" + ",".join(NAMES[s] for s in col) + ")"


def decode(col: Coloring) -> tuple[tuple[int, ...], int]:
    """Block label per position (-1 for hat) and the number of blocks."""
    lab = [-1] * len(col)
    stack: list[int] = []
    nb = 0
    for i, s in enumerate(col):
        if s == HAT:
            continue
        k = kind_of(s)
        if k == SING:
            lab[i] = nb
            nb += 1
        elif k == OPEN:
            lab[i] = nb
            stack.append(nb)
            nb += 1
        else:
            if not stack:
                raise MalformedState(f"unmatched bracket in {show(col)}")
            lab[i] = stack[-1]
            if k == CLOSE:
                stack.pop()
    if stack:
        raise MalformedState(f"unclosed bracket in {show(col)}")
    return tuple(lab), nb


def encode(basics: Sequence[int], groups: Sequence[int]) -> Coloring:
    """Coloring from basic colors and a group id per position (-1: none)."""
    total: dict[int, int] = {}
    for r in groups:
        if r >= 0:
            total[r] = total.get(r, 0) + 1
    seen: dict[int, int] = {}
    stack: list[int] = []
    out = []
    for b, r in zip(basics, groups):
        if r < 0:
            out.append(HAT)
            continue
        k = seen.get(r, 0)
        t = total[r]
        seen[r] = k + 1
        if t == 1:
            out.append(symbol(b, SING))
            continue
        if k == 0:
            stack.append(r)
            out.append(symbol(b, OPEN))
        else:
            if not stack or stack[-1] != r:
                raise CrossingBlocks("component blocks cross along the noose")
            if k == t - 1:
                stack.pop()
                out.append(symbol(b, CLOSE))
            else:
                out.append(symbol(b, MID))
    return tuple(out)


def leaf_table(middle_size: int) -> dict[Coloring, int]:
    """Value function of a T' edge holding a single graph edge."""
    if middle_size == 1:
        return {(Z_SING,): 1, (O_SING,): 1}
    if middle_size == 2:
        return {(Z_OPEN, O_CLOSE): 1, (HAT, HAT): 0, (O_OPEN, Z_CLOSE): 1, (O_OPEN, O_CLOSE): 2}
    raise DomainError(f"leaf edge with middle set of size {middle_size}")


# basic consistency on a vertex shared by both children
_ALLOWED_X4 = {ONE: (ONE,), ZERO: (ZERO, NONE), NONE: (ZERO,)}
_ALLOWED_X3 = {ONE: (ONE,), ZERO: (ZERO, NONE), NONE: (ZERO, NONE)}


def _x3_parent(b1: int, b2: int) -> int:
    if b1 == ONE:
        return ONE
    if b1 == NONE and b2 == NONE:
        return NONE
    return ZERO


def consistent_basic(ce: dict[int, int], ce1: dict[int, int], ce2: dict[int, int],
                     ctx: MergeContext) -> bool:
    """Per-vertex consistency of three basic colorings (dicts vertex -> color)."""
    for u in ctx.X1:
        if ce[u] != ce1[u]:
            return False
    for u in ctx.X2:
        if ce[u] != ce2[u]:
            return False
    for u in ctx.X3:
        a, b1, b2 = ce[u], ce1[u], ce2[u]
        if a in (NONE, ONE):
            if not (b1 == b2 == a):
                return False
        elif (b1, b2) not in ((ZERO, NONE), (NONE, ZERO), (ZERO, ZERO)):
            return False
    for u in ctx.X4:
        if (ce1[u], ce2[u]) not in ((ONE, ONE), (ZERO, NONE), (NONE, ZERO), (ZERO, ZERO)):
            return False
    return True


@dataclass
class _Entry:
    col: Coloring
    cost: int
    lab: tuple[int, ...]
    nb: int
    basics: tuple[int, ...]


def _entries(table: dict[Coloring, int]) -> list[_Entry]:
    out = []
    for col in sorted(table):
        lab, nb = decode(col)
        out.append(_Entry(col, table[col], lab, nb, tuple(basic(s) for s in col)))
    return out


class _Merger:
    """Combines two child colorings into the parent coloring for one T' edge."""

    def __init__(self, w: Sequence[int], w1: Sequence[int], w2: Sequence[int]):
        ctx = _ctx(w, w1, w2)
        self.ctx = ctx
        self.root = not w
        shared = sorted(ctx.X3 | ctx.X4)
        i1 = {v: i for i, v in enumerate(w1)}
        i2 = {v: i for i, v in enumerate(w2)}
        self.sh1 = [i1[v] for v in shared]
        self.sh2 = [i2[v] for v in shared]
        self.allowed = [(_ALLOWED_X3 if v in ctx.X3 else _ALLOWED_X4) for v in shared]
        # (position in child 1 or -1, position in child 2 or -1) per parent position
        self.src = [(i1.get(v, -1) if v not in ctx.X2 else -1,
                     i2.get(v, -1) if v not in ctx.X1 else -1) for v in w]

    def key1(self, e: _Entry) -> tuple[int, ...]:
        return tuple(e.basics[p] for p in self.sh1)

    def key2(self, e: _Entry) -> tuple[int, ...]:
        return tuple(e.basics[p] for p in self.sh2)

    def partner_keys(self, k1: tuple[int, ...]) -> list[tuple[int, ...]]:
        keys: list[tuple[int, ...]] = [()]
        for b, allowed in zip(k1, self.allowed):
            keys = [k + (b2,) for k in keys for b2 in allowed[b]]
        return keys

    def merge(self, e1: _Entry, e2: _Entry) -> Coloring | None:
        """Parent coloring, or None when a component would be cut off."""
        n1 = e1.nb
        par = list(range(n1 + e2.nb))

        def find(x: int) -> int:
            while par[x] != x:
                par[x] = par[par[x]]
                x = par[x]
            return x

        lab1, lab2 = e1.lab, e2.lab
        for p1, p2 in zip(self.sh1, self.sh2):
            a, b = lab1[p1], lab2[p2]
            if a >= 0 and b >= 0:
                ra, rb = find(a), find(n1 + b)
                if ra != rb:
                    par[rb] = ra
        if self.root:
            return () if len({find(x) for x in range(len(par))}) == 1 else None
        groups = []
        basics = []
        hit = set()
        for p1, p2 in self.src:
            if p1 >= 0 and p2 >= 0:
                b1, b2 = e1.basics[p1], e2.basics[p2]
                b = _x3_parent(b1, b2)
                r = find(lab1[p1]) if lab1[p1] >= 0 else (find(n1 + lab2[p2]) if lab2[p2] >= 0 else -1)
            elif p1 >= 0:
                b = e1.basics[p1]
                r = find(lab1[p1]) if lab1[p1] >= 0 else -1
            else:
                b = e2.basics[p2]
                r = find(n1 + lab2[p2]) if lab2[p2] >= 0 else -1
            basics.append(b)
            groups.append(r)
            if r >= 0:
                hit.add(r)
        for x in range(len(par)):
            if find(x) not in hit:
                return None
        return encode(basics, groups)


def _ctx(w, w1, w2) -> MergeContext:
    from .scd import context_from_sets
    ctx = context_from_sets(w, w1, w2)
    only = (set(w) ^ set(w1) ^ set(w2)) - (set(w) & set(w1) & set(w2))
    if only:
        raise DecompositionError(f"vertices {sorted(only)} lie in exactly one middle set")
    return ctx


def merge_compatible(col1: Coloring, col2: Coloring, w: Sequence[int], w1: Sequence[int],
                     w2: Sequence[int]) -> tuple[Coloring, int] | None:
    """Parent coloring and double-count correction for one child pair.

    ``w``, ``w1``, ``w2`` are the parent and child middle sets in noose
    order.  Returns None if the basic colorings are inconsistent or a
    component would vanish from the parent's middle set.
    """
    mg = _Merger(w, w1, w2)
    e1 = _entries({col1: 0})[0]
    e2 = _entries({col2: 0})[0]
    k1 = mg.key1(e1)
    if mg.key2(e2) not in mg.partner_keys(k1):
        return None
    out = mg.merge(e1, e2)
    if out is None:
        return None
    return out, sum(1 for b in k1 if b == ONE)


@dataclass
class DpResult:
    tables: dict[int, dict[Coloring, int]]
    pointers: dict[int, dict[Coloring, tuple[Coloring, Coloring]]]
    root_value: int | None
    root_pair: tuple[Coloring, Coloring] | None
    stats: dict = field(default_factory=dict)


def dp_recursion(rs: RootedScd) -> DpResult:
    tables: dict[int, dict[Coloring, int]] = {}
    pointers: dict[int, dict[Coloring, tuple[Coloring, Coloring]]] = {}
    root_value = None
    root_pair = None
    pairs = 0
    for c in rs.postorder():
        ch = rs.children[c]
        if not ch:
            tables[c] = leaf_table(len(rs.middle[c]))
            continue
        c1, c2 = ch
        mg = _Merger(rs.pi[c], rs.pi[c1], rs.pi[c2])
        ent1 = _entries(tables[c1])
        ent2 = _entries(tables[c2])
        buckets: dict[tuple[int, ...], list[_Entry]] = {}
        for e in ent2:
            buckets.setdefault(mg.key2(e), []).append(e)
        partners: dict[tuple[int, ...], list[_Entry]] = {}
        table: dict[Coloring, int] = {}
        ptr: dict[Coloring, tuple[Coloring, Coloring]] = {}
        for e1 in ent1:
            k1 = mg.key1(e1)
            cands = partners.get(k1)
            if cands is None:
                cands = sorted((e for k in mg.partner_keys(k1) for e in buckets.get(k, ())),
                               key=lambda e: e.col)
                partners[k1] = cands
            shared_ones = sum(1 for b in k1 if b == ONE)
            for e2 in cands:
                pairs += 1
                # members on both sides are counted twice
                assert sum(1 for p in mg.sh2 if e2.basics[p] == ONE) == shared_ones
                out = mg.merge(e1, e2)
                if out is None:
                    continue
                cost = e1.cost + e2.cost - shared_ones
                old = table.get(out)
                if old is None or cost < old:
                    table[out] = cost
                    ptr[out] = (e1.col, e2.col)
        if c == rs.z:
            if table:
                root_value = table[()]
                root_pair = ptr[()]
        else:
            tables[c] = table
            pointers[c] = ptr
    return DpResult(tables, pointers, root_value, root_pair, {"pairs": pairs})


def traceback(res: DpResult, rs: RootedScd) -> tuple[int, ...]:
    if res.root_pair is None:
        raise RuntimeError("no feasible root value to trace back from")
    D: set[int] = set()
    c1, c2 = rs.children[rs.z]
    stack = [(c1, res.root_pair[0]), (c2, res.root_pair[1])]
    while stack:
        c, col = stack.pop()
        if rs.is_leaf_edge(c):
            order = rs.pi[c]
            for v, s in zip(order, col):
                if basic(s) == ONE:
                    D.add(v)
            if len(order) == 1:
                u = order[0]
                a, b = rs.dec.leaf_edge[c]
                other = b if a == u else a
                if basic(col[0]) != ONE:
                    D.add(other)
            continue
        try:
            p1, p2 = res.pointers[c][col]
        except KeyError:
            raise RuntimeError(f"dangling pointer at T' edge {c}: {show(col)}") from None
        k1, k2 = rs.children[c]
        stack.append((k1, p1))
        stack.append((k2, p2))
    return tuple(sorted(D))


def solve_planar_rcds(g: Graph) -> SolveResult:
    """Embed, decompose, run the DP and trace back an optimal set.

    Nonplanar graphs are planarized first; the answer is then an RCDS of
    the original graph whose size bounds the optimum from above.
    """
    if not g.is_connected():
        raise DomainError("graph must be connected")
    if g.m <= 2:
        res = brute_force_min_rcds(g)
        return SolveResult(res.optimum, "dp", {"width": g.m and 1, "planar": True,
                                                "removed_edges": 0, **res.stats})
    t0 = time.perf_counter()
    pr = planarize(g)
    h = pr.planar_graph
    try:
        dec = heuristic_sphere_cut(pr.embedding)
    except DecompositionError:
        res = bnb_min_rcds(h)
        return SolveResult(res.optimum, "dp-fallback-bnb",
                           {"planar": not pr.removed_edges,
                            "removed_edges": len(pr.removed_edges), **res.stats})
    rs = root_decomposition(dec)
    t1 = time.perf_counter()
    res = dp_recursion(rs)
    if res.root_value is None:
        raise RuntimeError("DP found no feasible set on a connected graph")
    D = traceback(res, rs)
    t2 = time.perf_counter()
    assert len(D) == res.root_value, (D, res.root_value)
    assert is_rcds(h, D)
    return SolveResult(D, "dp", {
        "planar": not pr.removed_edges,
        "removed_edges": len(pr.removed_edges),
        "width": dec.width,
        "pairs": res.stats["pairs"],
        "t_scd": t1 - t0,
        "t_dp": t2 - t1,
    })


def table_dump(res: DpResult) -> dict[str, dict[str, int]]:
    """JSON-friendly view of every table, keyed by T' edge."""
    return {str(c): {show(col): v for col, v in sorted(t.items())}
            for c, t in sorted(res.tables.items())}

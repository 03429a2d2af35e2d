"""Benchmark harness over the bundled IEEE bus/branch topologies.

Each instance runs the decomposition DP (after planarization where
needed), the exact branch-and-bound and the dominating-set baseline, and
is checked against the published reference counts.
"""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from importlib.resources import files
from typing import Iterable

from .dp import solve_planar_rcds
from .exact import bnb_min_rcds, min_dominating_set
from .graph import Graph, load_graph

SUITES = {
    "ieee": ["ieee9", "ieee14", "ieee24", "ieee30", "ieee39", "ieee57", "ieee118", "ieee300"],
}

# name: (|V|, |E|, planar, BW_p, |D*_SCD|, |D*|, |DS|)
REFERENCE = {
    "ieee9": (9, 9, True, 2, 3, 3, 3),
    "ieee14": (14, 20, True, 2, 4, 4, 4),
    "ieee24": (24, 34, False, 3, 8, 8, 7),
    "ieee30": (30, 41, True, 3, 10, 10, 10),
    "ieee39": (39, 46, True, 3, 15, 15, 13),
    "ieee57": (57, 78, False, 4, 20, 19, 17),
    "ieee118": (118, 179, True, 4, 34, 34, 32),
    "ieee300": (300, 409, False, 4, 97, 93, 87),
}

# exact solves beyond this size need exact_large=True
EXACT_LIMIT = 57


def bundled_path(name: str):
    return files("rcds") / "data" / f"{name}.txt"


def load_bundled(name: str) -> Graph:
    if name not in REFERENCE:
        raise KeyError(f"unknown bundled instance {name!r}")
    return load_graph(bundled_path(name))


@dataclass
class BenchRecord:
    name: str
    n: int
    m: int
    planar: bool
    width: int | None
    d_scd: int
    d_exact: int | None
    ds: int | None
    t_scd: float
    t_dp: float
    t_solve: float | None
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return asdict(self)


def check_record(r: BenchRecord) -> list[str]:
    out = []
    ref = REFERENCE.get(r.name)
    if ref is not None:
        n, m, planar, _, d_scd, d_exact, ds = ref
        if (r.n, r.m) != (n, m):
            out.append(f"size ({r.n},{r.m}) != ({n},{m})")
        if r.planar != planar:
            out.append(f"planar flag {r.planar} != {planar}")
        if planar and r.d_scd != d_scd:
            out.append(f"|D*_SCD| {r.d_scd} != {d_scd}")
        if not planar and r.d_scd < d_exact:
            out.append(f"|D*_SCD| {r.d_scd} below exact optimum {d_exact}")
        if r.d_exact is not None and r.d_exact != d_exact:
            out.append(f"|D*| {r.d_exact} != {d_exact}")
        if r.ds is not None and r.ds != ds:
            out.append(f"|DS| {r.ds} != {ds}")
    if r.ds is not None and r.d_exact is not None and r.ds > r.d_exact:
        out.append("|DS| exceeds |D*|")
    if r.d_exact is not None and r.d_exact > r.d_scd:
        out.append("|D*| exceeds |D*_SCD|")
    return out


def run_instance(name: str, g: Graph | None = None, exact: bool | None = None) -> BenchRecord:
    g = load_bundled(name) if g is None else g
    if exact is None:
        exact = g.n <= EXACT_LIMIT
    res = solve_planar_rcds(g)
    d_exact = ds = t_solve = None
    if exact:
        t0 = time.perf_counter()
        d_exact = bnb_min_rcds(g).cardinality
        t_solve = time.perf_counter() - t0
        ds = min_dominating_set(g).cardinality
    rec = BenchRecord(
        name=name, n=g.n, m=g.m, planar=res.stats.get("planar", True),
        width=res.stats.get("width"), d_scd=res.cardinality, d_exact=d_exact, ds=ds,
        t_scd=res.stats.get("t_scd", 0.0), t_dp=res.stats.get("t_dp", 0.0), t_solve=t_solve)
    rec.mismatches = check_record(rec)
    return rec


def bench_suite(names: Iterable[str], exact_large: bool = False) -> list[BenchRecord]:
    out = []
    for name in names:
        g = load_bundled(name)
        out.append(run_instance(name, g, exact=exact_large or g.n <= EXACT_LIMIT))
    return out


def _fmt(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, float):
        return f"{x:.3f}"
    return str(x)


def render_table(records: list[BenchRecord]) -> str:
    head = ["name", "|V|", "|E|", "planar", "width", "|D*_SCD|", "|D*|", "|DS|",
            "T_SCD", "T_DP", "T_solve", "check"]
    rows = [[r.name, r.n, r.m, r.planar, r.width, r.d_scd, r.d_exact, r.ds,
             r.t_scd, r.t_dp, r.t_solve, "ok" if r.ok else "; ".join(r.mismatches)]
            for r in records]
    cells = [head] + [[_fmt(x) for x in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(head))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def records_json(records: list[BenchRecord]) -> str:
    return json.dumps([r.to_dict() for r in records], indent=2)

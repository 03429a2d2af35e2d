"""Command-line front end.

Every failure is reported as one JSON object on stderr.  Exit status 2
means the input was invalid or infeasible, 1 an internal error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .bench import REFERENCE, SUITES, bench_suite, bundled_path, records_json, render_table
from .dp import solve_planar_rcds
from .exact import Infeasible, SizeGuardError, bnb_min_rcds, brute_force_min_rcds
from .graph import DomainError, Graph, GraphError, load_graph
from .milp import build_milp, export_lp
from .planar import planarize
from .protection import construct_stealth_attack, is_perfect_protection, is_rcds, verify_attack
from .scd import DecompositionError, heuristic_sphere_cut, validate


class UsageError(Exception):
    pass


def _graph(spec: str) -> Graph:
    """Path to an edge list or JSON graph, or the name of a bundled instance."""
    if not os.path.exists(spec) and spec in REFERENCE:
        return load_graph(bundled_path(spec))
    if not os.path.exists(spec):
        raise UsageError(f"no such file: {spec}")
    return load_graph(spec)


def _vertex_set(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError:
        raise UsageError(f"cannot parse vertex set {text!r}") from None


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_solve(a) -> int:
    g = _graph(a.input)
    if a.method == "dp":
        res = solve_planar_rcds(g)
    elif a.method == "bnb":
        res = bnb_min_rcds(g)
    else:
        res = brute_force_min_rcds(g)
    print(f"cardinality {res.cardinality}: {{{', '.join(map(str, res.optimum))}}} ({res.method})")
    if a.json:
        _write(a.json, res.to_json())
    return 0


def cmd_verify(a) -> int:
    g = _graph(a.input)
    D = _vertex_set(a.set)
    p1 = is_perfect_protection(g, D)
    p2 = is_rcds(g, D)
    verdict = "perfect" if p1 else "not perfect"
    print(verdict)
    print(json.dumps({"verdict": verdict, "incidence_connected": p1, "relaxed_cds": p2,
                      "agree": p1 == p2}))
    return 0 if p1 == p2 else 1


def cmd_attack(a) -> int:
    g = _graph(a.input)
    D = _vertex_set(a.set)
    att = construct_stealth_attack(g, D)
    if att is None:
        _write(a.out, "none\n")
        return 0
    assert verify_attack(g, D, att)
    _write(a.out, att.to_json() + "\n")
    return 0


def cmd_decompose(a) -> int:
    g = _graph(a.input)
    pr = planarize(g)
    d = heuristic_sphere_cut(pr.embedding, seed=a.seed)
    rep = validate(pr.embedding, d)
    if not rep.ok:
        raise DecompositionError("; ".join(rep.errors))
    out = d.to_dict()
    out["removed_edges"] = [list(e) for e in sorted(pr.removed_edges)]
    _write(a.out, json.dumps(out) + "\n")
    if a.out:
        print(f"width {d.width}, {len(pr.removed_edges)} edges removed for planarity")
    return 0


def cmd_export_milp(a) -> int:
    g = _graph(a.input)
    m = build_milp(g, a.source)
    _write(a.out, export_lp(m))
    return 0


def cmd_bench(a) -> int:
    names = a.names.split(",") if a.names else SUITES[a.suite]
    records = bench_suite([n for n in names if n], exact_large=a.exact_large)
    sys.stdout.write(render_table(records))
    if a.json:
        _write(a.json, records_json(records) + "\n")
    if a.strict and not all(r.ok for r in records):
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rcds", description="Perfect protection / minimum RCDS toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="minimum RCDS")
    s.add_argument("--input", required=True)
    s.add_argument("--method", choices=["dp", "bnb", "brute"], default="dp")
    s.add_argument("--json")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", help="is a vertex set a perfect protection set")
    s.add_argument("--input", required=True)
    s.add_argument("--set", required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("attack", help="stealth attack against a protection set")
    s.add_argument("--input", required=True)
    s.add_argument("--set", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_attack)

    s = sub.add_parser("decompose", help="sphere-cut decomposition as JSON")
    s.add_argument("--input", required=True)
    s.add_argument("--out")
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("export-milp", help="flow MILP in LP format")
    s.add_argument("--input", required=True)
    s.add_argument("--out")
    s.add_argument("--source", type=int)
    s.set_defaults(func=cmd_export_milp)

    s = sub.add_parser("bench", help="run the benchmark suite")
    s.add_argument("--suite", choices=sorted(SUITES), default="ieee")
    s.add_argument("--names", help="comma-separated subset of the suite")
    s.add_argument("--json")
    s.add_argument("--strict", action="store_true")
    s.add_argument("--exact-large", action="store_true",
                   help="also run the exact solvers on instances above 57 buses")
    s.set_defaults(func=cmd_bench)
    return p


def _fail(kind: str, msg: str, code: int) -> int:
    print(json.dumps({"error": kind, "message": msg, "exit": code}), file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        if e.code in (0, None):
            return 0
        return _fail("usage", "invalid command line", 2)
    try:
        return args.func(args)
    except (UsageError, GraphError, Infeasible, SizeGuardError, KeyError, OSError) as e:
        kind = "infeasible" if isinstance(e, Infeasible) else type(e).__name__
        return _fail(kind, str(e), 2)
    except Exception as e:  # noqa: BLE001
        return _fail("internal", f"{type(e).__name__}: {e}", 1)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

    combpfaff verify <theorem> --graph FILE [--a LIST] [--b LIST] [--k N] [--degree D] [--seed S]
    combpfaff demo paper-examples [--report text|json] [--jobs N]
    combpfaff validate --graph FILE

``--graph`` takes a path or the name of a bundled fixture (``fig1``, ``fig4``, ...).
The exit status is 0 exactly when every report passes.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import det2pf, digraph, flows, groves
from .errors import CombPfaffError, WrongGraphKind
from .graphio import fixture_path, list_fixtures, load_graph
from .linalg import SkewMatrix, determinant, pfaffian_matchings, pfaffian_recursive
from .report import SubCheck, VerificationReport, sub_check, timed
from .ring import Polynomial, RationalFunction

THEOREMS = ("lindstrom", "fomin", "stembridge", "stembridge-walks", "det2pf",
            "grove-det", "grove-pf", "flow-det", "flow-pf")
_NEEDS = {
    "lindstrom": digraph.Digraph, "fomin": digraph.Digraph, "stembridge": digraph.Digraph,
    "stembridge-walks": digraph.Digraph, "grove-det": groves.GraphWithBoundary,
    "grove-pf": groves.GraphWithBoundary, "flow-det": flows.PlanarCircularNetwork,
    "flow-pf": flows.PlanarCircularNetwork,
}


def resolve_graph(spec):
    path = Path(spec)
    if not path.exists() and spec.removesuffix(".json") in list_fixtures():
        path = fixture_path(spec)
    return load_graph(path)


def _split(text):
    return tuple(x.strip() for x in text.split(",") if x.strip()) if text else None


def _pick(given, pool, k, what):
    if given is not None:
        return given
    if k is None:
        raise SystemExit(f"give --{what} or --k")
    return tuple(pool[:k])


def run_suite(theorem, graph=None, a=None, b=None, k=None, degree=None, seed=None, rows=4, cols=6):
    """Dispatch one verification; tuples are sequences of vertex ids."""
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}")
    if theorem == "det2pf":
        return det2pf.det2pf_random_check(0 if seed is None else seed, rows, cols, 4 if k is None else k)
    need = _NEEDS[theorem]
    if not isinstance(graph, need):
        raise WrongGraphKind(f"{theorem} needs a {need.__name__}, got {type(graph).__name__}")
    if theorem == "lindstrom":
        return digraph.lindstrom_check(graph, a, b)
    if theorem == "fomin":
        return digraph.fomin_check(graph, a, b, 10 if degree is None else degree)
    if theorem in ("stembridge", "stembridge-walks"):
        mode = "paths" if theorem == "stembridge" else "walks"
        d = None if mode == "paths" else (10 if degree is None else degree)
        return digraph.stembridge_check(graph, a, b, mode, d)
    if theorem == "grove-det":
        return groves.grove_determinant_check(graph, a, b)
    if theorem == "grove-pf":
        B = tuple(b) if b else ()
        A = tuple(v for v in graph.boundary if v not in set(B))
        return groves.grove_pfaffian_check(graph, A, B, _pick(a, A, k, "a"))
    if theorem == "flow-det":
        return flows.flow_determinant_check(graph, a, b)
    return flows.flow_pfaffian_check(graph, _pick(a, graph.sources, k, "a"))


# worked examples; each builder is a module-level function so worker processes can run it

def _demo_path_sum():
    g = resolve_graph("fig1")
    with timed() as t:
        lhs = digraph.path_sum(g, "2", "4")
    return VerificationReport.compare("path-sum", {"graph": "fig1", "a": "2", "b": "4"}, lhs,
                                      Polynomial.parse("c*e + f"), seconds=t["seconds"])


def _demo_lindstrom():
    report = digraph.lindstrom_check(resolve_graph("fig1"), ("1", "2"), ("3", "4"))
    expected = "a*b*f - a*d*e"
    ok = report.lhs == expected and report.rhs == expected
    report.details.append(SubCheck("exact rendering of both sides", report.lhs, expected, ok))
    report.passed = report.passed and ok
    return report


def _demo_pfaffian_4x4():
    names = "abcdef"
    with timed() as t:
        A = SkewMatrix.from_upper_list(4, [Polynomial.parse(x) for x in names])
        by_matchings = pfaffian_matchings(A)
        by_recursion = pfaffian_recursive(A)
        det = determinant(A)
    details = [sub_check("recursive expansion", by_recursion, by_matchings),
               sub_check("Pf^2 = det", by_matchings * by_matchings, det)]
    return VerificationReport.compare("pfaffian-4x4", {"upper": list(names)}, by_matchings,
                                      Polynomial.parse("a*f - b*e + c*d"), details, seconds=t["seconds"])


def _demo_fomin():
    g = resolve_graph("fig4")
    report = digraph.fomin_check(g, ("1", "2"), ("3", "4"), 12)
    with timed() as t:
        exact = determinant(digraph.walk_matrix(g, ("1", "2"), ("3", "4")))
    expected = RationalFunction(Polynomial.parse("a*b*c*e*g"), Polynomial.parse("1 - d*e*f"))
    report.details.append(sub_check("det(W) in closed form", exact, expected))
    report.passed = report.passed and report.details[-1].passed
    report.seconds += t["seconds"]
    return report


def _demo_allones():
    with timed() as t:
        details = [sub_check(f"Pf(M_{2 * n})", det2pf.allones_pfaffian(2 * n), 1) for n in range(7)]
    return VerificationReport.compare("allones-pfaffian", {"n": list(range(7))}, 1, 1, details,
                                      seconds=t["seconds"])


FIG9_FLOW = ("e12_1", "e2_12", "e3_13", "e13_4", "e16_5", "e6_16", "e15_7", "e8_15", "e15_9", "e10_15",
             "e15_12", "e12_16", "e16_15")


def _demo_fig9():
    n = resolve_graph("fig9-network")
    with timed() as t:
        alt = flows.is_alternating(n, FIG9_FLOW)
        theta = flows.collision_index(n, FIG9_FLOW) if alt else -1
        touched = sorted((v for v in n.boundary if n.boundary_edge[v] in FIG9_FLOW), key=int)
    details = [sub_check("alternating", int(alt), 1),
               sub_check("boundary vertices touched", len(touched), 10)]
    return VerificationReport.compare("collision-index", {"graph": "fig9-network", "flow": list(FIG9_FLOW)},
                                      theta, 4, details, seconds=t["seconds"])


DEMOS = (_demo_path_sum, _demo_lindstrom, _demo_pfaffian_4x4, _demo_fomin, _demo_allones, _demo_fig9)


def _call(fn):
    return fn()


def demo_paper_examples(jobs=1):
    """Every demo report, in declaration order regardless of completion order."""
    if jobs <= 1:
        return [fn() for fn in DEMOS]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_call, DEMOS))


def _emit(reports, fmt, as_list, out=None):
    out = out or sys.stdout
    if fmt == "json":
        payload = [r.to_dict() for r in reports]
        out.write(json.dumps(payload if as_list else payload[0], indent=2) + "\n")
    else:
        for r in reports:
            out.write(r.to_text() + "\n")
        if len(reports) > 1:
            out.write(f"{sum(r.passed for r in reports)}/{len(reports)} passed\n")


def build_parser():
    p = argparse.ArgumentParser(prog="combpfaff", description="Verify determinant and Pfaffian identities "
                                "for path, walk, grove and flow families.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run one theorem check")
    v.add_argument("theorem", choices=THEOREMS)
    v.add_argument("--graph", help="graph file or bundled fixture name")
    v.add_argument("--a", help="comma-separated source tuple")
    v.add_argument("--b", help="comma-separated target tuple (or ordered target set)")
    v.add_argument("--k", type=int)
    v.add_argument("--degree", type=int, help="total-degree truncation for walk sums")
    v.add_argument("--seed", type=int)
    v.add_argument("--rows", type=int, default=4)
    v.add_argument("--cols", type=int, default=6)
    v.add_argument("--report", choices=("text", "json"), default="text")

    d = sub.add_parser("demo", help="rerun the worked examples")
    d.add_argument("which", choices=("paper-examples",))
    d.add_argument("--report", choices=("text", "json"), default="text")
    d.add_argument("--jobs", type=int, default=1)

    val = sub.add_parser("validate", help="load and validate a graph file")
    val.add_argument("--graph", required=True)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            g = resolve_graph(args.graph)
            print(f"valid: {g!r}")
            return 0
        if args.command == "demo":
            reports = demo_paper_examples(args.jobs)
        else:
            graph = None if args.theorem == "det2pf" else resolve_graph(_require(args.graph, "--graph"))
            reports = [run_suite(args.theorem, graph, _split(args.a), _split(args.b), args.k, args.degree,
                                 args.seed, args.rows, args.cols)]
    except CombPfaffError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    _emit(reports, args.report, as_list=args.command == "demo")
    return 0 if all(r.passed for r in reports) else 1


def _require(value, flag):
    if value is None:
        raise SystemExit(f"{flag} is required for this theorem")
    return value


if __name__ == "__main__":
    sys.exit(main())

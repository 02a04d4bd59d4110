"""Command-line front end: analyze, generate, feasible, enumerate, search."""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .feasibility import FeasibilityReport, dual_array, enumerate_families, validate_pair
from .generators import GENERATORS, GeneratedGraph, generate, subdivision
from .graph_core import CLASS_NAMES, GraphInputError, bipartition, format_graph, read_graph
from .homogeneity import DEFAULT_BUDGET, BudgetExceeded, HomogeneityVerdict, homogeneity_verdict
from .regularity import (
    ArrayFormatError,
    DistanceBiregular,
    DistanceRegular,
    IntersectionArray,
    NotConnected,
    NotDistanceRegularized,
    classify,
)
from .scalars import InfeasibleError, ScalarTable, scalar_table
from .search import (
    DEFAULT_MAX_NODES,
    DEFAULT_MAX_SECONDS,
    ExhaustedNoGraph,
    Found,
    InfeasibleArrays,
    Timeout,
    construct_from_arrays,
)

EXIT_OK, EXIT_EXPECT, EXIT_INPUT = 0, 1, 2
TOP_KEYS = ("command", "inputs", "classification", "arrays", "scalars", "homogeneity", "feasibility", "warnings")


class InputError(Exception):
    pass


class Report(dict):
    def __init__(self, command: str, inputs: dict[str, Any]):
        super().__init__({k: None for k in TOP_KEYS})
        self["command"] = command
        self["inputs"] = inputs
        self["warnings"] = []


# --- serialization --------------------------------------------------------


def _plain(obj: Any, warnings: list[str], path: str = "") -> Any:
    """Convert to JSON-ready data; rationals become 'p/q' strings with a warning."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        if obj.denominator == 1:
            return int(obj)
        warnings.append(f"non-integral value {obj} at {path}")
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, IntersectionArray):
        return str(obj)
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            key = ",".join(map(str, k)) if isinstance(k, tuple) else str(k)
            out[key] = _plain(v, warnings, f"{path}.{key}" if path else key)
        return out
    if isinstance(obj, (list, tuple)):
        return [_plain(v, warnings, f"{path}[{i}]") for i, v in enumerate(obj)]
    return str(obj)


def _scalar_text(v: Any) -> str:
    if isinstance(v, str):
        return v
    return json.dumps(v)


def flatten(doc: Any, prefix: str = "") -> list[tuple[str, Any]]:
    if isinstance(doc, dict):
        if not doc and prefix:
            return [(prefix, {})]
        out = []
        for k, v in doc.items():
            out += flatten(v, f"{prefix}.{k}" if prefix else k)
        return out
    if isinstance(doc, list) and doc and all(isinstance(v, dict) for v in doc):
        out = []
        for i, v in enumerate(doc):
            out += flatten(v, f"{prefix}[{i}]")
        return out
    return [(prefix, doc)]


def render_text(doc: dict) -> str:
    return "\n".join(f"{k}: {_scalar_text(v)}" for k, v in flatten(doc)) + "\n"


def parse_text(text: str) -> dict[str, Any]:
    """Inverse of render_text on the value level (used by tests)."""
    out = {}
    for line in text.splitlines():
        key, _, raw = line.partition(": ")
        try:
            out[key] = json.loads(raw)
        except json.JSONDecodeError:
            out[key] = raw
    return out


def emit(report: Report, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    warnings: list[str] = list(report["warnings"])
    doc = {k: _plain(report[k], warnings, k) for k in TOP_KEYS if k != "warnings"}
    doc = {k: doc.get(k) for k in TOP_KEYS}
    doc["warnings"] = warnings
    if as_json:
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(render_text(doc))


# --- report pieces --------------------------------------------------------


def _scalars_doc(t: ScalarTable) -> dict:
    return {
        "layer_sizes": list(t.kY),
        "layer_sizes_other": list(t.kYp),
        "rank1": t.rank1,
        "rank2": t.rank2,
        "p2ii": t.p2ii,
        "pi2i": t.pi2i,
        "delta": t.delta,
        "delta_criterion_applicable": t.delta_applicable,
        "gamma": t.gamma,
        "triple_counts": {i: {"t_minus": a, "t_plus": b, "t_pair": c} for i, (a, b, c) in t.triples.items()},
    }


def _profile_doc(p) -> dict:
    d = {"status": p.status.value, "domain_size": p.domain_size}
    if p.value is not None:
        d["value"] = p.value
    if p.witness is not None:
        d["witness"] = [list(p.witness[0]), list(p.witness[1])]
    return d


def _verdict_doc(v: HomogeneityVerdict) -> dict:
    return {
        "two_homogeneous": v.two_Y_homogeneous,
        "almost_two_homogeneous": v.almost_2_Y_homogeneous,
        "gamma": {i: _profile_doc(p) for i, p in v.gamma.items()},
        "delta_measured": {i: _profile_doc(p) for i, p in v.delta_measured.items()},
        "delta_scalars": v.delta_scalars,
        "criterion_applicable": v.criterion_applicable,
        "criterion_consistent": v.criterion_consistent,
    }


def _feasibility_doc(r: FeasibilityReport, all_checks: bool = False) -> dict:
    def row(c):
        return {"name": c.name, "side": c.side, "ok": c.ok, "detail": c.detail}

    doc = {"verdict": r.verdict, "checks_run": len(r.checks), "violations": [row(c) for c in r.violations]}
    if all_checks:
        doc["checks"] = [row(c) for c in r.checks]
    return doc


def _safe_scalars(aY, aYp, warnings: list[str]) -> dict | None:
    try:
        return _scalars_doc(scalar_table(aY, aYp))
    except InfeasibleError as exc:
        warnings.append(f"scalar table unavailable: {exc}")
        return None


# --- expectations ---------------------------------------------------------

_EXPECT_RE = re.compile(r"^(not-)?(almost-)?2(Y|Yp)-homog$")
EXPECT_FLAGS = ("DBG", "DRG", "feasible", "infeasible", "nonempty", "found", "exhausted")


def _check_expect(tokens: Sequence[str], facts: dict[str, Any]) -> list[str]:
    failures = []
    for tok in tokens:
        m = _EXPECT_RE.match(tok)
        if m:
            neg, almost, cls = m.groups()
            key = ("almost_two_homogeneous" if almost else "two_homogeneous")
            got = facts.get(("homog", "Y" if cls == "Y" else "Y'", key))
            ok = got is (not neg)
        elif tok in EXPECT_FLAGS:
            ok = bool(facts.get(tok))
        else:
            raise InputError(f"unknown --expect token {tok!r}")
        if not ok:
            failures.append(tok)
    return failures


# --- commands -------------------------------------------------------------


def cmd_analyze(args) -> tuple[Report, dict]:
    try:
        g = read_graph(args.file)
    except GraphInputError as exc:
        raise InputError(str(exc)) from None
    rep = Report("analyze", {"file": str(args.file), "n": g.n, "m": g.m})
    facts: dict[Any, Any] = {}
    cl = classify(g)
    if isinstance(cl, NotConnected):
        rep["classification"] = {"type": "NotConnected"}
        return rep, facts
    if isinstance(cl, NotDistanceRegularized):
        w = cl.witness
        rep["classification"] = {
            "type": "NotDistanceRegularized",
            "witness": {"vertex": w.vertex, "i": w.i, "y": w.y, "y_other": w.y_other,
                        "counts_cab": list(w.counts), "counts_other_cab": list(w.counts_other)},
        }
        return rep, facts
    if isinstance(cl, DistanceRegular):
        rep["classification"] = {"type": "DistanceRegular", "bipartite": cl.bipartite}
        facts["DRG"] = True
        if not cl.bipartite:
            rep["arrays"] = {"array": cl.array, "a": list(cl.a)}
            rep["warnings"].append("graph is not bipartite; homogeneity is defined for bipartite graphs only")
            return rep, facts
        aY = aYp = cl.array
    else:
        assert isinstance(cl, DistanceBiregular)
        rep["classification"] = {"type": "DistanceBiregular", "bipartite": True}
        facts["DBG"] = True
        aY, aYp = cl.arrayY, cl.arrayYp
    col = cl.coloring if isinstance(cl, DistanceBiregular) else bipartition(g)
    rep["arrays"] = {"Y": aY, "Y'": aYp, "D": aY.D, "D'": aYp.D, "k": aY.k, "k'": aYp.k,
                     "class_sizes": [col.side.count(0), col.side.count(1)]}
    rep["scalars"] = {"Y": _safe_scalars(aY, aYp, rep["warnings"]), "Y'": _safe_scalars(aYp, aY, rep["warnings"])}
    fr = validate_pair(aY, aYp)
    rep["feasibility"] = _feasibility_doc(fr)
    hom = {}
    for cls in (0, 1):
        try:
            v = homogeneity_verdict(g, col, cls, budget=args.budget)
        except BudgetExceeded as exc:
            rep["warnings"].append(f"homogeneity for {CLASS_NAMES[cls]} skipped: {exc}")
            continue
        hom[CLASS_NAMES[cls]] = _verdict_doc(v)
        facts[("homog", CLASS_NAMES[cls], "two_homogeneous")] = v.two_Y_homogeneous
        facts[("homog", CLASS_NAMES[cls], "almost_two_homogeneous")] = v.almost_2_Y_homogeneous
    rep["homogeneity"] = hom
    return rep, facts


def cmd_generate(args) -> int:
    try:
        gg: GeneratedGraph = generate(args.name, *args.params)
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from None
    if args.subdivide:
        gg = subdivision(gg)
    comments = [f"generated: {gg.provenance}", "Y: " + " ".join(map(str, sorted(gg.declared_Y)))]
    text = format_graph(gg.graph, comments)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _parse_array(text: str) -> IntersectionArray:
    try:
        return IntersectionArray.parse(text)
    except ArrayFormatError as exc:
        raise InputError(f"bad array {text!r}: {exc}") from None


def cmd_feasible(args) -> tuple[Report, dict]:
    aY = _parse_array(args.array)
    rep = Report("feasible", {"array": str(aY), "arrayYp": args.arrayYp, "dual": args.dual})
    facts: dict[Any, Any] = {}
    try:
        dual = dual_array(aY)
    except InfeasibleError as exc:
        dual = None
        dual_err = str(exc)
    aYp = _parse_array(args.arrayYp) if args.arrayYp else dual
    arrays: dict[str, Any] = {"Y": aY}
    if args.dual:
        arrays["dual"] = dual
    if aYp is None:
        rep["arrays"] = arrays
        rep["feasibility"] = {"verdict": "Infeasible", "checks_run": 1,
                              "violations": [{"name": "dual_array", "side": "Y", "ok": False, "detail": dual_err}]}
        facts["infeasible"] = True
        return rep, facts
    arrays["Y'"] = aYp
    rep["arrays"] = arrays
    fr = validate_pair(aY, aYp)
    rep["feasibility"] = _feasibility_doc(fr, all_checks=args.all_checks)
    if fr.feasible:
        rep["scalars"] = {"Y": _scalars_doc(fr.derived)} if fr.derived else None
    facts["feasible"] = fr.feasible
    facts["infeasible"] = not fr.feasible
    return rep, facts


def cmd_enumerate(args) -> tuple[Report, dict]:
    kpm = args.kprime_max if args.kprime_max is not None else args.k_max
    rep = Report("enumerate", {"D": args.D, "k_max": args.k_max, "kprime_max": kpm, "rejected": args.rejected})
    if args.D < 3 or args.k_max < 2 or kpm < 2:
        raise InputError("need D >= 3 and bounds >= 2")
    cands = enumerate_families(args.D, args.k_max, kpm, include_rejected=args.rejected)
    rows = []
    for c in cands:
        row = {"family": c.family, "params": c.params, "arrayY": c.describe(),
               "arrayYp": c.arrayYp, "partial": c.partial, "accepted": c.accepted,
               "delta_zero": c.delta_zero, "distance_regular": c.distance_regular}
        if not c.accepted:
            row["violations"] = sorted({v.name for v in c.violations})
        rows.append(row)
    rep["feasibility"] = {"candidates": rows, "count": len(rows)}
    return rep, {"nonempty": bool(rows)}


def cmd_search(args) -> tuple[Report, dict]:
    aY, aYp = _parse_array(args.arrayY), _parse_array(args.arrayYp)
    rep = Report("search", {"arrayY": str(aY), "arrayYp": str(aYp), "budget": args.budget, "seconds": args.seconds})
    rep["arrays"] = {"Y": aY, "Y'": aYp}
    try:
        out = construct_from_arrays(aY, aYp, max_nodes=args.budget, max_seconds=args.seconds, find_all=args.all)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    facts: dict[Any, Any] = {}
    if isinstance(out, InfeasibleArrays):
        rep["feasibility"] = {"outcome": "InfeasibleArrays", **_feasibility_doc(out.report)}
    elif isinstance(out, Found):
        g = out.graph.graph
        rep["feasibility"] = {"outcome": "Found", "nodes": out.nodes, "solutions": out.solutions,
                              "exhausted": out.exhausted, "n": g.n, "m": g.m}
        cl = classify(g)
        rep["classification"] = {"type": type(cl).__name__}
        if args.output:
            Path(args.output).write_text(format_graph(g, [f"generated: {out.graph.provenance}"]))
    elif isinstance(out, ExhaustedNoGraph):
        rep["feasibility"] = {"outcome": "ExhaustedNoGraph", "nodes": out.nodes}
    else:
        assert isinstance(out, Timeout)
        rep["feasibility"] = {"outcome": "Timeout", "nodes": out.nodes}
        rep["warnings"].append(f"search stopped after {out.elapsed:.1f}s; a timeout says nothing about existence")
    facts["found"] = isinstance(out, Found)
    facts["exhausted"] = isinstance(out, ExhaustedNoGraph)
    return rep, facts


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dbgraph", description="Distance-biregular graph toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="classify a graph and decide 2-Y-homogeneity for both classes")
    a.add_argument("file")
    a.add_argument("--json", action="store_true")
    a.add_argument("--expect", action="append", default=[],
                   help="e.g. 2Y-homog, almost-2Yp-homog, not-2Yp-homog, DBG, DRG")
    a.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max triple inspections per class")

    g = sub.add_parser("generate", help="write a named example graph in the text format")
    g.add_argument("name", choices=sorted(GENERATORS))
    g.add_argument("params", nargs="*", type=int)
    g.add_argument("--subdivide", action="store_true", help="emit the subdivision graph instead")
    g.add_argument("-o", "--output")

    f = sub.add_parser("feasible", help="validate an intersection array (paired with its dual by default)")
    f.add_argument("--array", required=True, help='"b0,b1,...;c1,c2,..."')
    f.add_argument("--arrayYp", help="explicit Y' array instead of the computed dual")
    f.add_argument("--dual", action="store_true", help="print the dual array")
    f.add_argument("--all-checks", action="store_true", help="list passing checks too")
    f.add_argument("--json", action="store_true")
    f.add_argument("--expect", action="append", default=[], help="feasible or infeasible")

    e = sub.add_parser("enumerate", help="list candidate arrays of the known families")
    e.add_argument("--D", type=int, required=True)
    e.add_argument("--k-max", type=int, required=True)
    e.add_argument("--kprime-max", type=int)
    e.add_argument("--rejected", action="store_true", help="also list rejected near-misses")
    e.add_argument("--json", action="store_true")
    e.add_argument("--expect", action="append", default=[], help="nonempty")

    s = sub.add_parser("search", help="try to construct a graph from an array pair")
    s.add_argument("--arrayY", required=True)
    s.add_argument("--arrayYp", required=True)
    s.add_argument("--budget", type=int, default=DEFAULT_MAX_NODES, help="max search nodes")
    s.add_argument("--seconds", type=float, default=DEFAULT_MAX_SECONDS)
    s.add_argument("--all", action="store_true", help="count all realizations (full exhaustion)")
    s.add_argument("-o", "--output", help="write the graph found")
    s.add_argument("--json", action="store_true")
    s.add_argument("--expect", action="append", default=[], help="found or exhausted")
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_INPUT
    try:
        if args.command == "generate":
            return cmd_generate(args)
        handler = {"analyze": cmd_analyze, "feasible": cmd_feasible,
                   "enumerate": cmd_enumerate, "search": cmd_search}[args.command]
        rep, facts = handler(args)
        failures = _check_expect(args.expect, facts)
    except InputError as exc:
        print(f"dbgraph: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    emit(rep, args.json)
    if failures:
        print(f"dbgraph: expectation failed: {', '.join(failures)}", file=sys.stderr)
        return EXIT_EXPECT
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""
Command-line entry point.

Exit status: 0 on success, 1 when a domain check fails (for instance an
obstructed graph where an unobstructed one was expected), 2 on usage errors
and unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import acceptance, curves, dynamics
from .enumeration import (DEFAULT_CAP, ResourceLimitExceeded, enumerate_graphs, enumerate_trees,
                          mirror_pairs, verify_icosahedral)
from .polyhedra import data_dir
from .rotation_graph import (EITHER, GraphError, automorphism_orders, canonical_code, format_graph,
                             parse_graph)
from .tischler import (InvalidTischlerGraph, find_violations, format_tree, from_tree, is_obstructed,
                       suppress_degree_two, validate)

SCHEMA = 1


class UsageError(Exception):
    pass


class Report:
    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.results: dict = {}
        self.verdicts: dict[str, bool] = {}
        self.summary: list[str] = []

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())

    def as_dict(self) -> dict:
        return {"schema": SCHEMA, "command": self.command, "inputs": self.inputs,
                "results": self.results, "verdicts": self.verdicts, "ok": self.ok}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [f"{self.command}: {'ok' if self.ok else 'FAILED'}"] + self.summary
        for k, v in self.verdicts.items():
            lines.append(f"  {k}: {'pass' if v else 'fail'}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# helpers

def _read(path: str) -> str:
    p = Path(path)
    if not p.exists():
        alt = data_dir() / Path(path).name
        if path.startswith("data/") and alt.exists():
            p = alt
        elif (data_dir() / f"{path}.rot").exists():
            p = data_dir() / f"{path}.rot"
    try:
        return p.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _load_graph(path: str):
    try:
        return parse_graph(_read(path), require_connected=True)
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _load_tischler(path: str):
    g = _load_graph(path)
    try:
        return validate(g)
    except InvalidTischlerGraph as exc:
        raise UsageError(f"{path}: not a Tischler graph ({exc})") from exc


def _branching(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise UsageError(f"bad branching data {text!r}")
    if not vals or any(v < 1 for v in vals):
        raise UsageError("branching data must be positive integers")
    return vals


def _map_from_args(args) -> dynamics.AntiRationalMap:
    if getattr(args, "map", None):
        try:
            return dynamics.parse_map(_read(args.map), Path(args.map).stem)
        except (ValueError, dynamics.DynamicsError) as exc:
            raise UsageError(f"{args.map}: {exc}") from exc
    if not args.name:
        raise UsageError("give --name or --map")
    try:
        return dynamics.builtin(args.name, d=args.d, m0=args.m0, m1=args.m1)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _tol(args) -> dynamics.Tolerances:
    return dynamics.Tolerances(residual=args.tol) if getattr(args, "tol", None) else dynamics.DEFAULT_TOL


def _complex(z):
    return "inf" if dynamics.is_inf(z) else [round(z.real, 12), round(z.imag, 12)]


# ---------------------------------------------------------------------------
# subcommands

def cmd_validate(args) -> Report:
    g = _load_graph(args.graph)
    rep = Report("validate", {"graph": args.graph})
    viol = find_violations(g)
    rep.results["violations"] = [{"kind": v.kind, "where": v.where, "detail": v.detail} for v in viol]
    rep.results["V"], rep.results["E"], rep.results["F"] = g.num_vertices, g.num_edges, g.num_faces
    if not viol:
        t = validate(g)
        rep.results.update(canonical_code=canonical_code(g).decode(), degree=t.degree,
                           branching=list(t.branching.multiplicities))
        rep.summary.append(f"  degree {t.degree}, branching {t.branching}")
    else:
        rep.summary += [f"  {v}" for v in viol]
    rep.verdicts["valid"] = not viol
    return rep


def cmd_obstruct(args) -> Report:
    t = _load_tischler(args.graph)
    rep = Report("obstruct", {"graph": args.graph, "expect": args.expect})
    w = is_obstructed(t)
    g = t.graph
    rep.results["obstructed"] = w is not None
    if w is not None:
        rep.results["witness"] = w.as_dict() | {"edge_labels": [g.edge_label(w.edge_a),
                                                                g.edge_label(w.edge_b)]}
        rep.summary.append(f"  obstructed: faces {w.face_a}, {w.face_b} share edges "
                           f"{g.edge_label(w.edge_a)}, {g.edge_label(w.edge_b)}")
    else:
        rep.summary.append("  unobstructed")
    if args.expect != "any":
        rep.verdicts[args.expect] = (w is None) == (args.expect == "unobstructed")
    return rep


def cmd_levy(args) -> Report:
    t = _load_tischler(args.graph)
    rep = Report("levy", {"graph": args.graph, "expect": args.expect})
    cyc = curves.find_levy_cycle(t)
    rep.results["levy_cycle"] = None
    if cyc is not None:
        w = cyc[0]
        comp = curves.certify_levy(t, w)
        rep.results["levy_cycle"] = {"word": curves.format_word(t, w), "degree": comp.degree,
                                     "pullback": curves.format_word(t, comp.word),
                                     "matrix": curves.thurston_matrix(t, cyc).as_strings()}
        rep.summary.append(f"  Levy curve {curves.format_word(t, w)}")
    else:
        rep.summary.append("  no Levy cycle")
    if args.expect != "any":
        rep.verdicts[args.expect] = (cyc is not None) == (args.expect == "found")
    return rep


def cmd_enumerate(args) -> Report:
    if args.antipolynomial and args.nonpolynomial:
        raise UsageError("--antipolynomial and --nonpolynomial are exclusive")
    try:
        cat = enumerate_graphs(args.degree, cap=args.cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    anti = True if args.antipolynomial else (False if args.nonpolynomial else None)
    cat = cat.select(unobstructed=args.unobstructed, antipolynomial=anti)
    rep = Report("enumerate", {"degree": args.degree, "unobstructed": args.unobstructed,
                               "antipolynomial": args.antipolynomial,
                               "nonpolynomial": args.nonpolynomial})
    rep.results = cat.as_dict()
    hist = cat.branching_histogram()
    rep.results["histogram"] = {",".join(map(str, k)): v for k, v in sorted(hist.items())}
    rep.summary.append(f"  {len(cat)} classes")
    for k, v in sorted(hist.items(), reverse=True):
        rep.summary.append(f"    ({','.join(map(str, k))}): {v}")
    rep.verdicts["mirror_involution"] = all(
        e.mirror < 0 or cat.entries[e.mirror].mirror == i for i, e in enumerate(cat.entries))
    return rep


def cmd_trees(args) -> Report:
    b = _branching(args.branching)
    trees = enumerate_trees(b)
    pairs = mirror_pairs(trees)
    rep = Report("trees", {"branching": list(b)})
    rep.results["count"] = len(trees)
    rep.results["trees"] = [{"text": format_tree(t),
                             "canonical_code": canonical_code(from_tree(t).graph).decode()}
                            for t in trees]
    rep.results["mirror_pairs"] = [list(p) for p in pairs]
    rep.summary.append(f"  {len(trees)} trees, {len(pairs)} mirror pair(s)")
    for i, t in enumerate(trees):
        rep.summary.append(f"  tree {i}:")
        rep.summary += ["    " + ln for ln in format_tree(t).splitlines()]
    return rep


def cmd_pullback(args) -> Report:
    t = _load_tischler(args.graph)
    try:
        w = curves.parse_word(t, _read(args.curve))
        log = curves.pullback_orbit(t, w, args.iterate)
    except curves.CurveError as exc:
        raise UsageError(str(exc)) from exc
    rep = Report("pullback", {"graph": args.graph, "curve": args.curve, "iterate": args.iterate})
    orbit = []
    for entry in log:
        comps = [{"word": curves.format_word(t, c.word), "degree": c.degree,
                  "peripheral": c.peripheral, "complexity": c.complexity,
                  "raw_length": len(c.raw)} for c in entry["components"]]
        orbit.append({"step": entry["step"], "curve": curves.format_word(t, entry["curve"]),
                      "complexity": entry["complexity"], "components": comps})
        rep.summary.append(f"  step {entry['step']}: complexity {entry['complexity']}, "
                           f"{sum(not c['peripheral'] for c in comps)} essential component(s)")
    rep.results["orbit"] = orbit
    rep.verdicts["monotone"] = all(
        sum(c["complexity"] for c in o["components"]) <= o["complexity"] for o in orbit)
    return rep


def cmd_verify_map(args) -> Report:
    f = _map_from_args(args)
    tol = _tol(args)
    rep = Report("verify-map", {"name": f.name, "tol": tol.residual})
    try:
        fp = dynamics.fixed_points(f, tol)
        identity = True
    except dynamics.IndifferentFixedPoint as exc:
        rep.results["error"] = str(exc)
        rep.verdicts["no_indifferent"] = False
        return rep
    except dynamics.DynamicsError as exc:
        rep.results["error"] = str(exc)
        rep.verdicts["identity_ok"] = False
        return rep
    c = dynamics.counts(fp)
    rep.results["degree"] = f.degree
    rep.results["fixed_points"] = [{"location": _complex(r.location), "L": round(r.L, 10),
                                    "kind": r.kind} for r in fp]
    rep.results["counts"] = {"super": c["superattracting"], "attracting": c["attracting"],
                             "rep": c["repelling"]}
    rep.results["identity_ok"] = identity
    rep.verdicts["identity_ok"] = identity
    rep.verdicts["residuals"] = all(r.residual < tol.residual for r in fp)
    rep.summary.append(f"  degree {f.degree}: {c['superattracting']} superattracting, "
                       f"{c['attracting']} attracting, {c['repelling']} repelling")
    return rep


def cmd_extract(args) -> Report:
    f = _map_from_args(args)
    rep = Report("extract-graph", {"name": f.name, "out": args.out})
    try:
        ex = dynamics.extract(f, _tol(args))
    except dynamics.DynamicsError as exc:
        rep.results["error"] = str(exc)
        rep.verdicts["extracted"] = False
        return rep
    g = ex.graph
    red = suppress_degree_two(g)
    t = validate(red)
    rep.results.update(V=g.num_vertices, E=g.num_edges, F=g.num_faces,
                       canonical_code=canonical_code(g).decode(),
                       reduced_code=canonical_code(red).decode(),
                       branching=list(t.branching.multiplicities),
                       ray_residuals_ok=all(r.max_residual < 1e-8 for r in ex.rays))
    text = format_graph(g, comment=f"Tischler graph of {f.name}")
    if args.out:
        Path(args.out).write_text(text)
    else:
        rep.results["rotation_system"] = text
    rep.verdicts["extracted"] = True
    rep.verdicts["faces"] = g.num_faces == f.degree + 1
    rep.summary.append(f"  V={g.num_vertices} E={g.num_edges} F={g.num_faces}, "
                       f"branching {t.branching}")
    return rep


def cmd_icosahedral(args) -> Report:
    rep = Report("verify-icosahedral", {})
    res = verify_icosahedral()
    rep.results = res
    for p in res["polyhedra"]:
        rep.verdicts[p["name"]] = all(p["checks"].values())
        rep.summary.append(f"  {p['name']}: V={p['vertices']} E={p['edges']} F={p['faces']} "
                           f"branching {p['branching']} |Aut+|={p['aut_preserving']}")
    rep.summary.append(f"  note: {res['note']}")
    return rep


def cmd_symmetry(args) -> Report:
    g = _load_graph(args.graph)
    plus, full = automorphism_orders(g)
    rep = Report("symmetry", {"graph": args.graph})
    chiral = canonical_code(g) != canonical_code(g.mirror())
    rep.results.update(aut_preserving=plus, aut_full=full, chiral=chiral,
                       canonical_code=canonical_code(g).decode(),
                       canonical_code_either=canonical_code(g, EITHER).decode())
    rep.summary.append(f"  |Aut+| = {plus}, |Aut| = {full}, {'chiral' if chiral else 'achiral'}")
    return rep


def cmd_check_all(args) -> Report:
    rep = Report("check-all", {"seed": args.seed})
    verdicts = acceptance.run_all(args.seed)
    rep.results["criteria"] = [v.as_dict() for v in verdicts]
    for v in verdicts:
        rep.verdicts[f"criterion_{v.number}"] = v.passed
        rep.summary.append("  " + v.line)
    return rep


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report on stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized steps")

    p = argparse.ArgumentParser(prog="tischler", description=__doc__.strip().splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, out=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if out:
            sp.add_argument("--out", help="write the JSON report to this file")
        sp.set_defaults(fn=fn)
        return sp

    sp = add("validate", cmd_validate, "check the topological Tischler graph conditions")
    sp.add_argument("graph")
    sp = add("obstruct", cmd_obstruct, "decide whether the Schottky map is obstructed")
    sp.add_argument("graph")
    sp.add_argument("--expect", choices=["unobstructed", "obstructed", "any"], default="unobstructed")
    sp = add("levy", cmd_levy, "find and certify a Levy cycle")
    sp.add_argument("graph")
    sp.add_argument("--expect", choices=["found", "none", "any"], default="any")
    sp = add("enumerate", cmd_enumerate, "catalog of Tischler graphs of a given degree")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--unobstructed", action="store_true")
    sp.add_argument("--antipolynomial", action="store_true")
    sp.add_argument("--nonpolynomial", action="store_true")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="partial-candidate limit")
    sp = add("trees", cmd_trees, "Tischler trees for finite branching data")
    sp.add_argument("--branching", required=True, help="e.g. 2,1,1")
    sp = add("pullback", cmd_pullback, "iterate curve pull-backs")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--curve", required=True, help="file with a word such as 'F0 e1 F2 e3'")
    sp.add_argument("--iterate", type=int, default=1)
    for name, fn, help_ in (("verify-map", cmd_verify_map, "fixed points of an anti-rational map"),
                            ("extract-graph", cmd_extract, "trace internal rays into a graph")):
        sp = add(name, fn, help_, out=False)
        sp.add_argument("--out", help=("report file" if name == "verify-map"
                                       else "write the rotation system here"))
        sp.add_argument("--name", help="zbar, f_<m0>_<m1> or tetrahedral")
        sp.add_argument("--map", help="map file: numerator and denominator coefficient lines")
        sp.add_argument("--d", type=int, help="degree for zbar")
        sp.add_argument("--m0", type=int)
        sp.add_argument("--m1", type=int)
        sp.add_argument("--tol", type=float, help="fixed-point residual tolerance")
    add("verify-icosahedral", cmd_icosahedral, "check the three degree-31 polyhedral graphs")
    sp = add("symmetry", cmd_symmetry, "automorphism group orders")
    sp.add_argument("graph")
    add("check-all", cmd_check_all, "replay every acceptance criterion")
    return p


def run(argv=None) -> tuple[int, Report | None]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None
    try:
        rep = args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, None
    except ResourceLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1, None
    text = rep.to_json()
    if getattr(args, "out", None) and args.command != "extract-graph":
        Path(args.out).write_text(text)
    if args.json:
        sys.stdout.write(text)
    else:
        sys.stdout.write(rep.to_text())
    return (0 if rep.ok else 1), rep


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""
Replayable acceptance checks. Each check returns a ``Verdict`` carrying the
measured values, so the CLI and the test-suite report the same numbers.
"""

from __future__ import annotations

import cmath
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import curves, dynamics
from .enumeration import enumerate_graphs, enumerate_trees, mirror_pairs, trees_by_degree, verify_icosahedral
from .polyhedra import builtin_graph
from .rotation_graph import (EITHER, automorphism_group, canonical_code, dual_graph,
                             random_relabel)
from .tischler import (expand_full, from_tree, is_obstructed, suppress_degree_two, validate)


@dataclass
class Verdict:
    number: int
    name: str
    passed: bool
    seconds: float
    limit: float
    details: dict = field(default_factory=dict)

    @property
    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] criterion {self.number:2d}: {self.name} "
                f"({self.seconds:.2f}s, limit {self.limit:g}s)")

    def as_dict(self, timing: bool = False) -> dict:
        d = {"criterion": self.number, "name": self.name, "passed": self.passed,
             "limit_seconds": self.limit, "details": self.details}
        if timing:
            d["seconds"] = round(self.seconds, 3)
        return d


CHECKS: dict[int, tuple[str, float, Callable]] = {}


def check(number: int, name: str, limit: float):
    def deco(fn):
        CHECKS[number] = (name, limit, fn)
        return fn
    return deco


def run(number: int, seed: int = 0) -> Verdict:
    name, limit, fn = CHECKS[number]
    t0 = time.perf_counter()
    ok, details = fn(seed)
    dt = time.perf_counter() - t0
    return Verdict(number, name, bool(ok) and dt < limit, dt, limit, details)


def run_all(seed: int = 0) -> list[Verdict]:
    return [run(k, seed) for k in sorted(CHECKS)]


# ---------------------------------------------------------------------------

@check(1, "degree-3 uniqueness (K4)", 1.0)
def _degree3(seed):
    cat = enumerate_graphs(3).select(unobstructed=True, antipolynomial=False)
    k4 = builtin_graph("k4")
    ok = (len(cat) == 1 and cat.entries[0].code.encode() == canonical_code(k4)
          and cat.entries[0].branching.multiplicities == (1, 1, 1, 1))
    return ok, {"count": len(cat), "branching": [list(e.branching.multiplicities) for e in cat]}


DEGREE4_HISTOGRAM = {(2, 2, 2): 1, (2, 2, 1, 1): 4, (2, 1, 1, 1, 1): 2, (1, 1, 1, 1, 1, 1): 1}


@check(2, "degree-4 non-polynomial unobstructed catalog", 60.0)
def _degree4(seed):
    cat = enumerate_graphs(4).select(unobstructed=True, antipolynomial=False)
    hist = dict(cat.branching_histogram())
    return len(cat) == 8 and hist == DEGREE4_HISTOGRAM, {
        "count": len(cat), "histogram": {",".join(map(str, k)): v for k, v in sorted(hist.items())}}


@check(3, "tree catalogs", 10.0)
def _trees(seed):
    counts = {}
    pairs = {}
    for b in [(1,), (2,), (3,), (4,), (1, 1), (2, 1), (3, 1), (2, 2), (1, 1, 1), (2, 1, 1),
              (1, 1, 1, 1)]:
        ts = enumerate_trees(b)
        counts[b] = len(ts)
        pairs[b] = len(mirror_pairs(ts))
    totals = {d: sum(len(v) for v in trees_by_degree(d).values()) for d in (2, 3, 4, 5)}
    expected = {b: 1 for b in counts}
    expected[(2, 1, 1)] = 4
    expected[(1, 1, 1, 1)] = 4
    ok = (counts == expected and pairs[(2, 1, 1)] == 1 and pairs[(1, 1, 1, 1)] == 1
          and totals == {2: 1, 3: 2, 4: 3, 5: 11})
    return ok, {"counts": {",".join(map(str, b)): c for b, c in counts.items()},
                "mirror_pairs": {",".join(map(str, b)): c for b, c in pairs.items() if c},
                "totals": totals}


@check(4, "obstruction dichotomy and Levy certification", 120.0)
def _dichotomy(seed):
    mismatches = 0
    checked = 0
    obstructed = 0
    for d in (2, 3, 4):
        for e in enumerate_graphs(d):
            t = validate(e.graph)
            w = is_obstructed(t)
            levy = curves.find_levy_cycle(t)
            checked += 1
            obstructed += w is not None
            if (w is not None) != (levy is not None):
                mismatches += 1
            elif levy is not None and curves.certify_levy(t, levy[0]) is None:
                mismatches += 1
    fig6 = validate(builtin_graph("fig6"))
    w = is_obstructed(fig6)
    g = fig6.graph
    names = sorted([g.edge_label(w.edge_a), g.edge_label(w.edge_b)]) if w else []
    ok = mismatches == 0 and names == ["AB", "CD"]
    return ok, {"graphs": checked, "obstructed": obstructed, "mismatches": mismatches,
                "fig6_witness_edges": names}


@check(5, "complexity monotonicity under pull-back", 60.0)
def _monotone(seed):
    out = {}
    ok = True
    strict_total = 0
    for name in ("k4", "prism"):
        t = validate(builtin_graph(name))
        words = curves.random_simple_curves(t, 1000, random.Random(seed))
        bad = strict = 0
        for w in words:
            comps = curves.pullback(t, w)
            total = sum(c.complexity for c in comps)
            if total > len(w):
                bad += 1
            if any(len(c.raw) > len(c.word) for c in comps):
                strict += 1
                if total >= len(w):
                    bad += 1
        ok &= len(words) == 1000 and bad == 0
        strict_total += strict
        out[name] = {"words": len(words), "violations": bad, "strict": strict}
    return ok and strict_total > 0, out


@check(6, "pull-back orbit 12, 8, 4 on K4", 5.0)
def _orbit(seed):
    t = validate(builtin_graph("k4"))
    seed_word = curves.find_orbit_seed(t, (12, 8, 4))
    if seed_word is None:
        return False, {"seed": None}
    log = curves.pullback_orbit(t, seed_word, 3)
    comp = [e["complexity"] for e in log]
    fixed = curves.homotopic(log[2]["curve"], log[3]["curve"])
    return comp[:3] == [12, 8, 4] and fixed, {
        "seed": curves.format_word(t, seed_word), "complexities": comp, "self_homotopic": fixed}


NUMERIC_MAPS = [("zbar", {"d": d}) for d in (2, 3, 4, 5)] + [
    ("f_1_1", {}), ("f_2_1", {}), ("f_3_1", {}), ("f_2_2", {}), ("tetrahedral", {})]


@check(7, "fixed-point counting identity", 30.0)
def _fixed(seed):
    out = {}
    ok = True
    for name, kw in NUMERIC_MAPS:
        f = dynamics.builtin(name, **kw)
        fp = dynamics.fixed_points(f)
        c = dynamics.counts(fp)
        n_att = c["superattracting"] + c["attracting"]
        res = max(r.residual for r in fp)
        ok &= c["repelling"] - n_att == f.degree - 1 and bool(res < 1e-10)
        out[f.name] = {"repelling": c["repelling"], "attracting": n_att, "degree": f.degree,
                       "max_residual_below_1e-10": bool(res < 1e-10)}
    f = dynamics.builtin("tetrahedral")
    fp = dynamics.fixed_points(f)
    supers = [r.location for r in fp if r.kind == dynamics.SUPERATTRACTING]
    expected = [0j, 1 + 0j, cmath.exp(2j * cmath.pi / 3), cmath.exp(-2j * cmath.pi / 3)]
    match = len(supers) == 4 and all(min(abs(s - e) for s in supers) < 1e-9 for e in expected)
    nrep = sum(r.kind == dynamics.REPELLING for r in fp)
    out["tetrahedral_super_match"] = match
    return ok and match and nrep == 6, out


@check(8, "graph extraction round-trip", 120.0)
def _extract(seed):
    out = {}
    k4 = validate(builtin_graph("k4"))
    g = dynamics.extract_tischler(dynamics.builtin("tetrahedral"))
    out["tetrahedral"] = canonical_code(g) == canonical_code(expand_full(k4))
    for m0, m1 in ((1, 1), (2, 1), (3, 1), (2, 2)):
        g = dynamics.extract_tischler(dynamics.builtin(f"f_{m0}_{m1}"))
        trees = enumerate_trees((m0, m1))
        ref = canonical_code(from_tree(trees[0]).graph)
        out[f"f_{m0}_{m1}"] = len(trees) == 1 and canonical_code(suppress_degree_two(g)) == ref
    return all(out.values()), out


REFERENCE_POLYNOMIALS = {
    (1, 1): (0, 0, 3, -2),
    (2, 1): (0, 0, 0, 4, -3),
    (3, 1): (0, 0, 0, 0, 5, -4),
    (2, 2): (0, 0, 0, 10, -15, 6),
}


@check(9, "incomplete-beta coefficients", 1.0)
def _beta(seed):
    out = {}
    for (m0, m1), ref in REFERENCE_POLYNOMIALS.items():
        got = dynamics.builtin(f"f_{m0}_{m1}").exact[0]
        out[f"f_{m0}_{m1}"] = (all(x.denominator == 1 for x in got)
                               and tuple(got) == tuple(Fraction(x) for x in ref))
    return all(out.values()), out


@check(10, "icosahedral candidates (degree 31)", 60.0)
def _ico(seed):
    rep = verify_icosahedral()
    return rep["all_pass"], {p["name"]: p["checks"] for p in rep["polyhedra"]} | {"note": rep["note"]}


@check(11, "graph-kernel property suites", 30.0)
def _props(seed):
    rng = random.Random(seed)
    graphs = []
    for d in (2, 3, 4):
        graphs += [e.graph for e in enumerate_graphs(d)]
    graphs = graphs[:20]
    euler = relabel = dual = closure = True
    for g in graphs:
        euler &= g.num_vertices - g.num_edges + g.num_faces == 2
        code = canonical_code(g)
        relabel &= all(canonical_code(random_relabel(g, rng)) == code for _ in range(100))
        relabel &= all(canonical_code(random_relabel(g, rng), EITHER) == canonical_code(g, EITHER)
                       for _ in range(5))
        dual &= canonical_code(dual_graph(dual_graph(g))) == code
        group = automorphism_group(g)
        maps = {iso.mapping for iso in group}
        closure &= all(a.compose(b).mapping in maps for a in group for b in group)
        closure &= (2 * 2 * g.num_edges) % len(group) == 0
    ok = euler and relabel and dual and closure
    return ok, {"graphs": len(graphs), "euler": euler, "relabel_invariance": relabel,
                "dual_involution": dual, "automorphism_closure": closure}

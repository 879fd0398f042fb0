"""
Exhaustive generation of topological Tischler graphs and trees.

Graphs are generated through their duals. If ``T`` is a topological Tischler
graph with ``d + 1`` faces, its dual ``T*`` is a connected loopless plane
multigraph on ``d + 1`` vertices in which

* every face has length >= 3 (vertices of ``T`` have degree >= 3),
* no face boundary repeats a vertex or an edge (faces of ``T`` are Jordan),

and conversely. ``T`` is obstructed exactly when ``T*`` has a double edge.

Such duals are grown from plane trees on ``d + 1`` vertices by inserting one
edge at a time inside a face. A bigon face can never be destroyed by adding
edges, so insertions creating one are skipped. Every level is reduced to one
representative per orientation-preserving class via canonical codes.
"""

from __future__ import annotations

import itertools
import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .rotation_graph import (PlaneGraph, _min_code, automorphism_orders, canonical_code,
                             canonical_form, dual_graph)
from .tischler import (BranchingData, TischlerTree, from_tree, is_antipolynomial,
                       is_obstructed, polynomial_vertices, to_tree, validate)

log = logging.getLogger(__name__)

DEFAULT_CAP = 10 ** 7


class ResourceLimitExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# raw rotation-system helpers (lists, no validation) for the inner loop

def _orbit_list(perm):
    n = len(perm)
    seen = [False] * n
    out = []
    for s in range(n):
        if not seen[s]:
            cyc = []
            d = s
            while not seen[d]:
                seen[d] = True
                cyc.append(d)
                d = perm[d]
            out.append(cyc)
    return out


def _canon(alpha, sigma):
    """Canonical (code, alpha, sigma) with darts renamed in canonical order."""
    code, order, _ = _min_code(alpha, sigma)
    n = len(alpha)
    perm = [0] * n
    for i, d in enumerate(order):
        perm[d] = i
    a = [0] * n
    s = [0] * n
    for d in range(n):
        a[perm[d]] = perm[alpha[d]]
        s[perm[d]] = perm[sigma[d]]
    return tuple(code), tuple(a), tuple(s)


def _plane_trees(n: int):
    """All plane trees with ``n`` vertices, one per orientation-preserving class."""
    if n == 1:
        raise ValueError("need at least two vertices")
    level = {_canon((1, 0), (0, 1))[0]: ((1, 0), (0, 1))}
    for _ in range(n - 2):
        nxt = {}
        for alpha, sigma in level.values():
            m = len(alpha)
            for corner in range(m):
                # new leaf edge: dart m at the vertex of ``corner`` right after it,
                # dart m+1 alone at a new vertex
                a = list(alpha) + [m + 1, m]
                s = list(sigma) + [0, m + 1]
                s[m] = sigma[corner]
                s[corner] = m
                code, ca, cs = _canon(a, s)
                nxt.setdefault(code, (ca, cs))
        level = nxt
    return list(level.values())


def _vertex_of(sigma):
    vo = [0] * len(sigma)
    for i, orb in enumerate(_orbit_list(sigma)):
        for d in orb:
            vo[d] = i
    return vo


def _children(alpha, sigma):
    """Insert one edge inside a face between corners at distinct vertices, avoiding bigons."""
    n = len(alpha)
    vo = _vertex_of(sigma)
    phi = [sigma[alpha[d]] for d in range(n)]
    for face in _orbit_list(phi):
        k = len(face)
        for i in range(k):
            for j in range(i + 2, k):
                if k - (j - i) < 2:
                    continue
                # corner after alpha(face[i]) at its vertex, likewise for j
                ci, cj = alpha[face[i]], alpha[face[j]]
                if vo[ci] == vo[cj]:
                    continue
                a = list(alpha) + [n + 1, n]
                s = list(sigma) + [sigma[ci], sigma[cj]]
                s[ci] = n
                s[cj] = n + 1
                yield a, s


def _dual_is_tischler(alpha, sigma) -> bool:
    """Every face of length >= 3 and no face repeats a vertex or an edge."""
    n = len(alpha)
    vo = _vertex_of(sigma)
    phi = [sigma[alpha[d]] for d in range(n)]
    for face in _orbit_list(phi):
        if len(face) < 3:
            return False
        vs = [vo[d] for d in face]
        if len(set(vs)) != len(vs):
            return False
        es = [min(d, alpha[d]) for d in face]
        if len(set(es)) != len(es):
            return False
    return True


def dual_tischler_graphs(num_faces: int, cap: int = DEFAULT_CAP) -> list[PlaneGraph]:
    """Duals of all Tischler graphs with ``num_faces`` faces (one per class)."""
    n = num_faces
    if n < 3:
        raise ValueError("a Tischler graph has at least 3 faces")
    level = {}
    for alpha, sigma in _plane_trees(n):
        code, a, s = _canon(alpha, sigma)
        level[code] = (a, s)
    found = []
    candidates = 0
    max_edges = 3 * n - 6
    for edges in range(n - 1, max_edges + 1):
        for a, s in level.values():
            if _dual_is_tischler(a, s):
                found.append(PlaneGraph(a, s))
        if edges == max_edges:
            break
        nxt = {}
        for alpha, sigma in level.values():
            for a, s in _children(alpha, sigma):
                candidates += 1
                if candidates > cap:
                    raise ResourceLimitExceeded(
                        f"more than {cap} partial candidates for {num_faces} faces")
                code, ca, cs = _canon(a, s)
                if code not in nxt:
                    nxt[code] = (ca, cs)
        log.debug("faces=%d edges=%d classes=%d", n, edges + 1, len(nxt))
        level = nxt
    return found


# ---------------------------------------------------------------------------
# catalogs

@dataclass
class CatalogEntry:
    code: str
    graph: PlaneGraph
    branching: BranchingData
    obstructed: bool
    aut_preserving: int
    aut_full: int
    antipolynomial: bool
    mirror: int = -1
    witness: tuple[int, int, int, int] | None = None

    def as_dict(self) -> dict:
        return {
            "canonical_code": self.code,
            "branching": list(self.branching.multiplicities),
            "obstructed": self.obstructed,
            "witness": list(self.witness) if self.witness else None,
            "aut_preserving": self.aut_preserving,
            "aut_full": self.aut_full,
            "antipolynomial": self.antipolynomial,
            "chiral": self.mirror_code_differs,
            "mirror": self.mirror,
            "alpha": list(self.graph.alpha),
            "sigma": list(self.graph.sigma),
        }

    @property
    def mirror_code_differs(self) -> bool:
        return self.aut_full == self.aut_preserving


@dataclass
class Catalog:
    degree: int
    entries: list[CatalogEntry] = field(default_factory=list)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def select(self, unobstructed: bool = False, antipolynomial: bool | None = None) -> "Catalog":
        """Sub-catalog; ``antipolynomial=False`` keeps only non-polynomial graphs."""
        keep = [e for e in self.entries
                if (not unobstructed or not e.obstructed)
                and (antipolynomial is None or e.antipolynomial == antipolynomial)]
        return _finish(self.degree, keep)

    def branching_histogram(self) -> Counter:
        return Counter(e.branching.multiplicities for e in self.entries)

    def codes(self) -> list[str]:
        return [e.code for e in self.entries]

    def as_dict(self) -> dict:
        return {
            "schema": 1,
            "degree": self.degree,
            "count": len(self.entries),
            "entries": [e.as_dict() for e in self.entries],
        }


def _entry(g: PlaneGraph) -> CatalogEntry:
    g = canonical_form(g)
    t = validate(g)
    w = is_obstructed(t)
    plus, full = automorphism_orders(g)
    return CatalogEntry(
        code=canonical_code(g).decode("ascii"),
        graph=g,
        branching=t.branching,
        obstructed=w is not None,
        aut_preserving=plus,
        aut_full=full,
        antipolynomial=is_antipolynomial(t),
        witness=None if w is None else (w.face_a, w.face_b, w.edge_a, w.edge_b),
    )


def _finish(degree: int, entries: Iterable[CatalogEntry]) -> Catalog:
    entries = sorted(entries, key=lambda e: (tuple(-m for m in e.branching.multiplicities),
                                             e.code))
    index = {e.code: i for i, e in enumerate(entries)}
    if len(index) != len(entries):
        raise AssertionError("duplicate canonical codes in catalog")
    for e in entries:
        mcode = canonical_code(e.graph.mirror()).decode("ascii")
        e.mirror = index.get(mcode, -1)
    return Catalog(degree, list(entries))


def enumerate_graphs(degree: int, cap: int = DEFAULT_CAP) -> Catalog:
    """Every topological Tischler graph with ``degree + 1`` faces, up to equivalence."""
    if degree < 2:
        raise ValueError("degree must be at least 2")
    entries = []
    for dual in dual_tischler_graphs(degree + 1, cap):
        entries.append(_entry(dual_graph(dual)))
    cat = _finish(degree, entries)
    for e in cat.entries:
        if e.mirror < 0:
            raise AssertionError("catalog not closed under reflection")
    return cat


# ---------------------------------------------------------------------------
# trees

def _labelled_trees(r: int):
    """Edge lists of all labelled trees on ``range(r)`` (Pruefer sequences)."""
    if r == 1:
        yield []
        return
    if r == 2:
        yield [(0, 1)]
        return
    for seq in itertools.product(range(r), repeat=r - 2):
        degree = [1] * r
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = min(v for v in range(r) if degree[v] == 1)
            edges.append((leaf, x))
            degree[leaf] -= 1
            degree[x] -= 1
        u, v = [w for w in range(r) if degree[w] == 1]
        edges.append((u, v))
        yield edges


def _distinct_perms(items):
    items = sorted(items, key=lambda s: (-1 if s is None else s))
    seen = set()
    for p in itertools.permutations(items):
        if p not in seen:
            seen.add(p)
            yield p


def enumerate_trees(branching: Sequence[int]) -> list[TischlerTree]:
    """All Tischler trees whose vertices have the given multiplicities (up to equivalence)."""
    mult = [int(m) for m in branching]
    if not mult or any(m < 1 for m in mult):
        raise ValueError("multiplicities must be >= 1")
    r = len(mult)
    found: dict[str, TischlerTree] = {}
    for edges in _labelled_trees(r):
        inc = {v: [k for k, e in enumerate(edges) if v in e] for v in range(r)}
        if any(len(inc[v]) > mult[v] + 2 for v in range(r)):
            continue
        choices = []
        for v in range(r):
            stars = mult[v] + 2 - len(inc[v])
            if inc[v]:
                first, rest = inc[v][0], inc[v][1:]
                choices.append([(first,) + p for p in _distinct_perms(rest + [None] * stars)])
            else:
                choices.append([(None,) * stars])
        for rots in itertools.product(*choices):
            t = TischlerTree(tuple(rots))
            g = from_tree(t).graph
            code = canonical_code(g).decode("ascii")
            if code not in found:
                found[code] = _canonical_tree(g)
    return [found[c] for c in sorted(found)]


def _canonical_tree(g: PlaneGraph) -> TischlerTree:
    cg = canonical_form(g)
    t = validate(cg)
    inf = polynomial_vertices(t)[-1]
    return to_tree(t, inf)


def trees_by_degree(degree: int) -> dict[tuple[int, ...], list[TischlerTree]]:
    """Trees for every finite branching datum with multiplicities summing to ``degree - 1``."""
    out = {}
    for part in _partitions(degree - 1):
        out[part] = enumerate_trees(part)
    return out


def _partitions(n: int, largest: int | None = None):
    if n == 0:
        yield ()
        return
    largest = n if largest is None else largest
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def mirror_pairs(trees: Sequence[TischlerTree]) -> list[tuple[int, int]]:
    """Index pairs ``(i, j)``, ``i < j``, of trees that are mirror images of each other."""
    codes = [canonical_code(from_tree(t).graph).decode("ascii") for t in trees]
    index = {c: i for i, c in enumerate(codes)}
    out = []
    for i, t in enumerate(trees):
        mc = canonical_code(from_tree(t).graph.mirror()).decode("ascii")
        j = index.get(mc)
        if j is not None and j > i:
            out.append((i, j))
    return out


# ---------------------------------------------------------------------------
# icosahedral candidates in degree 31

EXPECTED_ICOSAHEDRAL = {
    "truncated_icosahedron": (1,) * 60,
    "truncated_dodecahedron": (1,) * 60,
    "icosidodecahedron": (2,) * 30,
}


def verify_icosahedral(directory=None) -> dict:
    from .polyhedra import ICOSAHEDRAL_NAMES, load_polyhedron

    results = []
    ok = True
    for name in ICOSAHEDRAL_NAMES:
        g = load_polyhedron(name, directory)
        t = validate(g)
        plus, full = automorphism_orders(g)
        checks = {
            "faces_32": g.num_faces == 32,
            "degree_31": t.degree == 31,
            "unobstructed": is_obstructed(t) is None,
            "aut_preserving_60": plus == 60,
            "branching": t.branching.multiplicities == EXPECTED_ICOSAHEDRAL[name],
        }
        ok &= all(checks.values())
        results.append({
            "name": name,
            "vertices": g.num_vertices,
            "edges": g.num_edges,
            "faces": g.num_faces,
            "degree": t.degree,
            "branching": f"({t.branching.multiplicities[0]}x{len(t.branching)})",
            "aut_preserving": plus,
            "aut_full": full,
            "checks": checks,
        })
    return {
        "polyhedra": results,
        "all_pass": ok,
        "note": ("candidate side only: that these three are the only polyhedra with 32 faces "
                 "and icosahedral symmetry is taken from the classification of polyhedra, "
                 "not re-proved here"),
    }


def write_catalog(cat: Catalog, path) -> None:
    Path(path).write_text(json.dumps(cat.as_dict(), indent=1, sort_keys=True) + "\n")

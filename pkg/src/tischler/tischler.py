"""
Topological Tischler graphs and trees.

A topological Tischler graph is a connected plane graph whose vertices all
have degree at least 3 and whose faces are Jordan domains. With ``F`` faces it
models a critically fixed anti-rational map of degree ``d = F - 1``; a vertex
of degree ``m + 2`` is a critical point of multiplicity ``m``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .rotation_graph import (FaceWalk, GraphError, PlaneGraph, canonical_code, faces,
                             from_rotations, PRESERVE)


class InvalidTischlerGraph(ValueError):
    """Raised by :func:`validate`; ``violations`` lists every failed condition."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True)
class Violation:
    kind: str  # disconnected | degree | loop | face | faces
    where: int | None = None
    detail: str = ""

    def __str__(self):
        loc = "" if self.where is None else f" at {self.where}"
        return f"{self.kind}{loc}: {self.detail}" if self.detail else f"{self.kind}{loc}"


@dataclass(frozen=True)
class BranchingData:
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        m = tuple(sorted(self.multiplicities, reverse=True))
        if any(x < 1 for x in m):
            raise ValueError("multiplicities must be >= 1")
        object.__setattr__(self, "multiplicities", m)

    @property
    def degree(self) -> int:
        # sum of multiplicities is 2d - 2
        return sum(self.multiplicities) // 2 + 1

    def __iter__(self):
        return iter(self.multiplicities)

    def __len__(self):
        return len(self.multiplicities)

    def __str__(self):
        return "(" + ",".join(map(str, self.multiplicities)) + ")"


@dataclass(frozen=True)
class ObstructionWitness:
    """Faces ``face_a != face_b`` sharing the distinct edges ``edge_a < edge_b``."""

    face_a: int
    face_b: int
    edge_a: int
    edge_b: int

    def as_dict(self) -> dict:
        return {"faces": [self.face_a, self.face_b], "edges": [self.edge_a, self.edge_b]}


@dataclass(frozen=True, eq=False)
class TischlerGraph:
    graph: PlaneGraph
    faces: tuple[FaceWalk, ...]
    degree: int
    branching: BranchingData

    @property
    def num_vertices(self) -> int:
        return self.graph.num_vertices

    def code(self, mode: str = PRESERVE) -> bytes:
        return canonical_code(self.graph, mode)


def find_violations(g: PlaneGraph) -> list[Violation]:
    out = []
    if not g.connected:
        out.append(Violation("disconnected", None, f"{g.num_components} components"))
    for v in range(g.num_vertices):
        if g.degree(v) < 3:
            out.append(Violation("degree", v, f"vertex {g.vertex_label(v)} has degree {g.degree(v)}"))
    for e in range(g.num_edges):
        if g.is_loop(e):
            v = g.endpoints(e)[0]
            out.append(Violation("loop", v, f"edge {e} is a loop at {g.vertex_label(v)}"))
    for f, fw in enumerate(faces(g)):
        rep_v = sorted({v for v in fw.vertices if fw.vertices.count(v) > 1})
        rep_e = sorted({e for e in fw.edges if fw.edges.count(e) > 1})
        if rep_v or rep_e:
            parts = []
            if rep_v:
                parts.append("repeated vertices " + ",".join(g.vertex_label(v) for v in rep_v))
            if rep_e:
                parts.append("repeated edges " + ",".join(map(str, rep_e)))
            out.append(Violation("face", f, "not a Jordan domain: " + "; ".join(parts)))
    if g.num_faces < 3:
        out.append(Violation("faces", None, f"only {g.num_faces} faces, need at least 3"))
    return out


def validate(g: PlaneGraph) -> TischlerGraph:
    """Check every defining condition; raise :class:`InvalidTischlerGraph` listing all failures."""
    bad = find_violations(g)
    if bad:
        raise InvalidTischlerGraph(bad)
    d = g.num_faces - 1
    branching = BranchingData(tuple(k - 2 for k in g.degrees()))
    assert sum(branching) == 2 * d - 2
    return TischlerGraph(g, tuple(faces(g)), d, branching)


def is_valid(g: PlaneGraph) -> bool:
    return not find_violations(g)


def branching_data(t: TischlerGraph) -> BranchingData:
    return t.branching


def shared_edges(t: TischlerGraph) -> dict[tuple[int, int], list[int]]:
    """Edges grouped by the (sorted) pair of faces they separate."""
    g = t.graph
    out: dict[tuple[int, int], list[int]] = {}
    for e in range(g.num_edges):
        a, b = sorted(g.edge_faces(e))
        out.setdefault((a, b), []).append(e)
    return out


def is_obstructed(t: TischlerGraph) -> ObstructionWitness | None:
    """Least ``(A, B, a, b)`` with two distinct edges on both face boundaries, or None."""
    for (a, b), es in sorted(shared_edges(t).items()):
        if a != b and len(es) >= 2:
            es = sorted(es)
            return ObstructionWitness(a, b, es[0], es[1])
    return None


def is_hyperbolic(t: TischlerGraph) -> bool:
    return t.num_vertices >= 3


def polynomial_vertices(t: TischlerGraph) -> list[int]:
    """Vertices adjacent to every face (degree equal to the number of faces)."""
    g = t.graph
    return [v for v in range(g.num_vertices) if g.degree(v) == g.num_faces]


def is_antipolynomial(t: TischlerGraph) -> bool:
    return bool(polynomial_vertices(t))


# ---------------------------------------------------------------------------
# full (bipartite) Tischler graph

def expand_full(t: TischlerGraph | PlaneGraph) -> PlaneGraph:
    """Put one repelling vertex of degree 2 in the middle of every edge.

    The original darts stay where they are; edge ``e`` gains the darts
    ``2E + 2e`` (paired with its first dart) and ``2E + 2e + 1``.
    """
    g = t.graph if isinstance(t, TischlerGraph) else t
    n = g.num_darts
    alpha = list(g.alpha) + [0] * n
    sigma = list(g.sigma) + [0] * n
    for e in range(g.num_edges):
        a, b = g.edge_darts(e)
        x, y = n + 2 * e, n + 2 * e + 1
        alpha[a], alpha[x] = x, a
        alpha[b], alpha[y] = y, b
        sigma[x], sigma[y] = y, x
    return PlaneGraph(tuple(alpha), tuple(sigma))


def is_bipartite(g: PlaneGraph) -> bool:
    color = [-1] * g.num_vertices
    for s in range(g.num_vertices):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for d in g.vertex_darts(v):
                w = g.vertex_of[g.alpha[d]]
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def suppress_degree_two(g: PlaneGraph) -> PlaneGraph:
    """Inverse of :func:`expand_full`: merge the two edges at every degree-2 vertex."""
    alpha = list(g.alpha)
    removed = set()
    for v in range(g.num_vertices):
        ds = g.vertex_darts(v)
        if len(ds) != 2:
            continue
        x, y = ds
        a, b = alpha[x], alpha[y]
        if a == y:
            raise GraphError("isolated loop through a degree-2 vertex")
        alpha[a], alpha[b] = b, a
        removed.update(ds)
    keep = [d for d in range(g.num_darts) if d not in removed]
    new = {d: i for i, d in enumerate(keep)}
    return PlaneGraph(tuple(new[alpha[d]] for d in keep),
                      tuple(new[g.sigma[d]] for d in keep))


# ---------------------------------------------------------------------------
# anti-polynomial trees

Slot = int | None  # bounded edge index, or None for an unbounded edge


@dataclass(frozen=True)
class TischlerTree:
    """Unbounded plane tree: per internal vertex, its slots in counterclockwise order."""

    rotations: tuple[tuple[Slot, ...], ...]

    def __post_init__(self):
        rots = tuple(tuple(s for s in rot) for rot in self.rotations)
        object.__setattr__(self, "rotations", rots)
        r = len(rots)
        if r == 0:
            raise ValueError("a tree needs at least one vertex")
        where: dict[int, list[int]] = {}
        for v, rot in enumerate(rots):
            for s in rot:
                if s is not None:
                    where.setdefault(s, []).append(v)
        if sorted(where) != list(range(len(where))):
            raise ValueError("bounded edges must be numbered 0..k-1")
        for k, vs in where.items():
            if len(vs) != 2 or vs[0] == vs[1]:
                raise ValueError(f"bounded edge e{k} must join two distinct vertices")
        if len(where) != r - 1:
            raise ValueError("bounded part is not a tree")
        # connectivity of the bounded part
        adj = {v: set() for v in range(r)}
        for vs in where.values():
            adj[vs[0]].add(vs[1])
            adj[vs[1]].add(vs[0])
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != r:
            raise ValueError("bounded part is not a tree")
        if any(len(rot) < 3 for rot in rots):
            raise ValueError("every vertex needs degree >= 3")
        if self.num_unbounded < 3:
            raise ValueError("need at least 3 unbounded edges")

    @property
    def num_vertices(self) -> int:
        return len(self.rotations)

    @property
    def num_unbounded(self) -> int:
        return sum(s is None for rot in self.rotations for s in rot)

    @property
    def bounded_edges(self) -> list[tuple[int, int]]:
        ends: dict[int, list[int]] = {}
        for v, rot in enumerate(self.rotations):
            for s in rot:
                if s is not None:
                    ends.setdefault(s, []).append(v)
        return [tuple(ends[k]) for k in range(len(ends))]

    def unbounded_at(self, v: int) -> int:
        return sum(s is None for s in self.rotations[v])

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(len(rot) - 2 for rot in self.rotations)

    @property
    def branching(self) -> BranchingData:
        return BranchingData(self.multiplicities)

    @property
    def degree(self) -> int:
        return sum(self.multiplicities) + 1


def format_tree(t: TischlerTree) -> str:
    lines = []
    for v, rot in enumerate(t.rotations):
        lines.append(f"v{v}: " + " ".join("*" if s is None else f"e{s}" for s in rot))
    return "\n".join(lines) + "\n"


_SLOT = re.compile(r"^(\*|e(\d+))$")


def parse_tree(text: str) -> TischlerTree:
    rots = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" in line:
            line = line.split(":", 1)[1]
        rot = []
        for tok in line.split():
            m = _SLOT.match(tok)
            if not m:
                raise ValueError(f"line {lineno}: bad slot {tok!r}")
            rot.append(None if m.group(1) == "*" else int(m.group(2)))
        rots.append(tuple(rot))
    return TischlerTree(tuple(rots))


def _tree_with_leaves(t: TischlerTree):
    """Rotation system of the tree with a leaf vertex at the end of every unbounded edge."""
    rotations = []
    pairs = []
    bounded: dict[int, int] = {}
    leaf_darts = []
    n = 0
    for rot in t.rotations:
        darts = []
        for s in rot:
            d = n
            n += 1
            darts.append(d)
            if s is None:
                leaf_darts.append(d)
            elif s in bounded:
                pairs.append((bounded.pop(s), d))
            else:
                bounded[s] = d
        rotations.append(darts)
    leaf_of = {}
    for d in leaf_darts:
        leaf = n
        n += 1
        rotations.append([leaf])
        pairs.append((d, leaf))
        leaf_of[leaf] = d
    return rotations, pairs, leaf_of


def from_tree(t: TischlerTree) -> TischlerGraph:
    """One-point compactification: a new last vertex collects all unbounded edges."""
    rotations, pairs, leaf_of = _tree_with_leaves(t)
    g = from_rotations(rotations, pairs)
    # order in which the single face walk meets the leaves
    start = next(iter(leaf_of))
    order = []
    d = start
    while True:
        if d in leaf_of:
            order.append(d)
        d = g.phi[d]
        if d == start:
            break
    rot_inf = list(reversed(order))
    compact = [r for r in rotations if r[0] not in leaf_of] + [rot_inf]
    return validate(from_rotations(compact, pairs))


def to_tree(t: TischlerGraph, v: int) -> TischlerTree | None:
    """Delete vertex ``v`` if it touches every face; its edges become unbounded."""
    g = t.graph
    if not 0 <= v < g.num_vertices:
        raise GraphError(f"{v} is not a vertex")
    if g.degree(v) != g.num_faces:
        return None
    others = [u for u in range(g.num_vertices) if u != v]
    edge_id: dict[int, int] = {}
    rots = []
    for u in others:
        rot = []
        for d in g.vertex_darts(u):
            if g.vertex_of[g.alpha[d]] == v:
                rot.append(None)
            else:
                e = g.edge_of[d]
                rot.append(edge_id.setdefault(e, len(edge_id)))
        rots.append(tuple(rot))
    return TischlerTree(tuple(rots))


def tree_code(t: TischlerTree, mode: str = PRESERVE) -> bytes:
    return canonical_code(from_tree(t).graph, mode)

"""
Plane multigraphs on the sphere encoded as rotation systems.

A graph with ``E`` edges has darts ``0 .. 2E-1``. Two permutations describe it:

* ``alpha`` pairs the two darts of every edge (fixed-point-free involution),
* ``sigma`` sends a dart to the next dart counterclockwise around its vertex.

Vertices are the orbits of ``sigma``, edges the orbits of ``alpha`` and faces
the orbits of ``phi = sigma o alpha``, i.e. ``phi(d) = sigma[alpha[d]]``.
Vertices, edges and faces are numbered by increasing smallest dart.

Loops and multiple edges are allowed at this level.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised for malformed or non-spherical rotation systems."""


def _orbits(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = perm[d]
        out.append(tuple(cyc))
    return out


def _invert(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    return tuple(inv)


def _is_permutation(perm: Sequence[int]) -> bool:
    n = len(perm)
    return sorted(perm) == list(range(n))


@dataclass(frozen=True)
class FaceWalk:
    """One boundary circuit: darts along ``phi`` plus the vertices and edges met."""

    darts: tuple[int, ...]
    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __len__(self):
        return len(self.darts)

    @property
    def is_cycle(self) -> bool:
        return (len(set(self.vertices)) == len(self.vertices)
                and len(set(self.edges)) == len(self.edges))


@dataclass(frozen=True, eq=False)
class PlaneGraph:
    """Immutable rotation system. See the module docstring for conventions."""

    alpha: tuple[int, ...]
    sigma: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        alpha = tuple(int(x) for x in self.alpha)
        sigma = tuple(int(x) for x in self.sigma)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "sigma", sigma)
        n = len(alpha)
        if len(sigma) != n:
            raise GraphError("alpha and sigma act on different dart sets")
        if n == 0 or n % 2:
            raise GraphError("number of darts must be positive and even")
        if not _is_permutation(alpha) or not _is_permutation(sigma):
            raise GraphError("malformed permutation")
        for d in range(n):
            if alpha[d] == d:
                raise GraphError(f"alpha has a fixed point at dart {d}")
            if alpha[alpha[d]] != d:
                raise GraphError(f"alpha is not an involution at dart {d}")

        phi = tuple(sigma[alpha[d]] for d in range(n))
        vorb = _orbits(sigma)
        eorb = _orbits(alpha)
        forb = _orbits(phi)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "_vertex_orbits", tuple(vorb))
        object.__setattr__(self, "_edge_orbits", tuple(eorb))
        object.__setattr__(self, "_face_orbits", tuple(forb))
        vertex_of = [0] * n
        for i, orb in enumerate(vorb):
            for d in orb:
                vertex_of[d] = i
        edge_of = [0] * n
        for i, orb in enumerate(eorb):
            for d in orb:
                edge_of[d] = i
        face_of = [0] * n
        for i, orb in enumerate(forb):
            for d in orb:
                face_of[d] = i
        object.__setattr__(self, "vertex_of", tuple(vertex_of))
        object.__setattr__(self, "edge_of", tuple(edge_of))
        object.__setattr__(self, "face_of", tuple(face_of))

        # connected components via union-find over darts
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for d in range(n):
            for e in (alpha[d], sigma[d]):
                a, b = find(d), find(e)
                if a != b:
                    parent[a] = b
        ncomp = len({find(d) for d in range(n)})
        object.__setattr__(self, "num_components", ncomp)
        chi = len(vorb) - len(eorb) + len(forb)
        if chi != 2 * ncomp:
            raise GraphError(f"not a sphere embedding (V - E + F = {chi})")
        if self.labels is not None and len(self.labels) != len(vorb):
            raise GraphError("one label per vertex required")

    # basic counts -------------------------------------------------------

    @property
    def num_darts(self) -> int:
        return len(self.alpha)

    @property
    def num_vertices(self) -> int:
        return len(self._vertex_orbits)

    @property
    def num_edges(self) -> int:
        return len(self._edge_orbits)

    @property
    def num_faces(self) -> int:
        return len(self._face_orbits)

    @property
    def connected(self) -> bool:
        return self.num_components == 1

    def vertex_darts(self, v: int) -> tuple[int, ...]:
        """Darts at vertex ``v`` in counterclockwise order."""
        return self._vertex_orbits[v]

    def edge_darts(self, e: int) -> tuple[int, int]:
        return self._edge_orbits[e]

    def face_darts(self, f: int) -> tuple[int, ...]:
        return self._face_orbits[f]

    def degree(self, v: int) -> int:
        return len(self._vertex_orbits[v])

    def degrees(self) -> list[int]:
        return [len(o) for o in self._vertex_orbits]

    def endpoints(self, e: int) -> tuple[int, int]:
        a, b = self._edge_orbits[e]
        return self.vertex_of[a], self.vertex_of[b]

    def edge_faces(self, e: int) -> tuple[int, int]:
        """Faces on the two sides of edge ``e`` (same face twice for a bridge)."""
        a, b = self._edge_orbits[e]
        return self.face_of[a], self.face_of[b]

    def is_loop(self, e: int) -> bool:
        u, v = self.endpoints(e)
        return u == v

    def vertex_label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def edge_label(self, e: int) -> str:
        if self.labels is None:
            return f"e{e}"
        u, v = self.endpoints(e)
        return self.labels[u] + self.labels[v]

    def mirror(self) -> "PlaneGraph":
        """Same graph with the orientation of the sphere reversed."""
        return PlaneGraph(self.alpha, _invert(self.sigma), self.labels)

    def relabel(self, perm: Sequence[int]) -> "PlaneGraph":
        """Rename dart ``d`` to ``perm[d]``."""
        n = self.num_darts
        alpha = [0] * n
        sigma = [0] * n
        for d in range(n):
            alpha[perm[d]] = perm[self.alpha[d]]
            sigma[perm[d]] = perm[self.sigma[d]]
        g = PlaneGraph(tuple(alpha), tuple(sigma))
        if self.labels is not None:
            labels = [""] * g.num_vertices
            for v, orb in enumerate(self._vertex_orbits):
                labels[g.vertex_of[perm[orb[0]]]] = self.labels[v]
            g = PlaneGraph(g.alpha, g.sigma, tuple(labels))
        return g

    def __eq__(self, other):
        if not isinstance(other, PlaneGraph):
            return NotImplemented
        return self.alpha == other.alpha and self.sigma == other.sigma

    def __hash__(self):
        return hash((self.alpha, self.sigma))

    def __repr__(self):
        return (f"PlaneGraph(V={self.num_vertices}, E={self.num_edges}, "
                f"F={self.num_faces})")


def from_rotations(rotations: Sequence[Sequence[int]],
                   pairs: Iterable[tuple[int, int]],
                   labels: Sequence[str] | None = None) -> PlaneGraph:
    """Build a graph from per-vertex counterclockwise dart lists and dart pairs."""
    darts = [d for rot in rotations for d in rot]
    n = len(darts)
    if sorted(darts) != list(range(n)):
        raise GraphError("darts must be exactly 0..2E-1, each at one vertex")
    sigma = [0] * n
    for rot in rotations:
        for i, d in enumerate(rot):
            sigma[d] = rot[(i + 1) % len(rot)]
    alpha = [-1] * n
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise GraphError(f"pair ({a},{b}) refers to an unknown dart")
        if alpha[a] != -1 or alpha[b] != -1:
            raise GraphError(f"dart paired twice in ({a},{b})")
        alpha[a] = b
        alpha[b] = a
    if -1 in alpha:
        raise GraphError("some darts are unpaired")
    g = PlaneGraph(tuple(alpha), tuple(sigma))
    if labels is not None:
        lab = [""] * g.num_vertices
        for name, rot in zip(labels, rotations):
            lab[g.vertex_of[rot[0]]] = str(name)
        g = PlaneGraph(g.alpha, g.sigma, tuple(lab))
    return g


# ---------------------------------------------------------------------------
# text format

_V_LINE = re.compile(r"^V\s+(\S+)\s*:\s*(.*)$")
_PAIR = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def parse_graph(text: str, require_connected: bool = False) -> PlaneGraph:
    """Parse the line-oriented rotation format.

    ``V <id>: d1 d2 ...`` lists the darts at a vertex counterclockwise,
    ``E: (d,d') ...`` pairs darts into edges, ``#`` starts a comment.
    """
    rotations = []
    labels = []
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _V_LINE.match(line)
        if m:
            try:
                rot = [int(tok) for tok in m.group(2).split()]
            except ValueError:
                raise GraphError(f"line {lineno}: dart ids must be integers") from None
            if not rot:
                raise GraphError(f"line {lineno}: vertex without darts")
            labels.append(m.group(1))
            rotations.append(rot)
        elif line.startswith("E"):
            body = line[1:].lstrip().lstrip(":")
            found = _PAIR.findall(body)
            if _PAIR.sub("", body).strip():
                raise GraphError(f"line {lineno}: cannot parse edge list")
            pairs.extend((int(a), int(b)) for a, b in found)
        else:
            raise GraphError(f"line {lineno}: unrecognised line {raw!r}")
    if not rotations:
        raise GraphError("no vertices")
    if len(set(labels)) != len(labels):
        raise GraphError("duplicate vertex ids")
    g = from_rotations(rotations, pairs, labels)
    if require_connected and not g.connected:
        raise GraphError("graph is disconnected")
    return g


def format_graph(g: PlaneGraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend("# " + c for c in comment.splitlines())
    for v in range(g.num_vertices):
        lines.append(f"V {g.vertex_label(v)}: " + " ".join(map(str, g.vertex_darts(v))))
    pairs = [f"({a},{b})" for a, b in (g.edge_darts(e) for e in range(g.num_edges))]
    for i in range(0, len(pairs), 12):
        lines.append("E: " + " ".join(pairs[i:i + 12]))
    return "\n".join(lines) + "\n"


def to_dot(g: PlaneGraph, name: str = "G") -> str:
    out = [f"graph {name} {{"]
    for f, fw in enumerate(faces(g)):
        verts = " ".join(g.vertex_label(v) for v in fw.vertices)
        out.append(f"  // face {f}: {verts}")
    for v in range(g.num_vertices):
        out.append(f'  v{v} [label="{g.vertex_label(v)}"];')
    for e in range(g.num_edges):
        u, v = g.endpoints(e)
        out.append(f'  v{u} -- v{v} [label="e{e}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def to_json(g: PlaneGraph) -> dict:
    return {
        "darts": g.num_darts,
        "alpha": list(g.alpha),
        "sigma": list(g.sigma),
        "canonical_code": canonical_code(g).decode("ascii") if g.connected else None,
    }


def from_json(data: dict) -> PlaneGraph:
    return PlaneGraph(tuple(data["alpha"]), tuple(data["sigma"]))


# ---------------------------------------------------------------------------
# faces

def faces(g: PlaneGraph) -> list[FaceWalk]:
    out = []
    for orb in g._face_orbits:
        out.append(FaceWalk(orb,
                            tuple(g.vertex_of[d] for d in orb),
                            tuple(g.edge_of[d] for d in orb)))
    return out


# ---------------------------------------------------------------------------
# canonical codes

PRESERVE = "preserve"
EITHER = "either"


def _bfs_code(alpha, sigma, root, best):
    """BFS labelling from ``root``; returns (code, order) or None once worse than ``best``."""
    n = len(alpha)
    label = [-1] * n
    label[root] = 0
    order = [root]
    code = []
    nxt = 1
    pos = 0
    equal = best is not None
    for i in range(n):
        x = order[i]
        for y in (alpha[x], sigma[x]):
            if label[y] < 0:
                label[y] = nxt
                nxt += 1
                order.append(y)
            c = label[y]
            if equal:
                b = best[pos]
                if c > b:
                    return None
                if c < b:
                    equal = False
            code.append(c)
            pos += 1
    return code, order


def _min_code(alpha, sigma):
    best = None
    best_order = None
    roots = 0
    for r in range(len(alpha)):
        res = _bfs_code(alpha, sigma, r, best)
        if res is None:
            continue
        code, order = res
        if best is None or code < best:
            best, best_order, roots = code, order, 1
        elif code == best:
            roots += 1
    return best, best_order, roots


def _encode(tag: str, n: int, code: Sequence[int]) -> bytes:
    return f"{tag}{n}:{','.join(map(str, code))}".encode("ascii")


def canonical_code(g: PlaneGraph, mode: str = PRESERVE) -> bytes:
    """Relabelling-invariant code; equal codes iff equivalent graphs.

    ``mode="preserve"`` compares up to orientation-preserving homeomorphism,
    ``mode="either"`` also allows reflections.
    """
    if not g.connected:
        raise GraphError("canonical code needs a connected graph")
    code, _, _ = _min_code(g.alpha, g.sigma)
    if mode == PRESERVE:
        return _encode("P", g.num_darts, code)
    if mode != EITHER:
        raise ValueError(f"unknown mode {mode!r}")
    mcode, _, _ = _min_code(g.alpha, _invert(g.sigma))
    return _encode("E", g.num_darts, min(code, mcode))


def canonical_form(g: PlaneGraph) -> PlaneGraph:
    """Relabel darts in canonical BFS order (orientation preserved)."""
    if not g.connected:
        raise GraphError("canonical form needs a connected graph")
    _, order, _ = _min_code(g.alpha, g.sigma)
    perm = [0] * g.num_darts
    for i, d in enumerate(order):
        perm[d] = i
    return g.relabel(perm)


def random_relabel(g: PlaneGraph, rng: random.Random) -> PlaneGraph:
    perm = list(range(g.num_darts))
    rng.shuffle(perm)
    return g.relabel(perm)


# ---------------------------------------------------------------------------
# isomorphisms

@dataclass(frozen=True)
class GraphIso:
    """Dart bijection ``d -> mapping[d]``; ``preserving`` is the chirality flag."""

    mapping: tuple[int, ...]
    preserving: bool

    def __call__(self, d: int) -> int:
        return self.mapping[d]

    def compose(self, other: "GraphIso") -> "GraphIso":
        """``self o other``."""
        return GraphIso(tuple(self.mapping[other.mapping[d]] for d in range(len(self.mapping))),
                        self.preserving == other.preserving)

    def inverse(self) -> "GraphIso":
        return GraphIso(_invert(self.mapping), self.preserving)

    def is_automorphism_of(self, g: PlaneGraph) -> bool:
        m = self.mapping
        target = g.sigma if self.preserving else _invert(g.sigma)
        return all(m[g.alpha[d]] == g.alpha[m[d]] and m[g.sigma[d]] == target[m[d]]
                   for d in range(g.num_darts))


def _extend(src_alpha, src_sigma, dst_alpha, dst_sigma, root, image):
    n = len(src_alpha)
    m = [-1] * n
    used = [False] * n
    m[root] = image
    used[image] = True
    stack = [root]
    while stack:
        x = stack.pop()
        mx = m[x]
        for y, my in ((src_alpha[x], dst_alpha[mx]), (src_sigma[x], dst_sigma[mx])):
            if m[y] < 0:
                if used[my]:
                    return None
                m[y] = my
                used[my] = True
                stack.append(y)
            elif m[y] != my:
                return None
    return tuple(m)


def isomorphisms(g: PlaneGraph, h: PlaneGraph, preserving: bool = True) -> list[GraphIso]:
    """All dart bijections from connected ``g`` onto ``h`` of the given chirality."""
    if g.num_darts != h.num_darts or not g.connected or not h.connected:
        return []
    hs = h.sigma if preserving else _invert(h.sigma)
    out = []
    for t in range(h.num_darts):
        m = _extend(g.alpha, g.sigma, h.alpha, hs, 0, t)
        if m is not None:
            out.append(GraphIso(m, preserving))
    return out


def automorphism_group(g: PlaneGraph) -> list[GraphIso]:
    """Orientation-preserving automorphisms first (identity leading), then reversing ones."""
    if not g.connected:
        raise GraphError("automorphism group needs a connected graph")
    return isomorphisms(g, g, True) + isomorphisms(g, g, False)


def automorphism_orders(g: PlaneGraph) -> tuple[int, int]:
    """(orientation-preserving order, full order)."""
    plus = len(isomorphisms(g, g, True))
    minus = len(isomorphisms(g, g, False))
    return plus, plus + minus


# ---------------------------------------------------------------------------
# duality

def dual_graph(g: PlaneGraph) -> PlaneGraph:
    """Faces become vertices; dart ``d`` of the dual crosses dart ``d`` of ``g``."""
    if not g.connected:
        raise GraphError("dual graph needs a connected graph")
    return PlaneGraph(g.alpha, g.phi)


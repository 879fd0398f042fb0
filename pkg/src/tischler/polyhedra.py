"""
Rotation systems of convex polyhedra, plus truncation and rectification.

The Platonic solids are built from coordinates; everything else is derived
combinatorially. The degree-31 icosahedral graphs are stored as ``.rot`` files
under ``data/polyhedra`` together with SHA-256 checksums.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
import os
from pathlib import Path

import numpy as np

from .rotation_graph import PlaneGraph, dual_graph, format_graph, from_rotations, parse_graph

GOLDEN = (1 + math.sqrt(5)) / 2

ICOSAHEDRAL_NAMES = ("truncated_icosahedron", "truncated_dodecahedron", "icosidodecahedron")


def _icosahedron_points():
    pts = []
    for a, b in itertools.product((-1, 1), repeat=2):
        pts += [(0, a, b * GOLDEN), (a, b * GOLDEN, 0), (b * GOLDEN, 0, a)]
    return np.array(pts, dtype=float)


def _cube_points():
    return np.array(list(itertools.product((-1, 1), repeat=3)), dtype=float)


def from_convex_points(points: np.ndarray) -> PlaneGraph:
    """Skeleton of a vertex-transitive convex polyhedron with all edges of minimal length."""
    pts = np.asarray(points, dtype=float)
    n = len(pts)
    dist = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
    emin = min(dist[i, j] for i in range(n) for j in range(i + 1, n))
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if abs(dist[i, j] - emin) < 1e-6 * emin]
    dart_of = {}
    pairs = []
    for k, (i, j) in enumerate(edges):
        dart_of[(i, j)] = 2 * k
        dart_of[(j, i)] = 2 * k + 1
        pairs.append((2 * k, 2 * k + 1))
    rotations = []
    for i in range(n):
        normal = pts[i] / np.linalg.norm(pts[i])
        # orthonormal frame (u, w) of the tangent plane with u x w = normal
        helper = np.array([1.0, 0, 0]) if abs(normal[0]) < 0.9 else np.array([0, 1.0, 0])
        u = np.cross(helper, normal)
        u /= np.linalg.norm(u)
        w = np.cross(normal, u)
        nbrs = [j for j in range(n) if (i, j) in dart_of]
        ang = {j: math.atan2(np.dot(pts[j] - pts[i], w), np.dot(pts[j] - pts[i], u))
               for j in nbrs}
        rotations.append([dart_of[(i, j)] for j in sorted(nbrs, key=ang.get)])
    return from_rotations(rotations, pairs)


def icosahedron() -> PlaneGraph:
    return from_convex_points(_icosahedron_points())


def cube() -> PlaneGraph:
    return from_convex_points(_cube_points())


def truncate(g: PlaneGraph) -> PlaneGraph:
    """Cut off every vertex: each dart becomes a vertex of degree 3."""
    n = g.num_darts
    # darts of the new graph: 3 per old dart
    #   3d   : along the old edge
    #   3d+1 : towards the ccw-next dart at the same vertex
    #   3d+2 : towards the ccw-previous dart
    rotations = [[3 * d, 3 * d + 1, 3 * d + 2] for d in range(n)]
    pairs = []
    for d in range(n):
        if d < g.alpha[d]:
            pairs.append((3 * d, 3 * g.alpha[d]))
        pairs.append((3 * d + 1, 3 * g.sigma[d] + 2))
    return from_rotations(rotations, pairs)


def medial(g: PlaneGraph) -> PlaneGraph:
    """Rectification: vertices at edge midpoints, joined around every face corner."""
    n = g.num_darts
    # medial darts 2d (towards sigma(d)) and 2d+1 (towards sigma^-1(d))
    rotations = []
    for e in range(g.num_edges):
        a, b = g.edge_darts(e)
        rotations.append([2 * a, 2 * a + 1, 2 * b, 2 * b + 1])
    pairs = [(2 * d, 2 * g.sigma[d] + 1) for d in range(n)]
    return from_rotations(rotations, pairs)


def build_icosahedral() -> dict[str, PlaneGraph]:
    ico = icosahedron()
    dodeca = dual_graph(ico)
    return {
        "truncated_icosahedron": truncate(ico),
        "truncated_dodecahedron": truncate(dodeca),
        "icosidodecahedron": medial(ico),
    }


# ---------------------------------------------------------------------------
# stored data

def data_dir() -> Path:
    env = os.environ.get("TISCHLER_DATA")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "data"


class ChecksumError(RuntimeError):
    pass


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def write_polyhedra(directory: Path | None = None) -> dict[str, str]:
    directory = Path(directory or data_dir()) / "polyhedra"
    directory.mkdir(parents=True, exist_ok=True)
    sums = {}
    for name, g in build_icosahedral().items():
        text = format_graph(g, comment=name.replace("_", " "))
        (directory / f"{name}.rot").write_text(text)
        sums[name] = _sha256(text)
    (directory / "checksums.json").write_text(json.dumps(sums, indent=2, sort_keys=True) + "\n")
    return sums


def load_polyhedron(name: str, directory: Path | None = None) -> PlaneGraph:
    directory = Path(directory or data_dir()) / "polyhedra"
    text = (directory / f"{name}.rot").read_text()
    sums = json.loads((directory / "checksums.json").read_text())
    if sums.get(name) != _sha256(text):
        raise ChecksumError(f"checksum mismatch for {name}.rot")
    return parse_graph(text, require_connected=True)


BUILTIN_GRAPHS = ("k4", "theta", "fig6", "prism")


def builtin_graph(name: str, directory: Path | None = None) -> PlaneGraph:
    """One of the small hand-written rotation systems shipped with the package."""
    path = Path(directory or data_dir()) / f"{name}.rot"
    if not path.exists():
        raise FileNotFoundError(f"no built-in graph named {name!r}")
    return parse_graph(path.read_text(), require_connected=True)

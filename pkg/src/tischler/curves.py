"""
Simple closed curves on the sphere marked at the vertices of a Tischler graph.

A curve in minimal-ish position is recorded by the faces it passes through and
the edges it crosses. Step ``i`` of a word is ``(A_i, e_i)``: the i-th arc lies
in face ``A_i`` and leaves it through edge ``e_i`` into ``A_{i+1}``. An optional
key per step locates the crossing on its edge (larger keys are further from
the endpoint carrying the edge's smaller dart); keys fix a realization so that
simplicity, peripherality and pull-backs can be computed combinatorially.

Homotopy classes in the punctured sphere correspond to cyclically reduced
closed walks in the dual graph, so the reduced length of a word is its
complexity (the minimal number of intersections with the graph).

The Schottky map is the identity on the graph and maps each face onto the
closure of its complement reflectively. Hence the preimage in a face ``B`` of
a curve consists of one chord for each maximal piece of the curve lying
outside ``B``, joining the same two crossing points.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .rotation_graph import PlaneGraph
from .tischler import TischlerGraph, is_hyperbolic, validate


class CurveError(ValueError):
    pass


class RealizationError(CurveError):
    """No simple realization of a word was found."""


Step = tuple[int, int]


@dataclass(frozen=True)
class CurveWord:
    steps: tuple[Step, ...]
    keys: tuple[int, ...] | None = None
    face: int | None = None  # the face containing an empty word

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple((int(a), int(e)) for a, e in self.steps))
        if self.keys is not None:
            object.__setattr__(self, "keys", tuple(self.keys))
            if len(self.keys) != len(self.steps):
                raise CurveError("one key per crossing required")
        if not self.steps and self.face is None:
            raise CurveError("an empty word must record its face")
        if self.steps:
            object.__setattr__(self, "face", None)

    def __len__(self):
        return len(self.steps)

    @property
    def is_empty(self) -> bool:
        return not self.steps

    @property
    def faces(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.steps)

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.steps)

    @property
    def realized(self) -> bool:
        return self.keys is not None or self.is_empty

    def rotated(self, k: int) -> "CurveWord":
        n = len(self.steps)
        if n == 0:
            return self
        k %= n
        keys = None if self.keys is None else self.keys[k:] + self.keys[:k]
        return CurveWord(self.steps[k:] + self.steps[:k], keys)

    def reversed(self) -> "CurveWord":
        n = len(self.steps)
        if n == 0:
            return self
        steps = tuple((self.steps[(i + 1) % n][0], self.steps[i][1]) for i in reversed(range(n)))
        keys = None if self.keys is None else tuple(reversed(self.keys))
        return CurveWord(steps, keys)

    def unrealized(self) -> "CurveWord":
        return CurveWord(self.steps, None, self.face)


def empty_word(face: int) -> CurveWord:
    return CurveWord((), None, face)


# ---------------------------------------------------------------------------
# graph access

def _as_tischler(t) -> TischlerGraph:
    if isinstance(t, TischlerGraph):
        return t
    if isinstance(t, PlaneGraph):
        return validate(t)
    raise TypeError("expected a TischlerGraph or PlaneGraph")


def _hyperbolic(t) -> TischlerGraph:
    t = _as_tischler(t)
    if not is_hyperbolic(t):
        raise CurveError("curve calculus needs at least 3 vertices (hyperbolic orbifold)")
    return t


def other_side(g: PlaneGraph, face: int, edge: int) -> int:
    a, b = g.edge_faces(edge)
    if a == face:
        return b
    if b == face:
        return a
    raise CurveError(f"edge {edge} is not on the boundary of face {face}")


def check_word(t, w: CurveWord) -> None:
    """Raise unless consecutive steps are compatible with the graph."""
    g = _as_tischler(t).graph
    if w.is_empty:
        if not 0 <= w.face < g.num_faces:
            raise CurveError(f"no face {w.face}")
        return
    n = len(w)
    if n == 1:
        raise CurveError("a closed curve crosses the graph an even number of times")
    for i, (a, e) in enumerate(w.steps):
        if not 0 <= e < g.num_edges or not 0 <= a < g.num_faces:
            raise CurveError(f"step {i} refers to a missing face or edge")
        nxt = w.steps[(i + 1) % n][0]
        if other_side(g, a, e) != nxt:
            raise CurveError(f"step {i}: edge {e} does not separate faces {a} and {nxt}")


# ---------------------------------------------------------------------------
# text format

def format_word(t, w: CurveWord) -> str:
    if w.is_empty:
        return f"F{w.face}"
    return " ".join(f"F{a} e{e}" for a, e in w.steps)


def parse_word(t, text: str) -> CurveWord:
    """Parse ``F0 e1 F2 e3 ...`` (cyclic); edges may also be named by vertex labels."""
    g = _as_tischler(t).graph
    tokens = [tok for line in text.splitlines() for tok in line.split("#", 1)[0].split()]
    if not tokens:
        raise CurveError("empty curve description")

    def face(tok):
        s = tok[1:] if tok[:1] in "FfAa" and tok[1:].isdigit() else tok
        if not s.isdigit():
            raise CurveError(f"bad face token {tok!r}")
        return int(s)

    def edge(tok):
        if tok[:1] in "eE" and tok[1:].isdigit():
            return int(tok[1:])
        if tok.isdigit():
            return int(tok)
        hits = [k for k in range(g.num_edges)
                if g.edge_label(k) in (tok, tok[::-1])]
        if len(hits) != 1:
            raise CurveError(f"edge label {tok!r} matches {len(hits)} edges")
        return hits[0]

    if len(tokens) == 1:
        w = empty_word(face(tokens[0]))
    else:
        if len(tokens) % 2 == 1:
            if tokens[0] != tokens[-1]:
                raise CurveError("expected alternating face and edge tokens")
            tokens = tokens[:-1]
        w = CurveWord(tuple((face(tokens[i]), edge(tokens[i + 1]))
                            for i in range(0, len(tokens), 2)))
    check_word(t, w)
    return w


# ---------------------------------------------------------------------------
# realizations

def _face_tokens(g: PlaneGraph, face: int, pts: dict[int, list]):
    """Cyclic boundary of ``face``: vertices, edge pieces and crossing points."""
    out = []
    for d in g.face_darts(face):
        e = g.edge_of[d]
        keys = pts.get(e, [])
        out.append(("v", g.vertex_of[d]))
        forward = d == g.edge_darts(e)[0]
        order = range(len(keys) + 1) if forward else reversed(range(len(keys) + 1))
        for j in order:
            if forward:
                out.append(("s", e, j))
                if j < len(keys):
                    out.append(("p", e, keys[j]))
            else:
                if j < len(keys):
                    out.append(("p", e, keys[j]))
                out.append(("s", e, j))
    return out


def _points_by_edge(w: CurveWord) -> dict[int, list]:
    pts: dict[int, list] = {}
    for (_, e), k in zip(w.steps, w.keys):
        pts.setdefault(e, []).append(k)
    for v in pts.values():
        v.sort()
    return pts


def _chords(w: CurveWord, face: int):
    """Arcs of ``w`` inside ``face`` as pairs of crossing points."""
    n = len(w)
    out = []
    for i, (a, _) in enumerate(w.steps):
        if a == face:
            p = w.steps[i - 1][1], w.keys[i - 1]
            q = w.steps[i][1], w.keys[i]
            out.append((p, q))
    return out


def _crossing_free(positions: dict, chords) -> bool:
    spans = []
    for p, q in chords:
        a, b = positions[p], positions[q]
        spans.append((min(a, b), max(a, b)))
    for (a, b), (c, d) in itertools.combinations(spans, 2):
        if a < c < b < d or c < a < d < b:
            return False
    return True


def _face_ok(g: PlaneGraph, w: CurveWord, face: int, pts) -> bool:
    toks = _face_tokens(g, face, pts)
    pos = {(tk[1], tk[2]): i for i, tk in enumerate(toks) if tk[0] == "p"}
    return _crossing_free(pos, _chords(w, face))


def is_simple(t, w: CurveWord) -> bool:
    """True iff the keyed word describes a simple curve (non-crossing chords in every face)."""
    g = _as_tischler(t).graph
    if w.is_empty:
        return True
    if w.keys is None:
        raise CurveError("word has no realization")
    if len(set(zip(w.edges, w.keys))) != len(w):
        return False
    pts = _points_by_edge(w)
    return all(_face_ok(g, w, f, pts) for f in set(w.faces))


def realize(t, w: CurveWord, cap: int = 200_000) -> CurveWord:
    """Attach crossing keys so that the curve is simple (first valid routing found)."""
    t = _as_tischler(t)
    g = t.graph
    check_word(t, w)
    if w.is_empty:
        return w
    if w.keys is not None and is_simple(t, w):
        return w
    by_edge: dict[int, list[int]] = {}
    for i, e in enumerate(w.edges):
        by_edge.setdefault(e, []).append(i)
    edges = sorted(by_edge, key=lambda e: (-len(by_edge[e]), e))
    # a face can be checked once all edges on its boundary carry keys
    face_edges = {f: {g.edge_of[d] for d in g.face_darts(f)} & set(by_edge) for f in set(w.faces)}
    ready_after = {k: [f for f in face_edges
                       if max(edges.index(e) for e in face_edges[f]) == k]
                   for k in range(len(edges))}
    keys = [0] * len(w)
    budget = [cap]

    def rec(k):
        if k == len(edges):
            return True
        idx = by_edge[edges[k]]
        for perm in itertools.permutations(range(len(idx))):
            budget[0] -= 1
            if budget[0] < 0:
                raise RealizationError(f"routing search exceeded {cap} candidates")
            for i, r in zip(idx, perm):
                keys[i] = r
            trial = CurveWord(w.steps, tuple(keys))
            pts = _points_by_edge(trial)
            if all(_face_ok(g, trial, f, pts) for f in ready_after[k]):
                if rec(k + 1):
                    return True
        return False

    if not rec(0):
        raise RealizationError("word is not realizable by a simple closed curve")
    return CurveWord(w.steps, tuple(keys))


def _keyed(t, w: CurveWord) -> CurveWord:
    return w if w.realized else realize(t, w)


# ---------------------------------------------------------------------------
# reduction and homotopy

def reduce(w: CurveWord, t=None) -> CurveWord:
    """Remove bigons with the graph until no arc enters and leaves a face through one edge.

    With keys, innermost bigons are removed first so the result stays simple.
    """
    if t is not None:
        check_word(t, w)
    steps = list(w.steps)
    keys = None if w.keys is None else list(w.keys)
    while steps:
        n = len(steps)
        hit = None
        for i in range(n):
            j = (i + 1) % n
            e = steps[i][1]
            if steps[j][1] != e:
                continue
            if keys is not None:
                lo, hi = sorted((keys[i], keys[j]))
                if any(steps[m][1] == e and lo < keys[m] < hi for m in range(n)):
                    continue
            hit = (i, j)
            break
        if hit is None:
            break
        i, j = hit
        if n == 2:
            return empty_word(steps[i][0])
        for m in sorted(hit, reverse=True):
            del steps[m]
            if keys is not None:
                del keys[m]
    if not steps:
        return empty_word(w.face)
    return CurveWord(tuple(steps), None if keys is None else tuple(keys))


def complexity(w: CurveWord) -> int:
    return len(reduce(w))


def normal_form(w: CurveWord) -> tuple:
    """Representative of the free homotopy class of an unoriented curve."""
    r = reduce(w.unrealized())
    if r.is_empty:
        return ()
    cands = []
    for x in (r, r.reversed()):
        for k in range(len(x)):
            cands.append(x.rotated(k).steps)
    return min(cands)


def homotopic(w1: CurveWord, w2: CurveWord) -> bool:
    return normal_form(w1) == normal_form(w2)


# ---------------------------------------------------------------------------
# peripherality

def sides(t, w: CurveWord) -> tuple[frozenset[int], frozenset[int]]:
    """Vertex sets of the two complementary discs of a simple curve."""
    t = _as_tischler(t)
    g = t.graph
    if w.is_empty:
        return frozenset(range(g.num_vertices)), frozenset()
    w = _keyed(t, w)
    pts = _points_by_edge(w)
    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for f in range(g.num_faces):
        toks = _face_tokens(g, f, pts)
        pidx = [i for i, tk in enumerate(toks) if tk[0] == "p"]
        if not pidx:
            items = [tk for tk in toks]
            for tk in items:
                union(items[0], tk)
            continue
        # rotate so that the token list starts right after a point
        s = pidx[0] + 1
        toks = toks[s:] + toks[:s]
        pos = {}
        gaps: list[list] = [[]]
        for tk in toks:
            if tk[0] == "p":
                pos[(tk[1], tk[2])] = len(gaps) - 1
                gaps.append([])
            else:
                gaps[-1].append(tk)
        gaps.pop()  # the list ends with a point; the trailing empty gap is gap 0's tail
        for gap in gaps:
            for tk in gap:
                union(gap[0], tk)
        # point number p sits between gap p and gap p+1
        spans = []
        for p, q in _chords(w, f):
            a, b = sorted((pos[p], pos[q]))
            spans.append((a, b))
        sig = {}
        for k, gap in enumerate(gaps):
            key = tuple(a < k <= b for a, b in spans)
            if gap:
                if key in sig:
                    union(sig[key], gap[0])
                else:
                    sig[key] = gap[0]
    roots = {}
    for v in range(g.num_vertices):
        roots.setdefault(find(("v", v)), set()).add(v)
    all_roots = {find(x) for x in list(parent)}
    if len(all_roots) != 2 or len(roots) > 2:
        raise CurveError("word does not describe a simple closed curve")
    parts = list(roots.values()) + [set()] * (2 - len(roots))
    parts.sort(key=lambda s: (len(s), sorted(s)))
    return frozenset(parts[0]), frozenset(parts[1])


def is_peripheral(t, w: CurveWord) -> bool:
    a, b = sides(t, w)
    return min(len(a), len(b)) <= 1


# ---------------------------------------------------------------------------
# pull-back under the Schottky map

@dataclass(frozen=True)
class PullbackComponent:
    raw: CurveWord          # before reduction, crossing points inherited
    word: CurveWord         # reduced
    degree: int
    peripheral: bool

    @property
    def complexity(self) -> int:
        return len(self.word)


def pullback(t, w: CurveWord) -> list[PullbackComponent]:
    """Components of the preimage of ``w`` with their covering degrees."""
    t = _hyperbolic(t)
    g = t.graph
    check_word(t, w)
    nf = g.num_faces
    out: list[PullbackComponent] = []

    def trivial(face):
        e = empty_word(face)
        return PullbackComponent(e, e, 1, True)

    if w.is_empty:
        return [trivial(b) for b in range(nf) if b != w.face]
    w = _keyed(t, w)
    n = len(w)
    A = w.faces
    E = w.edges
    on_boundary = {b: [] for b in range(nf)}
    for i in range(n):
        on_boundary[A[i]].append(i)
        on_boundary[A[(i + 1) % n]].append(i)
    chord_from: dict[int, tuple[int, int]] = {}
    for b in range(nf):
        idx = sorted(on_boundary[b])
        k = len(idx)
        for s in range(k):
            i, j = idx[s], idx[(s + 1) % k]
            if A[(i + 1) % n] == b:
                continue  # the curve runs inside b here
            cover = (j - i) % n or n
            assert A[i] == b
            chord_from[i] = (j, cover)
    seen = set()
    for start in range(n):
        if start in seen:
            continue
        steps, keys, covered = [], [], 0
        i = start
        while i not in seen:
            seen.add(i)
            j, cover = chord_from[i]
            steps.append((A[i], E[j]))
            keys.append(w.keys[j])
            covered += cover
            i = j
        if covered % n:
            raise AssertionError("pull-back component does not cover the curve evenly")
        # rotate so that the crossing at ``start`` comes first
        steps = steps[-1:] + steps[:-1]
        keys = keys[-1:] + keys[:-1]
        raw = CurveWord(tuple(steps), tuple(keys))
        red = reduce(raw)
        out.append(PullbackComponent(raw, red, covered // n, is_peripheral(t, red)))
    for b in range(nf):
        if not on_boundary[b]:
            out.append(trivial(b))
    if sum(c.degree for c in out) != t.degree:
        raise AssertionError("covering degrees do not add up to the degree")
    return out


def essential_components(t, w: CurveWord) -> list[PullbackComponent]:
    return [c for c in pullback(t, w) if not c.peripheral]


def pullback_orbit(t, w: CurveWord, iterations: int) -> list[dict]:
    """Iterate: pull back, keep the unique non-peripheral component, reduce."""
    t = _hyperbolic(t)
    w = _keyed(t, reduce(w))
    log = []
    for step in range(iterations + 1):
        comps = pullback(t, w)
        log.append({"step": step, "curve": w, "complexity": len(w), "components": comps})
        ess = [c for c in comps if not c.peripheral]
        if step == iterations or len(ess) != 1:
            break
        w = ess[0].word
    return log


# ---------------------------------------------------------------------------
# multicurves and Thurston matrices

@dataclass(frozen=True)
class Multicurve:
    curves: tuple[CurveWord, ...]

    def __len__(self):
        return len(self.curves)

    def __iter__(self):
        return iter(self.curves)

    def __getitem__(self, k):
        return self.curves[k]


def make_multicurve(t, words: Iterable[CurveWord]) -> Multicurve:
    t = _hyperbolic(t)
    ws = []
    for w in words:
        w = _keyed(t, reduce(w, t))
        if is_peripheral(t, w):
            raise CurveError(f"peripheral curve {format_word(t, w)}")
        if any(homotopic(w, x) for x in ws):
            raise CurveError("curves of a multicurve must be pairwise non-homotopic")
        ws.append(w)
    return Multicurve(tuple(ws))


@dataclass(frozen=True)
class Contribution:
    row: int          # index of the curve that was pulled back
    col: int          # index of the curve the component is homotopic to
    component: int    # index in the pull-back list of the row curve
    degree: int


@dataclass(frozen=True)
class ThurstonMatrix:
    entries: tuple[tuple[Fraction, ...], ...]
    contributions: tuple[Contribution, ...] = field(default=())

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, kj):
        k, j = kj
        return self.entries[k][j]

    def as_float(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries], dtype=float)

    def as_strings(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.entries]


def matrix(rows: Sequence[Sequence]) -> ThurstonMatrix:
    """ThurstonMatrix from plain numbers (no bookkeeping)."""
    ent = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if any(len(r) != len(ent) for r in ent):
        raise ValueError("matrix must be square")
    if any(x < 0 for r in ent for x in r):
        raise ValueError("matrix must be nonnegative")
    return ThurstonMatrix(ent)


def thurston_matrix(t, gamma: Multicurve | Sequence[CurveWord]) -> ThurstonMatrix:
    """Entry ``(k, j)`` sums ``1/deg`` over components of the pull-back of curve ``k``
    homotopic to curve ``j``; peripheral and unmatched components are ignored."""
    t = _hyperbolic(t)
    curves = list(gamma)
    if not curves:
        raise CurveError("empty multicurve")
    m = len(curves)
    forms = [normal_form(c) for c in curves]
    ent = [[Fraction(0)] * m for _ in range(m)]
    contrib = []
    for k, c in enumerate(curves):
        for a, comp in enumerate(pullback(t, c)):
            if comp.peripheral:
                continue
            nf = normal_form(comp.word)
            for j in range(m):
                if forms[j] == nf:
                    ent[k][j] += Fraction(1, comp.degree)
                    contrib.append(Contribution(k, j, a, comp.degree))
                    break
    return ThurstonMatrix(tuple(tuple(r) for r in ent), tuple(contrib))


# ---------------------------------------------------------------------------
# spectral radius

def _as_fraction_rows(M) -> list[list[Fraction]]:
    if isinstance(M, ThurstonMatrix):
        return [list(r) for r in M.entries]
    return [[Fraction(x) for x in r] for r in M]


def _charpoly(A: list[list[Fraction]]) -> list[Fraction]:
    """Coefficients of det(xI - A), highest degree first (Faddeev-LeVerrier)."""
    n = len(A)
    coeffs = [Fraction(1)]
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk = A * M_{k-1} + c_{k-1} I
        prev = Mk
        Mk = [[sum((A[i][l] * prev[l][j] for l in range(n)), Fraction(0))
               + (coeffs[-1] if i == j else 0) for j in range(n)] for i in range(n)]
        AM = [[sum((A[i][l] * Mk[l][j] for l in range(n)), Fraction(0)) for j in range(n)]
              for i in range(n)]
        coeffs.append(-sum(AM[i][i] for i in range(n)) / k)
    return coeffs


def _polish_root(coeffs, x0: float) -> float:
    c = [float(a) for a in coeffs]
    p = np.poly1d(c)
    dp = p.deriv()
    x = x0
    for _ in range(50):
        d = dp(x)
        if d == 0:
            break
        step = p(x) / d
        x -= step
        if abs(step) < 1e-16 * max(1.0, abs(x)):
            break
    return x


def _perron_exact(A) -> float:
    n = len(A)
    if all(x == 0 for r in A for x in r):
        return 0.0
    if n == 1:
        return float(A[0][0])
    coeffs = _charpoly(A)
    roots = np.roots([float(c) for c in coeffs])
    rho = max(abs(r) for r in roots)
    # the Perron root is a real eigenvalue equal to the spectral radius
    x = _polish_root(coeffs, float(rho))
    return max(x, 0.0) if abs(x - rho) < 1e-6 * max(1.0, rho) else float(rho)


def _perron_power(B: np.ndarray, rng: np.random.Generator, tol=1e-13, maxiter=100_000) -> float:
    """Perron root of an irreducible nonnegative block via the shifted matrix I + B."""
    n = len(B)
    if n == 1:
        return float(B[0, 0])
    S = B + np.eye(n)
    x = rng.random(n) + 0.5
    lo, hi = 0.0, math.inf
    for _ in range(maxiter):
        y = S @ x
        ratios = y / x
        lo, hi = ratios.min(), ratios.max()
        if hi - lo <= tol * hi:
            break
        x = y / np.linalg.norm(y)
    return float((lo + hi) / 2 - 1.0)


def strongly_connected(A) -> list[list[int]]:
    """SCCs of the support digraph (edge k -> j when A[k][j] > 0), in topological order."""
    n = len(A)
    index = {}
    low = {}
    stack, on = [], set()
    out = []
    counter = [0]

    def visit(v):
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on.add(v)
        for w in range(n):
            if A[v][w] != 0:
                if w not in index:
                    visit(w)
                    low[v] = min(low[v], low[w])
                elif w in on:
                    low[v] = min(low[v], index[w])
        if low[v] == index[v]:
            comp = []
            while True:
                w = stack.pop()
                on.discard(w)
                comp.append(w)
                if w == v:
                    break
            out.append(sorted(comp))

    for v in range(n):
        if v not in index:
            visit(v)
    return out[::-1]


def _block_root(A, comp, rng) -> float:
    sub = [[A[i][j] for j in comp] for i in comp]
    if len(comp) <= 3:
        return _perron_exact(sub)
    return _perron_power(np.array([[float(x) for x in r] for r in sub]), rng)


def irreducible_components(M, seed: int = 0) -> list[tuple[list[int], float]]:
    A = _as_fraction_rows(M)
    rng = np.random.default_rng(seed)
    comps = [(c, _block_root(A, c, rng)) for c in strongly_connected(A)]
    return comps


def leading_eigenvalue(M, seed: int = 0) -> float:
    """Perron root of a nonnegative square matrix."""
    A = _as_fraction_rows(M)
    if not A:
        raise ValueError("empty matrix")
    if any(len(r) != len(A) for r in A) or any(x < 0 for r in A for x in r):
        raise ValueError("expected a square nonnegative matrix")
    if len(A) <= 3:
        lam = _perron_exact(A)
    else:
        lam = max(r for _, r in irreducible_components(A, seed))
    if lam >= 1:
        roots = [r for _, r in irreducible_components(A, seed)]
        assert max(roots) >= 1 - 1e-9
    return lam


# ---------------------------------------------------------------------------
# Levy cycles

def levy_candidates(t) -> list[CurveWord]:
    """Curves crossing the graph exactly twice, on two distinct edges."""
    t = _as_tischler(t)
    g = t.graph
    out = []
    for a in range(g.num_faces):
        for b in range(a + 1, g.num_faces):
            common = [e for e in range(g.num_edges) if set(g.edge_faces(e)) == {a, b}]
            for x, y in itertools.combinations(common, 2):
                out.append(CurveWord(((a, x), (b, y)), (0, 0)))
    return out


def certify_levy(t, w: CurveWord) -> PullbackComponent | None:
    """The degree-1 non-peripheral component homotopic to ``w``, if any."""
    if is_peripheral(t, w):
        return None
    for c in pullback(t, w):
        if c.degree == 1 and not c.peripheral and homotopic(c.word, w):
            return c
    return None


def find_levy_cycle(t) -> Multicurve | None:
    """A fixed Levy curve meeting the graph twice, or ``None``."""
    t = _as_tischler(t)
    if not is_hyperbolic(t):
        return None
    for w in levy_candidates(t):
        if certify_levy(t, w) is not None:
            return Multicurve((w,))
    return None


# ---------------------------------------------------------------------------
# random curves and searches

def _dual_steps(g: PlaneGraph, face: int) -> list[Step]:
    return sorted({(face, g.edge_of[d]) for d in g.face_darts(face)})


def random_reduced_word(t, length: int, rng: random.Random, tries: int = 1000) -> CurveWord | None:
    """Uniform-ish cyclically reduced word of the given even length, or ``None``."""
    g = _as_tischler(t).graph
    for _ in range(tries):
        face = rng.randrange(g.num_faces)
        start = face
        steps = []
        prev = None
        for _ in range(length):
            choices = [s for s in _dual_steps(g, face) if s[1] != prev]
            a, e = rng.choice(choices)
            steps.append((a, e))
            prev = e
            face = other_side(g, a, e)
        if face == start and steps[0][1] != steps[-1][1]:
            return CurveWord(tuple(steps))
    return None


def random_simple_curves(t, count: int, rng: random.Random, lengths=range(2, 11, 2),
                         essential: bool = False, max_tries: int = 100_000) -> list[CurveWord]:
    """Seeded random realizable reduced words (optionally non-peripheral)."""
    t = _hyperbolic(t)
    out = []
    lengths = list(lengths)
    for _ in range(max_tries):
        if len(out) == count:
            break
        w = random_reduced_word(t, rng.choice(lengths), rng)
        if w is None:
            continue
        try:
            w = realize(t, w, cap=20_000)
        except RealizationError:
            continue
        if essential and is_peripheral(t, w):
            continue
        out.append(w)
    return out


def closed_reduced_walks(t, length: int):
    """All cyclically reduced words of a given length, one per rotation class (oriented)."""
    g = _as_tischler(t).graph
    seen = set()

    def rec(face, start, prev, steps):
        if len(steps) == length:
            if face == start and steps[0][1] != steps[-1][1]:
                rots = [tuple(steps[k:] + steps[:k]) for k in range(length)]
                rep = min(rots)
                if rep not in seen:
                    seen.add(rep)
                    yield CurveWord(rep)
            return
        for a, e in _dual_steps(g, face):
            if e != prev:
                steps.append((a, e))
                yield from rec(other_side(g, a, e), start, e, steps)
                steps.pop()

    for f in range(g.num_faces):
        yield from rec(f, f, None, [])


def find_orbit_seed(t, complexities: Sequence[int], limit: int | None = None) -> CurveWord | None:
    """A simple curve whose non-peripheral pull-back orbit has the given complexities,
    ending in a class homotopic to its own pull-back."""
    t = _hyperbolic(t)
    seen_classes = set()
    for count, w in enumerate(closed_reduced_walks(t, complexities[0])):
        if limit is not None and count >= limit:
            break
        nf = normal_form(w)
        if nf in seen_classes:
            continue
        seen_classes.add(nf)
        try:
            w = realize(t, w, cap=20_000)
        except RealizationError:
            continue
        if orbit_matches(t, w, complexities):
            return w
    return None


def orbit_matches(t, w: CurveWord, complexities: Sequence[int]) -> bool:
    log = pullback_orbit(t, w, len(complexities))
    if len(log) < len(complexities) + 1:
        return False
    got = [entry["complexity"] for entry in log]
    if got[:len(complexities)] != list(complexities):
        return False
    last, after = log[len(complexities) - 1]["curve"], log[len(complexities)]["curve"]
    return homotopic(last, after)

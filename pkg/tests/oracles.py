"""Independent brute-force oracles used by the tests."""

from __future__ import annotations

import itertools


def _partitions_min(n, k, lo=3):
    """Non-increasing tuples of ``k`` parts >= lo summing to ``n``."""
    if k == 0:
        if n == 0:
            yield ()
        return
    for first in range(n - lo * (k - 1), lo - 1, -1):
        for rest in _partitions_min(n - first, k - 1, lo):
            if not rest or rest[0] <= first:
                yield (first,) + rest


def _cycle_perms(items, sizes):
    """All permutations of ``items`` whose cycles have the given sizes (as a multiset)."""
    if not sizes:
        yield {}
        return
    first = items[0]
    size = sizes[0]
    rest_sizes = sizes[1:]
    others = items[1:]
    for comb in itertools.combinations(others, size - 1):
        remaining = [x for x in others if x not in comb]
        # avoid double counting equal-sized blocks: the block containing the smallest
        # remaining item is always placed first
        for order in itertools.permutations(comb):
            cyc = (first,) + order
            for tail in _cycle_perms_sorted(remaining, rest_sizes):
                m = dict(tail)
                for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                    m[a] = b
                yield m


def _cycle_perms_sorted(items, sizes):
    if not sizes:
        yield {}
        return
    seen = set()
    for i, s in enumerate(sizes):
        if s in seen:
            continue
        seen.add(s)
        yield from _cycle_perms(items, (s,) + sizes[:i] + sizes[i + 1:])


def _orbit_count(perm):
    n = len(perm)
    seen = [False] * n
    c = 0
    for s in range(n):
        if not seen[s]:
            c += 1
            d = s
            while not seen[d]:
                seen[d] = True
                d = perm[d]
    return c


def rotation_systems(num_edges, num_vertices, min_degree=3):
    """Every sigma on ``2E`` darts with ``V`` cycles of length >= min_degree, alpha = (2i 2i+1)."""
    n = 2 * num_edges
    alpha = tuple(d ^ 1 for d in range(n))
    for sizes in _partitions_min(n, num_vertices, min_degree):
        for m in _cycle_perms_sorted(list(range(n)), sizes):
            yield alpha, tuple(m[d] for d in range(n))


def _has_loop(alpha, sigma):
    vertex = {}
    for s in range(len(sigma)):
        if s in vertex:
            continue
        d = s
        while d not in vertex:
            vertex[d] = s
            d = sigma[d]
    return any(vertex[d] == vertex[alpha[d]] for d in range(len(alpha)))


def sphere_faces(alpha, sigma):
    return _orbit_count([sigma[alpha[d]] for d in range(len(alpha))])


def brute_force_tischler_codes(degree):
    """Canonical codes of all Tischler graphs with ``degree + 1`` faces by exhaustive search."""
    from tischler.rotation_graph import GraphError, PlaneGraph, canonical_code
    from tischler.tischler import is_valid

    faces = degree + 1
    codes = set()
    # E - V = F - 2 and 2E >= 3V
    for v in range(2, 2 * faces):
        e = v + faces - 2
        if 2 * e < 3 * v:
            break
        for alpha, sigma in rotation_systems(e, v):
            if sphere_faces(alpha, sigma) != faces:
                continue
            if _has_loop(alpha, sigma):  # cheap rejection before the full validation
                continue
            try:
                g = PlaneGraph(alpha, sigma)
            except GraphError:  # disconnected, or a component of higher genus
                continue
            if g.connected and is_valid(g):
                codes.add(canonical_code(g))
    return codes


def commuting_bijections(g):
    """All dart bijections commuting with alpha (edge permutation + orientation flips)."""
    edges = [g.edge_darts(e) for e in range(g.num_edges)]
    n = g.num_darts
    for perm in itertools.permutations(range(len(edges))):
        for flips in itertools.product((0, 1), repeat=len(edges)):
            m = [0] * n
            for e, (a, b) in enumerate(edges):
                x, y = edges[perm[e]]
                if flips[e]:
                    x, y = y, x
                m[a], m[b] = x, y
            yield tuple(m)


def brute_force_automorphism_orders(g):
    sigma = g.sigma
    inv = [0] * len(sigma)
    for d, s in enumerate(sigma):
        inv[s] = d
    plus = full = 0
    for m in commuting_bijections(g):
        if all(m[sigma[d]] == sigma[m[d]] for d in range(len(m))):
            plus += 1
            full += 1
        elif all(m[sigma[d]] == inv[m[d]] for d in range(len(m))):
            full += 1
    return plus, full

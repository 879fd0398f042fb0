import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_force_automorphism_orders
from tischler.enumeration import enumerate_graphs, enumerate_trees, mirror_pairs
from tischler.polyhedra import cube, from_convex_points, icosahedron, load_polyhedron
from tischler.rotation_graph import (EITHER, GraphError, PlaneGraph, automorphism_group,
                                     automorphism_orders, canonical_code, canonical_form,
                                     dual_graph, faces, format_graph, from_json, from_rotations,
                                     isomorphisms, parse_graph, random_relabel, to_dot, to_json)
from tischler.tischler import from_tree

SMALL = [e.graph for d in (2, 3, 4) for e in enumerate_graphs(d)]


def test_counts(k4, theta):
    assert (k4.num_vertices, k4.num_edges, k4.num_faces) == (4, 6, 4)
    assert (theta.num_vertices, theta.num_edges, theta.num_faces) == (2, 3, 3)
    assert all(len(f) == 3 for f in faces(k4))
    assert all(len(f) == 2 and f.is_cycle for f in faces(theta))


def test_face_walk_contents(k4):
    for f in faces(k4):
        assert len(set(f.vertices)) == 3 and len(set(f.edges)) == 3
    # each edge borders two distinct faces
    for e in range(k4.num_edges):
        a, b = k4.edge_faces(e)
        assert a != b


def test_rejects_torus():
    with pytest.raises(GraphError, match="sphere"):
        parse_graph("V 0: 0 1 2\nV 1: 3 4 5\nE: (0,3) (1,4) (2,5)")
    g = parse_graph("V 0: 0 1 2\nV 1: 5 4 3\nE: (0,3) (1,4) (2,5)")
    assert g.num_faces == 3


@pytest.mark.parametrize("text", [
    "V 0: 0 1\nE: (0,0) (1,1)",           # alpha fixed points
    "V 0: 0 1 2\nE: (0,1)",               # dart 2 unpaired
    "V 0: 0 x\nE: (0,1)",                 # not an integer
    "V 0: 0 1\nV 0: 2 3\nE: (0,2) (1,3)",  # duplicate vertex
    "",
    "nonsense line",
])
def test_parse_errors(text):
    with pytest.raises(GraphError):
        parse_graph(text)


def test_alpha_fixed_point_direct():
    with pytest.raises(GraphError, match="fixed point"):
        PlaneGraph((0, 1), (1, 0))


def test_disconnected_rejected_when_required():
    text = "V 0: 0\nV 1: 1\nV 2: 2\nV 3: 3\nE: (0,1) (2,3)"
    assert parse_graph(text).num_components == 2
    with pytest.raises(GraphError):
        parse_graph(text, require_connected=True)


def test_text_round_trip(k4, fig6):
    for g in (k4, fig6):
        h = parse_graph(format_graph(g, comment="round trip"))
        assert h == g
        assert canonical_code(h) == canonical_code(g)
    assert parse_graph(format_graph(fig6)).labels == fig6.labels


def test_json_and_dot(fig6):
    assert from_json(to_json(fig6)) == fig6
    dot = to_dot(fig6)
    assert dot.startswith("graph") and dot.count("--") == fig6.num_edges


def test_canonical_relabel_invariance(k4, fig6, prism):
    rng = random.Random(3)
    for g in (k4, fig6, prism):
        code = canonical_code(g)
        for _ in range(50):
            h = random_relabel(g, rng)
            assert canonical_code(h) == code
            assert canonical_form(h) == canonical_form(g)


def test_canonical_distinguishes(k4, theta, prism):
    codes = {canonical_code(g) for g in (k4, theta, prism)}
    assert len(codes) == 3


def test_mirror_pair_codes():
    trees = enumerate_trees((2, 1, 1))
    (i, j), = mirror_pairs(trees)
    a, b = from_tree(trees[i]).graph, from_tree(trees[j]).graph
    assert canonical_code(a) != canonical_code(b)
    assert canonical_code(a, EITHER) == canonical_code(b, EITHER)
    assert canonical_code(a.mirror()) == canonical_code(b)


def test_automorphisms_k4(k4):
    assert automorphism_orders(k4) == (12, 24)
    assert brute_force_automorphism_orders(k4) == (12, 24)


def test_automorphisms_match_oracle():
    for g in SMALL[:12]:
        assert automorphism_orders(g) == brute_force_automorphism_orders(g)


def test_automorphisms_polyhedra():
    assert automorphism_orders(cube()) == (24, 48)
    assert automorphism_orders(icosahedron()) == (60, 120)
    assert automorphism_orders(load_polyhedron("truncated_icosahedron")) == (60, 120)


def test_trivial_group_on_asymmetric_tree():
    # caterpillar: a degree-3 vertex and a degree-4 vertex joined, leaves elsewhere
    rotations = [[0, 1, 2], [3, 4, 5, 6], [7], [8], [9], [10], [11]]
    pairs = [(0, 3), (1, 7), (2, 8), (4, 9), (5, 10), (6, 11)]
    g = from_rotations(rotations, pairs)
    plus, full = automorphism_orders(g)
    assert plus == 1 and full in (1, 2)


def test_isomorphisms_between_relabelings(k4):
    h = random_relabel(k4, random.Random(0))
    isos = isomorphisms(k4, h)
    assert len(isos) == 12
    for iso in isos:
        assert all(h.alpha[iso.mapping[d]] == iso.mapping[k4.alpha[d]] for d in range(12))
        assert all(h.sigma[iso.mapping[d]] == iso.mapping[k4.sigma[d]] for d in range(12))


def test_group_closed_under_inverse(prism):
    group = automorphism_group(prism)
    maps = {iso.mapping for iso in group}
    assert all(iso.inverse().mapping in maps for iso in group)
    assert sum(iso.preserving for iso in group) * 2 == len(group)


def test_dual_examples(theta, k4):
    d = dual_graph(theta)
    assert (d.num_vertices, d.num_edges, d.num_faces) == (3, 3, 2)
    assert canonical_code(dual_graph(k4)) == canonical_code(k4)
    octa = from_convex_points(np.array([[1, 0, 0], [-1, 0, 0], [0, 1, 0],
                                        [0, -1, 0], [0, 0, 1], [0, 0, -1]], float))
    assert canonical_code(dual_graph(cube())) == canonical_code(octa)


def test_dual_involution(fig6, prism):
    for g in (fig6, prism, *SMALL):
        assert canonical_code(dual_graph(dual_graph(g))) == canonical_code(g)


@settings(max_examples=40, deadline=None)
@given(idx=st.integers(0, len(SMALL) - 1), seed=st.integers(0, 2 ** 32 - 1))
def test_property_relabel(idx, seed):
    g = SMALL[idx]
    h = random_relabel(g, random.Random(seed))
    assert h.num_vertices - h.num_edges + h.num_faces == 2
    assert canonical_code(h) == canonical_code(g)
    assert canonical_code(h.mirror(), EITHER) == canonical_code(g, EITHER)
    assert automorphism_orders(h) == automorphism_orders(g)


@settings(max_examples=20, deadline=None)
@given(idx=st.integers(0, len(SMALL) - 1))
def test_property_group_order_divides(idx):
    g = SMALL[idx]
    plus, full = automorphism_orders(g)
    assert (2 * g.num_edges) % plus == 0
    assert full in (plus, 2 * plus)

import json
import shutil

import pytest

from conftest import ROOT
from oracles import brute_force_tischler_codes
from tischler.enumeration import (ResourceLimitExceeded, dual_tischler_graphs, enumerate_graphs,
                                  enumerate_trees, mirror_pairs, trees_by_degree,
                                  verify_icosahedral)
from tischler.polyhedra import ChecksumError, data_dir, load_polyhedron
from tischler.rotation_graph import EITHER, canonical_code, dual_graph
from tischler.tischler import from_tree, is_obstructed, validate


@pytest.mark.parametrize("d", [2, 3])
def test_against_brute_force(d):
    ours = {e.code for e in enumerate_graphs(d)}
    assert ours == {c.decode() if isinstance(c, bytes) else c
                    for c in brute_force_tischler_codes(d)}


def test_class_counts():
    assert [len(enumerate_graphs(d)) for d in (2, 3, 4)] == [1, 4, 18]
    assert len(enumerate_graphs(3).select(unobstructed=True)) == 3
    assert len(enumerate_graphs(4).select(unobstructed=True)) == 11


def test_degree3_nonpolynomial_is_k4(k4):
    sel = enumerate_graphs(3).select(unobstructed=True, antipolynomial=False)
    assert [e.code.encode() for e in sel] == [canonical_code(k4)]


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_golden_catalog(d):
    stored = json.loads((ROOT / "catalogs" / f"d{d}.json").read_text())
    assert stored == json.loads(json.dumps(enumerate_graphs(d).as_dict()))


def test_codes_distinct_and_canonical():
    cat = enumerate_graphs(4)
    codes = cat.codes()
    assert len(set(codes)) == len(codes)
    for e in cat:
        assert canonical_code(e.graph).decode() == e.code


def test_mirror_involution():
    cat = enumerate_graphs(4)
    for i, e in enumerate(cat):
        j = e.mirror
        assert cat.entries[j].mirror == i
        assert cat.entries[j].code == canonical_code(e.graph.mirror()).decode()
        assert (i != j) == e.mirror_code_differs


def test_obstruction_via_dual_multi_edge():
    # independent check: T obstructed iff its dual has two edges with the same ends
    for d in (3, 4):
        for e in enumerate_graphs(d):
            dual = dual_graph(e.graph)
            ends = [frozenset(dual.endpoints(k)) for k in range(dual.num_edges)]
            assert (len(set(ends)) < len(ends)) == e.obstructed
            assert e.obstructed == (is_obstructed(validate(e.graph)) is not None)


def test_antipolynomial_unobstructed():
    for d in (2, 3, 4, 5):
        for e in enumerate_graphs(d):
            if e.antipolynomial:
                assert not e.obstructed


def test_dual_generator_sizes():
    assert [g.num_vertices for g in dual_tischler_graphs(3)] == [3]
    assert all(g.num_vertices == 5 for g in dual_tischler_graphs(5))


def test_cap():
    with pytest.raises(ResourceLimitExceeded):
        enumerate_graphs(4, cap=10)


def test_tree_counts():
    assert [len(enumerate_trees(b)) for b in [(1,), (2,), (1, 1), (2, 1), (1, 1, 1)]] == [1] * 5
    assert len(enumerate_trees((2, 1, 1))) == 4
    assert len(enumerate_trees((1, 1, 1, 1))) == 4
    totals = {d: sum(map(len, trees_by_degree(d).values())) for d in (2, 3, 4, 5)}
    assert totals == {2: 1, 3: 2, 4: 3, 5: 11}


def test_tree_mirror_pairs():
    for b in [(2, 1, 1), (1, 1, 1, 1)]:
        trees = enumerate_trees(b)
        pairs = mirror_pairs(trees)
        assert len(pairs) == 1
        i, j = pairs[0]
        a, c = from_tree(trees[i]).graph, from_tree(trees[j]).graph
        assert canonical_code(a, EITHER) == canonical_code(c, EITHER)


def test_trees_match_antipolynomial_catalog():
    for d in (3, 4, 5):
        n = sum(map(len, trees_by_degree(d).values()))
        assert n == len(enumerate_graphs(d).select(antipolynomial=True))


def test_icosahedral_report():
    rep = verify_icosahedral()
    assert rep["all_pass"]
    assert "not re-proved" in rep["note"]
    assert {p["name"] for p in rep["polyhedra"]} == {
        "truncated_icosahedron", "truncated_dodecahedron", "icosidodecahedron"}


def test_polyhedron_checksum(tmp_path):
    src = data_dir() / "polyhedra"
    dst = tmp_path / "polyhedra"
    shutil.copytree(src, dst)
    load_polyhedron("icosidodecahedron", tmp_path)
    path = dst / "icosidodecahedron.rot"
    path.write_text(path.read_text() + "# tampered\n")
    with pytest.raises(ChecksumError):
        load_polyhedron("icosidodecahedron", tmp_path)

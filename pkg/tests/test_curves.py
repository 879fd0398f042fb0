import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tischler.curves import (CurveError, CurveWord, RealizationError, check_word, complexity,
                             empty_word, find_levy_cycle, format_word, homotopic,
                             irreducible_components, is_peripheral, is_simple,
                             leading_eigenvalue, make_multicurve, matrix, parse_word, pullback,
                             pullback_orbit, random_simple_curves, realize, reduce, sides,
                             thurston_matrix)
from tischler.enumeration import enumerate_graphs
from tischler.tischler import is_obstructed, validate

ORBIT_SEED = ("F0 e0 F1 e1 F2 e2 F0 e5 F3 e3 F1 e1 F2 e4 F3 e5 "
             "F0 e2 F2 e1 F1 e3 F3 e5")


@pytest.fixture(scope="module")
def k4_curves(tk4):
    return random_simple_curves(tk4, 60, random.Random(7))


def test_parse_format(tk4, tfig6):
    w = parse_word(tk4, ORBIT_SEED)
    assert len(w) == 12
    assert parse_word(tk4, format_word(tk4, w)) == w
    assert parse_word(tk4, "F2").is_empty
    # edges by vertex labels
    levy = find_levy_cycle(tfig6)[0]
    g = tfig6.graph
    text = " ".join(f"F{a} {g.edge_label(e)}" for a, e in levy.steps)
    assert parse_word(tfig6, text).steps == levy.steps


@pytest.mark.parametrize("text", ["F0 e0", "F0 e9 F1 e1", "F0 F1", "", "F0 e0 F1 e0 F2"])
def test_parse_errors(tk4, text):
    with pytest.raises(CurveError):
        parse_word(tk4, text)


def test_word_validation(tk4):
    with pytest.raises(CurveError):
        CurveWord(())
    with pytest.raises(CurveError):
        CurveWord(((0, 0), (1, 1)), keys=(0,))
    with pytest.raises(CurveError):
        check_word(tk4, CurveWord(((0, 0),)))


def test_rotation_reversal_homotopic(tk4):
    w = parse_word(tk4, ORBIT_SEED)
    for k in range(len(w)):
        assert homotopic(w.rotated(k), w)
        assert homotopic(w.rotated(k).reversed(), w)
    check_word(tk4, w.reversed())


def test_reduce_removes_bigons(tk4):
    g = tk4.graph
    a, b = g.edge_faces(0)
    back_and_forth = realize(tk4, CurveWord(((a, 0), (b, 0))))
    r = reduce(back_and_forth, tk4)
    assert r.is_empty and r.face in (a, b)
    w = realize(tk4, parse_word(tk4, ORBIT_SEED))
    assert len(reduce(w, tk4)) == len(w) == complexity(w)


def test_reduce_idempotent(tk4, k4_curves):
    for w in k4_curves:
        once = reduce(w, tk4)
        assert reduce(once, tk4) == once


def test_non_simple_word(tk4):
    doubled = CurveWord(((0, 0), (1, 1), (2, 2)) * 2)
    check_word(tk4, doubled)
    with pytest.raises(RealizationError):
        realize(tk4, doubled)
    assert not is_simple(tk4, CurveWord(doubled.steps, tuple(range(6))))


def test_peripheral(tk4, tfig6):
    assert is_peripheral(tk4, empty_word(0))
    # small loops around each vertex of K4 cross its three edges
    g = tk4.graph
    for v in range(g.num_vertices):
        darts = g.vertex_darts(v)
        steps = tuple((g.face_of[d], g.edge_of[d]) for d in darts)
        w = CurveWord(steps)
        try:
            check_word(tk4, w)
        except CurveError:
            w = w.reversed()
            check_word(tk4, w)
        w = realize(tk4, w)
        assert is_peripheral(tk4, w)
        inside, outside = sides(tk4, w)
        assert min(len(inside), len(outside)) == 1
    levy = find_levy_cycle(tfig6)[0]
    assert not is_peripheral(tfig6, levy)
    assert sorted(map(len, sides(tfig6, levy))) == [2, 2]


def test_pullback_empty_word(tk4):
    comps = pullback(tk4, empty_word(1))
    assert len(comps) == tk4.degree
    assert all(c.degree == 1 and c.peripheral and c.word.is_empty for c in comps)


def test_pullback_conservation(tk4, k4_curves):
    for w in k4_curves:
        comps = pullback(tk4, w)
        assert sum(c.degree for c in comps) == tk4.degree
        assert sum(len(c.raw) for c in comps) == len(w)
        assert sum(c.complexity for c in comps) <= len(w)


def test_fig6_levy(tfig6):
    levy = find_levy_cycle(tfig6)
    assert levy is not None and len(levy) == 1
    w = levy[0]
    assert len(w) == 2
    g = tfig6.graph
    assert sorted(g.edge_label(e) for e in w.edges) == ["AB", "CD"]
    M = thurston_matrix(tfig6, levy)
    assert M.entries == ((Fraction(1),),)
    assert leading_eigenvalue(M) == pytest.approx(1.0, abs=1e-12)


def test_orbit_12_8_4(tk4):
    w = realize(tk4, parse_word(tk4, ORBIT_SEED))
    log = pullback_orbit(tk4, w, 3)
    assert [e["complexity"] for e in log][:3] == [12, 8, 4]
    assert homotopic(log[2]["curve"], log[3]["curve"])
    # the first curve is not invariant: its Thurston matrix vanishes
    assert thurston_matrix(tk4, [w]).entries == ((Fraction(0),),)
    # the limit curve is invariant with weight 1/deg summed over components
    fixed = make_multicurve(tk4, [log[2]["curve"]])
    M = thurston_matrix(tk4, fixed)
    assert 0 < M[0, 0] < 1


def test_no_levy_on_k4_and_trees(tk4):
    assert find_levy_cycle(tk4) is None
    for e in enumerate_graphs(4):
        if e.antipolynomial:
            assert find_levy_cycle(validate(e.graph)) is None


def test_levy_dichotomy_degree4():
    for e in enumerate_graphs(4):
        t = validate(e.graph)
        assert (find_levy_cycle(t) is not None) == (is_obstructed(t) is not None)


def test_two_vertex_refused(theta):
    t = validate(theta)
    assert find_levy_cycle(t) is None
    with pytest.raises(CurveError):
        pullback(t, empty_word(0))


def test_multicurve_rejects(tk4, k4_curves):
    with pytest.raises(CurveError):
        make_multicurve(tk4, [empty_word(0)])
    w = next(c for c in k4_curves if not is_peripheral(tk4, c))
    with pytest.raises(CurveError):
        make_multicurve(tk4, [w, w.rotated(1)])


def test_homotopy_equivalence(tk4, k4_curves):
    rng = random.Random(11)
    pool = k4_curves + [w.rotated(rng.randrange(len(w))).reversed() for w in k4_curves]
    for _ in range(500):
        a, b, c = (rng.choice(pool) for _ in range(3))
        assert homotopic(a, a)
        assert homotopic(a, b) == homotopic(b, a)
        if homotopic(a, b) and homotopic(b, c):
            assert homotopic(a, c)


def test_monotone_on_prism(prism):
    t = validate(prism)
    for w in random_simple_curves(t, 100, random.Random(2)):
        assert sum(c.complexity for c in pullback(t, w)) <= len(w)


# spectral part ------------------------------------------------------------

def test_eigenvalue_examples():
    assert leading_eigenvalue([[1]]) == pytest.approx(1.0)
    assert leading_eigenvalue([[0, 0], [0, 0]]) == 0.0
    assert leading_eigenvalue(matrix([[0, Fraction(1, 2)], [1, 0]])) == pytest.approx(
        1 / math.sqrt(2), abs=1e-12)
    assert leading_eigenvalue([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]]) \
        == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(ValueError):
        leading_eigenvalue([[-1]])
    with pytest.raises(ValueError):
        matrix([[1, 2]])


def test_irreducible_components():
    A = [[Fraction(1, 2), 1, 0, 0],
         [0, Fraction(1, 3), 0, 0],
         [0, 0, 0, 2],
         [0, 0, 2, 0]]
    comps = {tuple(sorted(c)): r for c, r in irreducible_components(A)}
    assert comps[(0,)] == pytest.approx(0.5)
    assert comps[(1,)] == pytest.approx(1 / 3)
    assert comps[(2, 3)] == pytest.approx(2.0)
    assert leading_eigenvalue(A) == pytest.approx(2.0)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2 ** 31))
def test_eigenvalue_matches_numpy(n, seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(0, 4, size=(n, n)) * (rng.random((n, n)) < 0.5)
    rows = [[Fraction(int(x), 2) for x in r] for r in A]
    ref = max(abs(np.linalg.eigvals(A / 2.0)))
    assert leading_eigenvalue(rows) == pytest.approx(ref, rel=1e-7, abs=1e-9)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_property_pullback_k4(seed):
    from tischler.polyhedra import builtin_graph
    t = validate(builtin_graph("k4"))
    ws = random_simple_curves(t, 1, random.Random(seed))
    for w in ws:
        comps = pullback(t, w)
        assert sum(c.degree for c in comps) == 3
        assert sum(c.complexity for c in comps) <= len(w)
        for c in comps:
            assert c.peripheral == is_peripheral(t, c.word)


def test_simple_realization_found(tk4, k4_curves):
    for w in k4_curves:
        assert w.realized and is_simple(tk4, w)
    assert len({format_word(tk4, w) for w in itertools.islice(k4_curves, 10)}) >= 2

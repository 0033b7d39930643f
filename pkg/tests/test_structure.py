import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degflip.canon import to_fringe
from degflip.core import Triangulation, fan_triangulation, zigzag_triangulation
from degflip.engine import Work
from degflip.explorer import class_diagonal_sets, enumerate_triangulations, random_triangulation
from degflip.merge import normalize_tip
from degflip.structure import (
    EAR,
    INNER,
    PATH,
    PreconditionError,
    classify_triangles,
    decompose,
    find_fans,
    find_light_merge_triangle,
    find_merge_triangles,
    is_fringe,
    is_zigzag_triangulation,
    leaf_paths,
)

STAR6 = Triangulation.from_diagonals(6, [(1, 3), (3, 5), (1, 5)])
FAN9 = Triangulation.from_diagonals(9, [(0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (6, 8)])


def hull_sides(n, tri):
    a, b, c = tri
    return sum((y - x) % n in (1, n - 1) for x, y in ((a, b), (b, c), (a, c)))


def kinds(t):
    cls = classify_triangles(t)
    return sorted(c.kind for c in cls.values())


# -- classification --------------------------------------------------------

def test_classify_zigzag7():
    cls = classify_triangles(zigzag_triangulation(7, 0))
    assert kinds(zigzag_triangulation(7, 0)) == [EAR, EAR, PATH, PATH, PATH]
    assert sorted(c.tip for c in cls.values() if c.kind == EAR) == [0, 4]


def test_classify_fan6():
    assert kinds(fan_triangulation(6, 0)) == [EAR, EAR, PATH, PATH]


def test_classify_star6():
    cls = classify_triangles(STAR6)
    assert cls[(1, 3, 5)].kind == INNER
    assert sorted(c.tip for c in cls.values() if c.kind == EAR) == [0, 2, 4]


@pytest.mark.parametrize("n", range(4, 11))
def test_class_counts_exhaustive(n):
    for t in enumerate_triangulations(n):
        cls = classify_triangles(t)
        counts = {EAR: 0, PATH: 0, INNER: 0}
        for tri, c in cls.items():
            assert hull_sides(n, tri) == {EAR: 2, PATH: 1, INNER: 0}[c.kind]
            counts[c.kind] += 1
        assert sum(counts.values()) == n - 2
        assert counts[EAR] == counts[INNER] + 2


# -- fans ------------------------------------------------------------------

def test_fans_of_fan7():
    (f,) = find_fans(fan_triangulation(7, 0))
    assert f.handle == 0
    assert f.size == 4  # handle degree minus two


def test_no_fans_in_zigzag():
    assert find_fans(zigzag_triangulation(8, 0)) == []


def test_fan9_example():
    (f,) = find_fans(FAN9)
    assert f.handle == 0 and f.size == 5


@settings(max_examples=300, deadline=None)
@given(st.integers(5, 40), st.integers(5, 12), st.integers(0, 2**32 - 1))
def test_fan_shape(n, k, seed):
    t = random_triangulation(n, k, random.Random(seed))
    for f in find_fans(t):
        assert f.size >= 3
        assert t.degree(f.handle) >= f.size + 2 >= 5
        assert len(f.triangles) == f.size - 1
        for tri, (x, y) in zip(f.triangles, zip(f.spokes, f.spokes[1:])):
            assert set(tri) == {f.handle, x, y}
            assert (y - x) % n == 1


# -- fringe and zigzag predicates ------------------------------------------

@pytest.mark.parametrize("n", range(3, 14))
def test_zigzags_are_fringe(n):
    for tip in range(n):
        for inv in (False, True):
            z = zigzag_triangulation(n, tip, inv)
            assert is_fringe(z).ok
            assert is_zigzag_triangulation(z)


def test_fringe_examples():
    # handle degree 7, so size 5 > 4
    r = is_fringe(fan_triangulation(8, 0))
    assert not r.ok and r.witness.size == 5
    assert is_fringe(STAR6).ok


def test_zigzag_predicate_examples():
    assert is_zigzag_triangulation(zigzag_triangulation(9, 3, True))
    assert not is_zigzag_triangulation(fan_triangulation(6, 0))
    for t in enumerate_triangulations(4):
        assert is_zigzag_triangulation(t)


@pytest.mark.parametrize("n", range(5, 12))
def test_zigzag_predicate_counts(n):
    # exactly n distinct zigzag triangulations for n >= 5
    found = [t for t in enumerate_triangulations(n) if is_zigzag_triangulation(t)]
    expected = {zigzag_triangulation(n, s, inv) for s in range(n) for inv in (False, True)}
    assert set(found) == expected and len(expected) == n


def test_leaf_paths_of_zigzag():
    paths = leaf_paths(zigzag_triangulation(9, 0))
    assert len(paths) == 1 and paths[0].is_zigzag


# -- merge triangles -------------------------------------------------------

def test_merge_star6():
    ms = find_merge_triangles(STAR6)
    assert [m.tip for m in ms] == [1, 3, 5]
    assert all(m.triangle == (1, 3, 5) for m in ms)
    assert all(len(z.moves) == 0 for m in ms for z in m.zigzags)


def test_merge_none_in_zigzag():
    assert find_merge_triangles(zigzag_triangulation(10, 0)) == []


def test_merge_after_fringe_fan9():
    f = to_fringe(FAN9, 7).final
    assert is_fringe(f).ok
    assert len({m.triangle for m in find_merge_triangles(f)}) == 1


def test_merge_base_and_zigzag_regions():
    for m in find_merge_triangles(STAR6):
        assert set(m.base) == {m.p, m.q}
        assert m.zigzags[0].region == (m.p, m.tip)
        assert m.zigzags[1].region == (m.tip, m.q)


def test_light_merge_rejects_zigzag():
    with pytest.raises(PreconditionError):
        find_light_merge_triangle(zigzag_triangulation(10, 0), 7)


def test_light_merge_rejects_non_fringe():
    with pytest.raises(PreconditionError):
        find_light_merge_triangle(fan_triangulation(7, 0), 7)


def test_light_merge_hand_built_n10():
    # inner triangle (0,4,7); tip 0 has degree 5.  The zigzag in (7,0)
    # already leans on the tip; the one in (0,4) starts with chord (1,4) at
    # the base, so a single inversion (1,4) -> (0,3) unloads vertex 4.
    t = Triangulation.from_diagonals(10, [(0, 4), (4, 7), (0, 7), (1, 4), (1, 3), (5, 7), (0, 8)])
    assert (t.degree(7), t.degree(0), t.degree(4)) == (5, 5, 5)
    lm = find_light_merge_triangle(t, 7)
    assert (lm.merge.p, lm.merge.tip, lm.merge.q) == (7, 0, 4)
    assert [(tuple(f.removed), tuple(f.inserted)) for f in lm.plan] == [((1, 4), (0, 3))]
    assert lm.degrees == (5, 6, 4)
    assert lm.both_light


def _fringe_non_zigzag(n, k):
    for d in class_diagonal_sets(n, k):
        t = Triangulation(n, frozenset(d))
        if is_fringe(t).ok and not is_zigzag_triangulation(t):
            yield t


@pytest.mark.parametrize("n", range(6, 11))
def test_light_merge_exhaustive(n):
    k = 7
    for t in _fringe_non_zigzag(n, k):
        lm = find_light_merge_triangle(t, k)
        assert lm.degrees[1] <= 6
        # replaying the plan never exceeds k
        w = Work(t, k)
        for f in lm.plan:
            w.flip(*f.removed)
        assert w.max_degree <= k
        p, tip, q = lm.merge.p, lm.merge.tip, lm.merge.q
        assert (w.deg(p), w.deg(tip), w.deg(q)) == lm.degrees
        if lm.both_light:
            assert max(w.deg(p), w.deg(q)) < k
        else:
            assert min(w.deg(p), w.deg(q)) < k


def test_normalize_tip_idempotent():
    t = Triangulation.from_diagonals(10, [(0, 4), (4, 7), (0, 7), (1, 4), (1, 3), (5, 7), (7, 9)])
    w = Work(t, 7)
    normalize_tip(w, 0, 4, 7)
    before = len(w.flips)
    normalize_tip(w, 0, 4, 7)
    assert len(w.flips) == before


# -- decomposition ---------------------------------------------------------

@pytest.mark.parametrize("n", range(5, 11))
def test_decomposition_exhaustive(n):
    for t in enumerate_triangulations(n):
        d = decompose(t)
        adj = d.dual.adjacency()
        ears = {i for i, c in enumerate(d.classes) if c.kind == EAR}
        assert {p[0] for p in d.leaf_paths} == ears
        for nodes in (d.d_prime, d.d_double_prime):
            edges = d.induced_edges(nodes)
            assert len(nodes) == 0 or len(edges) == len(nodes) - 1
        in_leaf = {i for p in d.leaf_paths for i in p}
        assert d.d_prime == frozenset(range(n - 2)) - in_leaf
        leaves1 = {i for i in d.d_prime if sum(j in d.d_prime for j in adj[i]) <= 1}
        assert d.d_double_prime == d.d_prime - leaves1
        if len(d.d_prime) >= 2:
            merge_tris = {m.triangle for m in find_merge_triangles(t)}
            for i in leaves1:
                assert d.dual.triangles[i] in merge_tris

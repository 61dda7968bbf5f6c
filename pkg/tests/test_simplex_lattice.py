from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from pgln_symplectic import (cell_classes, classify_point, lattice_points, load_triangulation,
                             midpoint_pairs, point_classes, subsimplices)
from pgln_symplectic.errors import VertexPoint
from pgln_symplectic.lattice import expected_point_count, point_index


@pytest.mark.parametrize("n", range(2, 8))
def test_lattice_point_count(n):
    pts = lattice_points(n)
    assert len(pts) == comb(n + 3, 3) == len(set(pts))
    assert all(sum(p) == n and min(p) >= 0 for p in pts)


def test_vertex_points_n2():
    vertices = {p for p in lattice_points(2) if classify_point(p)[0] == "vertex"}
    assert vertices == {(2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2)}


def test_subsimplices():
    assert list(subsimplices(2)) == [(0, 0, 0, 0)]
    assert len(subsimplices(3)) == 4
    assert len(subsimplices(4)) == 10


def test_classify():
    assert classify_point((2, 0, 0, 0)) == ("vertex", (2, 0, 0, 0))
    assert classify_point((1, 2, 0, 0)) == ("edge", (2, 1, 0, 0))
    assert classify_point((1, 1, 1, 1)) == ("interior", (1, 1, 1, 1))
    assert classify_point((0, 1, 3, 1))[0] == "face"


def test_midpoint_pairs_examples():
    assert midpoint_pairs((1, 1, 0, 0)) == [((0, 0, 0, 0), (0, 1))]
    assert set(midpoint_pairs((1, 1, 1, 0))) == {
        ((1, 0, 0, 0), (1, 2)), ((0, 1, 0, 0), (0, 2)), ((0, 0, 1, 0), (0, 1))}
    assert set(midpoint_pairs((2, 2, 1, 0))) == {
        ((1, 1, 1, 0), (0, 1)), ((1, 2, 0, 0), (0, 2)), ((2, 1, 0, 0), (1, 2))}
    with pytest.raises(VertexPoint):
        midpoint_pairs((3, 0, 0, 0))


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 9).flatmap(lambda n: st.sampled_from(lattice_points(n))))
def test_midpoint_pair_count_matches_support(t):
    support = sum(1 for x in t if x)
    if support == 1:
        return
    pairs = midpoint_pairs(t)
    assert len(pairs) == comb(support, 2)
    for s, (i, j) in pairs:
        assert min(s) >= 0 and s[i] + 1 == t[i] and s[j] + 1 == t[j]


def test_m004_point_classes():
    tri = load_triangulation("m004")
    classes = point_classes(tri, 2)
    assert len(classes) == 2 and all(c.kind == "edge" for c in classes)
    kinds = [c.kind for c in point_classes(tri, 3)]
    assert kinds.count("edge") == 4 and kinds.count("face") == 4
    assert len(point_classes(tri, 5)) == 40


@pytest.mark.parametrize("n", range(2, 6))
def test_point_count_formula(corpus_tri, n):
    v, e, f, t = cell_classes(corpus_tri).counts
    assert len(point_index(corpus_tri, n)) == expected_point_count(n, e, f, t)


def test_classes_partition_nonvertex_points(corpus_tri):
    n = 4
    pc = point_index(corpus_tri, n)
    seen = [m for c in pc.classes for m in c.members]
    assert len(seen) == len(set(seen))
    total = corpus_tri.tet_count * (comb(n + 3, 3) - 4)
    assert len(seen) == total
    # interior points are never identified
    assert all(len(c.members) == 1 for c in pc.classes if c.kind == "interior")
    # face classes pair exactly two points
    assert all(len(c.members) == 2 for c in pc.classes if c.kind == "face")
    assert pc.class_of(0, (n, 0, 0, 0)) is None


def test_rejects_small_n():
    with pytest.raises(ValueError):
        point_index(load_triangulation("m004"), 1)

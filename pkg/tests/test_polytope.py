import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ratluk.polytope import (
    Polytope,
    cube_rows,
    normalize_row,
    point_from_fractions,
    point_to_fractions,
    row_from_fractions,
    row_to_fractions,
    vertex_enumerate,
)
from strategies import points

H = F(1, 2)


def test_normalize_row():
    assert normalize_row((2, 4, 6)) == (1, 2, 3)
    assert normalize_row((0, 0, 5)) is None
    assert normalize_row((-3, 6, 9)) == (-1, 2, 3)


def test_row_and_point_conversions():
    row = row_from_fractions([H, F(1, 3)], F(1, 6))
    assert row == (3, 2, 1)
    assert row_to_fractions(row) == ((F(3), F(2)), F(1))
    pt = point_from_fractions([F(1, 2), F(1, 3)])
    assert pt == (3, 2, 6)
    assert point_to_fractions(pt) == (H, F(1, 3))


class TestVertexEnumeration:
    def test_square(self):
        assert len(vertex_enumerate([], 2)) == 4

    def test_simplex(self):
        got = vertex_enumerate([((1, 1), 1)])
        assert set(got) == {(0, 0), (1, 0), (0, 1)}

    def test_halving(self):
        got = vertex_enumerate([((2, 0), 1)])
        assert {v[0] for v in got} == {0, H}
        assert len(got) == 4

    def test_empty(self):
        assert vertex_enumerate([((1, 0), F(-1))]) == []

    def test_without_cube_needs_bounded_rows(self):
        rows = [((1,), F(3)), ((-1,), F(-2))]
        assert vertex_enumerate(rows, within_cube=False) == [(F(2),), (F(3),)]

    def test_dimension_required(self):
        with pytest.raises(ValueError):
            vertex_enumerate([])


class TestPolytope:
    def test_cube(self):
        c = Polytope.cube(3)
        assert len(c.vertices) == 8
        assert c.is_full_dimensional
        assert c.volume() == 1
        assert len(c.rows) == 6

    def test_redundant_rows_pruned(self):
        p = Polytope.from_rows(2, list(cube_rows(2)) + [(1, 1, 5), (1, 0, 3)])
        assert set(p.rows) == set(cube_rows(2))

    def test_degenerate(self):
        seg = Polytope.from_rows(2, list(cube_rows(2)) + [(0, 2, 1), (0, -2, -1)])
        assert seg.affine_dim == 1
        assert not seg.is_full_dimensional
        assert seg.volume() == 0
        assert set(seg.vertices) == {(0, H), (1, H)}

    def test_contains(self):
        tri = Polytope.from_rows(2, list(cube_rows(2)) + [(1, 1, 1)])
        assert tri.contains((H, H))
        assert not tri.contains((H, F(3, 4)))
        assert tri.volume() == H

    def test_from_points_round_trip(self):
        pts = [(0, 0), (1, 0), (F(1, 3), 1)]
        tri = Polytope.from_points(2, pts)
        assert set(tri.vertices) == {tuple(F(c) for c in p) for p in pts}
        assert tri.volume() == H
        again = Polytope.from_rows(2, tri.rows)
        assert again == tri

    def test_from_points_lower_dimensional(self):
        seg = Polytope.from_points(3, [(0, 0, 0), (1, 1, 1), (H, H, H)])
        assert seg.affine_dim == 1
        assert set(seg.vertices) == {(0, 0, 0), (1, 1, 1)}
        assert seg.contains((F(1, 3),) * 3)
        assert not seg.contains((F(1, 3), F(1, 3), F(1, 2)))

    def test_single_point(self):
        p = Polytope.from_points(2, [(H, F(1, 3))])
        assert p.affine_dim == 0
        assert p.vertices == ((H, F(1, 3)),)

    def test_split(self):
        low, high = Polytope.cube(2).split((1, 1, 1))
        assert low.volume() == H and high.volume() == H
        low, high = Polytope.cube(2).split((1, 0, 1))
        assert high is None and low == Polytope.cube(2)

    def test_intersect(self):
        a = Polytope.from_rows(2, list(cube_rows(2)) + [(2, 0, 1)])
        b = Polytope.from_rows(2, list(cube_rows(2)) + [(-2, 0, -1)])
        meet = a.intersect(b)
        assert meet.affine_dim == 1
        far = Polytope.from_points(2, [(0, 0), (F(1, 4), F(1, 4))])
        near = Polytope.from_points(2, [(1, 1), (F(3, 4), 1)])
        assert far.intersect(near).is_empty

    def test_bad_row_length(self):
        with pytest.raises(ValueError):
            Polytope.from_rows(2, [(1, 1)])


@given(st.lists(points(2, 12), min_size=1, max_size=7))
def test_hull_contains_generators(pts):
    poly = Polytope.from_points(2, pts)
    assert all(poly.contains(p) for p in pts)
    assert set(poly.vertices) <= {tuple(F(c) for c in p) for p in pts}


@given(st.lists(points(3, 6), min_size=4, max_size=8))
def test_triangulation_volume_matches_split_volumes(pts):
    poly = Polytope.from_points(3, pts)
    if not poly.is_full_dimensional:
        return
    low, high = poly.split((1, 1, 1, 1))
    total = sum(p.volume() for p in (low, high) if p is not None)
    assert total == poly.volume()


def test_random_hrep_vertices_satisfy_rows():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(1, 3)
        rows = list(cube_rows(n)) + [tuple(rng.randint(-4, 4) for _ in range(n + 1))
                                      for _ in range(3)]
        poly = Polytope.from_rows(n, rows)
        for v in poly.vertices:
            for *a, b in rows:
                assert sum(F(ai) * vi for ai, vi in zip(a, v)) <= b

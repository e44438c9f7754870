from fractions import Fraction

import pytest

from polyfan.caging import Caging
from polyfan.errors import EmptyVertexList
from polyfan.fan import fan_equal, fan_validate
from polyfan.flags import polypermutohedral_fan, polystellahedral_fan
from polyfan.lattice import IntVector
from polyfan.normalfan import check_inner_normal_fan, min_face, negated_fan
from polyfan.polymatroid import VertexList, base_polytope, expansion, independence_polytope, perm_rank


def test_min_face_zero_direction():
    vertices = independence_polytope(perm_rank(2)).vertices()
    result = min_face((0, 0), vertices)
    assert result.optimal_face == tuple(range(len(vertices)))
    assert not result.unique


def test_min_face_pentagon():
    vertices = independence_polytope(perm_rank(2)).vertices()
    result = min_face((1, 1), vertices)
    assert result.unique
    assert vertices[result.optimal_face[0]] == (0, 0)
    assert result.optimal_value == Fraction(0)


def test_min_face_permutohedron():
    p = base_polytope(perm_rank(3))
    vertices = p.vertices()
    assert len(vertices) == 6
    result = min_face((3, 2, 1), vertices)
    assert result.unique
    assert vertices[result.optimal_face[0]] == (1, 2, 3)
    assert result.optimal_value == 10


def test_min_face_lifts_quotient_directions(hexagon):
    vertices = base_polytope(perm_rank(3)).vertices()
    result = min_face(IntVector(hexagon.ambient, (2, 1)), vertices)
    assert result.direction == (2, 1, 0)
    assert vertices[result.optimal_face[0]] == (1, 2, 3)


def test_min_face_empty():
    with pytest.raises(EmptyVertexList):
        min_face((1,), VertexList([]))


def test_polypermutohedral_normal_fan():
    pi = Caging.from_cage((2, 1))
    p = base_polytope(expansion(perm_rank(2), pi))
    report = check_inner_normal_fan(polypermutohedral_fan(pi), p)
    assert report.passed
    assert sorted(map(tuple, report.bijection.values())) == [(0, 1, 2), (0, 2, 1), (1, 0, 2), (2, 0, 1)]


def test_polystellahedral_normal_fan(pentagon):
    report = check_inner_normal_fan(pentagon, independence_polytope(perm_rank(2)))
    assert report.passed
    assert len(report.bijection) == 5


def test_projective_plane_is_not_the_permutohedron_fan(p2, hexagon):
    p = base_polytope(perm_rank(3))
    assert not check_inner_normal_fan(p2, p).passed
    assert check_inner_normal_fan(hexagon, p).passed


def test_mode_mismatch_fails(pentagon):
    report = check_inner_normal_fan(pentagon, base_polytope(perm_rank(2)))
    assert not report.passed


def test_negated_fan(p2):
    negated = negated_fan(p2)
    assert fan_validate(negated).passed
    assert not fan_equal(negated, p2)
    assert fan_equal(negated_fan(negated), p2)

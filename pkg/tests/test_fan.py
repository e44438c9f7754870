import pytest

from polyfan.errors import AmbientMismatch, ConeNotInFan, NotARay, ParseError
from polyfan.fan import (
    Fan,
    fan_equal,
    fan_locate,
    fan_refines,
    fan_validate,
    open_star_subfans,
    product_of_fans,
    simplex_fan,
    star_of_ray,
    star_subdivision,
)
from polyfan.lattice import AmbientSpace, Cone, GroundOrder, IntVector


def line():
    return Fan.from_cones(AmbientSpace.full(GroundOrder.canonical(1)), [[(1,)], [(-1,)]])


def test_simplex_fan(p2):
    assert p2.rays == ((-1, -1), (0, 1), (1, 0))
    assert p2.maximal_cones == ((0, 1), (0, 2), (1, 2))
    report = fan_validate(p2)
    assert report.passed
    assert report.is_fan and report.is_smooth and report.is_complete


def test_simplex_fan_of_point():
    point = simplex_fan(GroundOrder.canonical(1))
    assert point.dim == 0
    assert point.maximal_cones == ((),)
    assert fan_validate(point).passed


def test_projective_line_is_valid():
    report = fan_validate(line())
    assert report.passed
    assert report.is_complete


def test_overlapping_cones_are_not_a_fan():
    full = AmbientSpace.full(GroundOrder.canonical(2))
    fan = Fan.from_cones(full, [[(1, 0), (0, 1)], [(1, 0), (-1, 2)]])
    report = fan_validate(fan)
    assert not report.passed
    assert report.is_fan is False


def test_quadrant_is_not_complete():
    full = AmbientSpace.full(GroundOrder.canonical(2))
    report = fan_validate(Fan.from_cones(full, [[(1, 0), (0, 1)]]))
    assert report.is_fan
    assert report.is_complete is False
    assert not report.passed


def test_singular_cone_is_flagged():
    full = AmbientSpace.full(GroundOrder.canonical(2))
    fan = Fan.from_cones(full, [[(1, 0), (1, 2)], [(1, 2), (-1, 0)], [(-1, 0), (0, -1)], [(0, -1), (1, 0)]])
    report = fan_validate(fan)
    assert report.is_smooth is False
    assert report.is_simplicial
    assert report.is_complete


def test_star_subdivision(p2):
    ambient = p2.ambient
    subdivided = star_subdivision(p2, Cone(ambient, [(1, 0), (0, 1)]))
    assert len(subdivided.maximal_cones) == 4
    assert (1, 1) in subdivided.rays
    assert fan_validate(subdivided).passed
    assert fan_refines(subdivided, p2)


def test_star_subdivision_along_ray_is_noop(p2):
    assert fan_equal(star_subdivision(p2, Cone(p2.ambient, [(1, 0)])), p2)


def test_star_subdivision_errors(p2):
    with pytest.raises(ConeNotInFan):
        star_subdivision(p2, Cone(p2.ambient, [(1, 0), (1, 1)]))
    with pytest.raises(AmbientMismatch):
        star_subdivision(p2, Cone(AmbientSpace.full(GroundOrder.canonical(2)), [(1, 0)]))


def test_fan_equal_ignores_listing_order():
    ambient = AmbientSpace.full(GroundOrder.canonical(1))
    first = Fan(ambient, [(-1,), (1,)], [[1], [0]])
    second = Fan(ambient, [(1,), (-1,)], [[0], [1]])
    assert fan_equal(first, second)
    assert first.dumps() == second.dumps()


def test_fan_equal_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        fan_equal(line(), simplex_fan(GroundOrder.canonical(2)))


def test_hexagon_refines_projective_plane(hexagon, p2):
    assert len(hexagon.rays) == 6
    assert len(hexagon.maximal_cones) == 6
    assert fan_refines(hexagon, p2)
    assert not fan_refines(p2, hexagon)
    assert fan_refines(p2, p2)


def test_star_of_ray(p2):
    star = star_of_ray(p2, (1, 0, 0))
    assert star.ambient == AmbientSpace.full(GroundOrder(["2"]))
    assert star.rays == ((-1,), (1,))
    assert len(star.maximal_cones) == 2
    assert fan_validate(star).passed


def test_star_of_ray_accepts_int_vector(p2):
    star = star_of_ray(p2, IntVector(p2.ambient, (0, 1)))
    assert len(star.maximal_cones) == 2


def test_star_of_deep_ray(pentagon):
    star = star_of_ray(pentagon, (-1, -1))
    assert len(star.maximal_cones) == 2
    assert fan_validate(star).passed


def test_open_star_subfans(p2):
    sigma_prime, sigma_double_prime = open_star_subfans(p2, (1, 0, 0))
    assert len(sigma_prime.maximal_cones) == 2
    assert sigma_double_prime.maximal_cones == ((0,), (1,))
    assert sigma_double_prime.rays == ((-1, -1), (0, 1))


def test_star_of_missing_ray(p2):
    with pytest.raises(NotARay):
        star_of_ray(p2, (1, 1, 0))
    with pytest.raises(NotARay):
        open_star_subfans(p2, (1, 1, 0))


def test_product_of_fans():
    product = product_of_fans([line(), line()], GroundOrder.canonical(2))
    assert len(product.maximal_cones) == 4
    assert product.ambient == AmbientSpace.full(GroundOrder.canonical(2))
    assert fan_validate(product).passed
    with pytest.raises(ParseError):
        product_of_fans([line()], GroundOrder.canonical(2))


def test_fan_locate(p2):
    assert p2.maximal_cones[fan_locate(p2, (1, 1))] == (1, 2)
    assert fan_locate(p2, (-1, -1)) is not None


def test_fan_serialization(p2):
    assert Fan.loads(p2.dumps()) == p2
    assert p2.to_data()["ambient"]["quotient_by_all_ones"] is True
    with pytest.raises(ParseError):
        Fan(p2.ambient, [(1, 0)], [[0, 1]])
    with pytest.raises(ParseError):
        Fan.loads("{not json")
    with pytest.raises(ParseError):
        Fan.from_data({"rays": []})


def test_fan_queries(p2):
    ray = p2.index_of((1, 0))
    assert p2.rays[ray] == (1, 0)
    assert p2.index_of((2, 0)) == ray
    assert p2.index_of((0, 0)) is None
    assert len(p2.cones_containing(ray)) == 2
    assert p2.has_cone([ray])
    assert not p2.has_cone([0, 1, 2])
    assert len(p2.faces()) == 7
    assert [v.coords for v in p2.ray_vectors()] == list(p2.rays)


def relisted(f):
    """The same fan with its rays listed in reverse."""
    last = len(f.rays) - 1
    return Fan(f.ambient, list(reversed(f.rays)), [[last - i for i in c] for c in f.maximal_cones])


def test_star_subdivisions_along_separate_cones_commute():
    p3 = simplex_fan(GroundOrder.canonical(4))
    first = Cone(p3.ambient, [p3.rays[0], p3.rays[1]])
    second = Cone(p3.ambient, [p3.rays[2], p3.rays[3]])
    one_way = star_subdivision(star_subdivision(p3, first), second)
    other_way = star_subdivision(star_subdivision(p3, second), first)
    assert fan_equal(one_way, other_way)
    assert len(one_way.maximal_cones) == 8


def test_star_subdivisions_inside_one_cone_do_not_commute():
    p3 = simplex_fan(GroundOrder.canonical(4))
    first = Cone(p3.ambient, [p3.rays[0], p3.rays[1]])
    second = Cone(p3.ambient, [p3.rays[1], p3.rays[2]])
    one_way = star_subdivision(star_subdivision(p3, first), second)
    other_way = star_subdivision(star_subdivision(p3, second), first)
    assert fan_refines(one_way, p3) and fan_refines(other_way, p3)
    assert not fan_equal(one_way, other_way)


def test_fan_equal_is_an_equivalence(hexagon):
    copy = relisted(hexagon)
    again = relisted(copy)
    assert fan_equal(hexagon, hexagon)
    assert fan_equal(hexagon, copy) and fan_equal(copy, hexagon)
    assert fan_equal(copy, again) and fan_equal(hexagon, again)


def test_fan_refines_is_a_partial_order(p2, hexagon):
    middle = star_subdivision(p2, Cone(p2.ambient, [p2.rays[1], p2.rays[2]]))
    chain = [hexagon, middle, p2]
    for f in chain:
        assert fan_refines(f, f)
        assert fan_refines(f, relisted(f)) and fan_refines(relisted(f), f)
    assert fan_refines(hexagon, middle) and fan_refines(middle, p2)
    assert fan_refines(hexagon, p2)
    for fine, coarse in [(hexagon, middle), (middle, p2), (hexagon, p2)]:
        assert not fan_refines(coarse, fine)
        assert not fan_equal(fine, coarse)


def test_star_of_ray_has_one_cone_per_cone_through_the_ray(p2, pentagon, hexagon):
    for f in (p2, pentagon, hexagon):
        for i, ray in enumerate(f.rays):
            star = star_of_ray(f, IntVector(f.ambient, ray))
            assert len(star.maximal_cones) == len(f.cones_containing(i))
            assert fan_validate(star).passed

import math

import pytest

from polyfan.buildingset import losev_manin_building_set, path_building_set, validate_building_set
from polyfan.caging import Caging, cages_up_to
from polyfan.enums import OrderPolicy
from polyfan.errors import (
    BadCage,
    ConeNotInFan,
    InvalidIndexSet,
    InvalidTriple,
    NonToricLocus,
    NotARefinement,
    NotConnected,
)
from polyfan.fan import fan_equal, fan_validate
from polyfan.flags import (
    CompatibleTriple,
    blowup_policy_ledger,
    blowup_product_fan,
    check_blowup,
    check_face_closure,
    check_facet_star,
    check_refinement_chain,
    check_splitting,
    check_subdivision_chain,
    check_tlm_blowup,
    delta_I_cone,
    delta_fan,
    enumerate_triples,
    fiber_product_fan,
    fiber_projection,
    identity_over_coarse_chain,
    lower_caging,
    maximal_triples,
    polypermutohedral_fan,
    polystellahedral_fan,
    product_fan,
    refinement_pairs,
    tlm_blowup_fan,
    triple_cone,
)
from polyfan.lattice import GroundOrder
from polyfan.polymatroid import expansion, independence_polytope, perm_rank


def test_blowup_center_triple():
    pi = Caging.from_cage((2, 1))
    t = CompatibleTriple(pi, 0, (), 0, 0b11)
    assert triple_cone(t).generators == ((-1, -1, 0), (0, 0, -1))


def test_positive_orthant_triple():
    pi = Caging.from_cage((2, 1))
    t = CompatibleTriple.pair(pi, 0b111, ())
    assert t.s == 2
    assert t.cone().generators == ((0, 0, 1), (0, 1, 0), (1, 0, 0))


def test_deep_pentagon_triple():
    pi = Caging.from_cage((1, 1))
    t = CompatibleTriple(pi, 0, (0,), 0b01, 0b10)
    assert triple_cone(t).generators == ((-1, -1), (0, -1))


def test_invalid_triples():
    pi = Caging.from_cage((1, 1))
    with pytest.raises(InvalidTriple):
        CompatibleTriple(pi, 0, (), 0b01, 0b01)
    with pytest.raises(InvalidTriple):
        CompatibleTriple(pi, 0b01, (0,), 0b11, 0)
    with pytest.raises(InvalidTriple):
        CompatibleTriple(pi, 0, (0b01, 0b01), 0b11, 0)
    with pytest.raises(InvalidTriple):
        CompatibleTriple(pi, 0b01, (), 0, 0b01)


def test_delta_fan_counts():
    assert len(delta_fan(Caging.from_cage((2, 1)), 0).maximal_cones) == 6
    assert len(delta_fan(Caging.from_cage((1, 1)), 2).maximal_cones) == 5
    assert len(product_fan(Caging.from_cage((1, 1))).maximal_cones) == 4
    with pytest.raises(InvalidTriple):
        delta_fan(Caging.from_cage((1, 1)), 3)


@pytest.mark.parametrize("cage", cages_up_to(3))
def test_product_fan_count(cage):
    fan = product_fan(Caging.from_cage(cage))
    assert len(fan.maximal_cones) == math.prod(a + 1 for a in cage)


@pytest.mark.parametrize("s", [0, 1, 2])
def test_delta_fans_are_smooth_and_complete(s):
    assert fan_validate(delta_fan(Caging.from_cage((2, 1)), s)).passed


@pytest.mark.parametrize("cage", [(1, 1), (2, 1), (1, 1, 1), (2, 2)])
def test_maximal_triples_are_maximal_compatible_triples(cage):
    pi = Caging.from_cage(cage)
    for s in range(len(cage) + 1):
        everything = enumerate_triples(pi, s)
        assert set(maximal_triples(pi, s)) <= set(everything)
        full = {triple_cone(t).generators for t in everything if len(triple_cone(t).generators) == len(pi.source)}
        assert {triple_cone(t).generators for t in maximal_triples(pi, s)} == full


def test_face_closure():
    assert check_face_closure(Caging.from_cage((1, 1)), 1).passed
    assert check_face_closure(Caging.from_cage((2, 1)), 2).passed


def test_polystellahedral_fan():
    pentagon = polystellahedral_fan(Caging.from_cage((1, 1)))
    assert len(pentagon.maximal_cones) == 5
    assert pentagon.rays == ((-1, -1), (-1, 0), (0, -1), (0, 1), (1, 0))
    line = polystellahedral_fan(Caging.from_cage((1,)))
    assert line.rays == ((-1,), (1,))
    pi = Caging.from_cage((2, 1))
    vertices = independence_polytope(expansion(perm_rank(2), pi)).vertices()
    assert len(polystellahedral_fan(pi).maximal_cones) == len(vertices)


def test_polypermutohedral_fan():
    assert len(polypermutohedral_fan(Caging.from_cage((1, 1, 1))).maximal_cones) == 6
    fan = polypermutohedral_fan(Caging.from_cage((2, 1)))
    assert set(fan.rays) == {(1, 0), (0, 1), (1, 1), (-1, -1)}
    assert len(fan.maximal_cones) == 4
    point = polypermutohedral_fan(Caging.from_cage((1,)))
    assert point.dim == 0
    assert point.maximal_cones == ((),)


def test_subdivision_chain():
    report = check_subdivision_chain(Caging.from_cage((1, 1)))
    assert report.passed
    assert report.maximal_cones == [4, 5, 5]
    assert report.rays == [4, 5, 5]
    assert check_subdivision_chain(Caging.from_cage((2, 1)), orders=3, seed=1).passed


def test_blowup_deepest_first():
    for cage in [(1, 1), (2, 1), (1, 1, 1)]:
        pi = Caging.from_cage(cage)
        assert fan_equal(blowup_product_fan(pi), polystellahedral_fan(pi))
        assert check_blowup(pi).passed


def test_blowup_smallest_first():
    pi = Caging.from_cage((1, 1))
    assert fan_equal(blowup_product_fan(pi, OrderPolicy.SMALLEST_FIRST), polystellahedral_fan(pi))
    deep = Caging.from_cage((1, 1, 1))
    with pytest.raises(ConeNotInFan):
        blowup_product_fan(deep, OrderPolicy.SMALLEST_FIRST)
    assert not check_blowup(deep, "smallest_first").passed


def test_blowup_policy_ledger():
    report = blowup_policy_ledger(Caging.from_cage((1, 1, 1)))
    assert report.passed
    outcomes = {entry["policy"]: entry["matches"] for entry in report.policies}
    assert outcomes == {"deepest_first": True, "smallest_first": False}


def test_facet_star():
    report = check_facet_star(Caging.from_cage((1, 1)))
    assert report.passed
    assert report.star_cones == 2
    assert report.sigma_prime_cones == 2
    assert report.sigma_double_prime_cones == 2
    assert report.e_A_is_ray is False
    point = check_facet_star(Caging.from_cage((1,)))
    assert point.passed
    assert point.star_cones == 1


def test_fiber_product_and_projection():
    pi = Caging.from_cage((2, 1))
    assert fiber_projection(pi, (3, 1, 5)) == (2,)
    fiber = fiber_product_fan(pi)
    assert fiber.dim == 1
    assert len(fiber.maximal_cones) == 2


def test_splitting():
    report = check_splitting(Caging.from_cage((2, 1)), losev_manin_building_set(2))
    assert report.passed
    assert report.counts == {"total": 4, "fiber": 2, "base": 2}
    report = check_splitting(Caging.from_cage((1, 2, 1)), path_building_set(3))
    assert report.passed
    assert report.counts.total == 2 * report.counts.base
    pi = Caging.from_cage((3, 2))
    report = check_splitting(pi, losev_manin_building_set(2))
    assert report.passed
    assert report.counts.fiber == len(fiber_product_fan(pi).maximal_cones) == 6


def test_splitting_needs_connected_building_set():
    b = validate_building_set(GroundOrder.canonical(2), [["1"], ["2"]])
    with pytest.raises(NotConnected):
        check_splitting(Caging.from_cage((1, 1)), b)


def test_delta_I_cone():
    assert delta_I_cone((1, 1, 1), [1, 3]).generators == ((1,),)
    assert delta_I_cone((2, 1, 1), [1, 3]).generators == ((0, 1), (1, 0))
    with pytest.raises(NonToricLocus):
        delta_I_cone((1, 1, 1), [1, 2])
    with pytest.raises(InvalidIndexSet):
        delta_I_cone((1, 1, 1), [1, 2, 3])
    with pytest.raises(InvalidIndexSet):
        delta_I_cone((1, 1, 1), [3, 4])


def test_tlm_blowup_fan():
    hexagon = tlm_blowup_fan((1, 1, 1, 1))
    assert len(hexagon.maximal_cones) == 6
    assert fan_equal(hexagon, polypermutohedral_fan(Caging.from_cage((1, 1, 1))))
    fan = tlm_blowup_fan((2, 1, 1))
    assert fan_equal(fan, polypermutohedral_fan(Caging.from_cage((2, 1))))
    assert lower_caging((2, 1, 1)).cage == (2, 1)
    assert lower_caging((2, 3, 1)) == Caging.from_cage((2, 3))
    assert check_tlm_blowup((2, 2, 1)).passed
    with pytest.raises(BadCage):
        tlm_blowup_fan((1,))
    with pytest.raises(BadCage):
        tlm_blowup_fan((1, 0))


def test_refinement_chain():
    ground = GroundOrder.canonical(3)
    identity = Caging.identity(ground)
    coarse = Caging.from_partition(ground, [0b011, 0b100])
    report = check_refinement_chain(identity, coarse)
    assert report.passed
    assert report.subdivisions == 2
    assert check_refinement_chain(coarse, coarse).subdivisions == 0


def test_refinement_chain_rejects_incomparable():
    ground = GroundOrder.canonical(3)
    first = Caging.from_partition(ground, [0b011, 0b100])
    second = Caging.from_partition(ground, [0b001, 0b110])
    with pytest.raises(NotARefinement):
        check_refinement_chain(first, second)


def test_identity_over_coarse_chain():
    report = identity_over_coarse_chain((2, 1, 1))
    assert report.passed
    assert report.steps == 1
    assert identity_over_coarse_chain((2, 2, 1)).steps == 2


def test_refinement_pairs():
    assert len(refinement_pairs(2)) == 3
    assert all(pi.refines(other) for pi, other in refinement_pairs(3))

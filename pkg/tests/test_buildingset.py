import random

import pytest

from polyfan import helpers
from polyfan.buildingset import (
    BuildingSet,
    NestedSet,
    PiPair,
    boolean_building_set,
    check_nested_construction,
    connected_building_sets,
    enumerate_nested_sets,
    enumerate_pi_pairs,
    graphical_building_set,
    is_nested,
    losev_manin_building_set,
    nested_fan,
    nested_fan_by_subdivision,
    path_building_set,
    pi_pair_cone,
    polystellahedral_building_set,
    pullback_building_set,
    shuffled_member_order,
    star_building_set,
    subdivision_members,
    validate_building_set,
)
from polyfan.caging import Caging
from polyfan.errors import (
    DisconnectedGraph,
    GroundMismatch,
    InvalidIndexSet,
    MissingSingleton,
    NotConnected,
    UnionViolation,
)
from polyfan.fan import fan_equal, fan_validate, simplex_fan
from polyfan.lattice import GroundOrder


def test_boolean_building_set():
    assert len(boolean_building_set(GroundOrder.canonical(3))) == 7
    assert boolean_building_set(GroundOrder.canonical(2)).describe() == "{1} {2} {1,2}"
    assert boolean_building_set(GroundOrder.canonical(1)).describe() == "{1}"
    assert boolean_building_set(GroundOrder.canonical(3)).connected


def test_validate_building_set_errors():
    ground = GroundOrder.canonical(3)
    with pytest.raises(UnionViolation):
        validate_building_set(ground, [["1"], ["2"], ["3"], ["1", "2"], ["2", "3"]])
    with pytest.raises(MissingSingleton):
        validate_building_set(GroundOrder.canonical(2), [["1"]])


def test_disconnected_building_set():
    b = validate_building_set(GroundOrder.canonical(2), [["1"], ["2"]])
    assert not b.connected
    assert b.maximal() == [0b01, 0b10]
    with pytest.raises(NotConnected):
        nested_fan(b)
    with pytest.raises(NotConnected):
        enumerate_nested_sets(b)


def test_graphical_building_sets():
    complete = graphical_building_set([("1", "2"), ("2", "3"), ("1", "3")])
    assert complete == losev_manin_building_set(3)
    assert path_building_set(3).describe() == "{1} {2} {3} {1,2} {2,3} {1,2,3}"
    assert star_building_set(3).describe() == "{1} {2} {3} {1,2} {1,3} {1,2,3}"
    with pytest.raises(DisconnectedGraph):
        graphical_building_set([("1", "2")], GroundOrder.canonical(3))


def test_pullback_building_set():
    b = losev_manin_building_set(2)
    pulled = pullback_building_set(b, Caging.from_cage((2, 1)))
    assert pulled.describe() == "{1} {2} {3} {1,2} {1,2,3}"
    ground = GroundOrder.canonical(3)
    assert pullback_building_set(path_building_set(3), Caging.identity(ground)) == path_building_set(3)
    with pytest.raises(GroundMismatch):
        pullback_building_set(b, Caging.from_cage((1, 1, 1)))


def test_factors():
    b = path_building_set(3)
    assert b.factors(0b101) == [0b001, 0b100]
    assert b.proper() == [0b001, 0b010, 0b100, 0b011, 0b110]


def test_enumerate_nested_sets():
    assert len(enumerate_nested_sets(losev_manin_building_set(3))) == 13
    nested = enumerate_nested_sets(losev_manin_building_set(2))
    assert sorted(sorted(n.members) for n in nested) == [[], [1], [2]]
    assert [len(n) for n in enumerate_nested_sets(losev_manin_building_set(1))] == [0]


def test_is_nested():
    b = losev_manin_building_set(2)
    assert is_nested(b, [0b01])
    assert not is_nested(b, [0b01, 0b10])
    assert not is_nested(b, [0b11])
    with pytest.raises(InvalidIndexSet):
        NestedSet(b, [0b01, 0b10])


def test_nested_fan():
    hexagon = nested_fan(losev_manin_building_set(3))
    assert len(hexagon.rays) == 6
    assert len(hexagon.maximal_cones) == 6
    assert fan_validate(hexagon).passed
    assert fan_equal(nested_fan(losev_manin_building_set(2)), simplex_fan(GroundOrder.canonical(2)))


def test_nested_fan_by_subdivision():
    for b in (losev_manin_building_set(3), path_building_set(3), star_building_set(3)):
        assert fan_equal(nested_fan_by_subdivision(b), nested_fan(b))
    ground = GroundOrder.canonical(3)
    no_extra = BuildingSet(ground, [1, 2, 4, 7])
    assert fan_equal(nested_fan_by_subdivision(no_extra), simplex_fan(ground))
    pulled = pullback_building_set(losev_manin_building_set(2), Caging.from_cage((2, 1)))
    fan = nested_fan_by_subdivision(pulled)
    assert len(fan.maximal_cones) == 4
    assert fan_equal(fan, nested_fan(pulled))


def test_nested_fan_by_subdivision_in_any_order():
    rng = random.Random(11)
    for b in connected_building_sets(3):
        direct = nested_fan(b)
        for _ in range(4):
            order = shuffled_member_order(subdivision_members(b), rng)
            assert fan_equal(nested_fan_by_subdivision(b, order), direct)
    b = losev_manin_building_set(3)
    assert fan_equal(nested_fan_by_subdivision(b, [6, 3, 5]), nested_fan(b))


def test_shuffled_member_order_puts_supersets_first():
    members = subdivision_members(losev_manin_building_set(4))
    order = shuffled_member_order(members, random.Random(3))
    assert sorted(order) == sorted(members)
    for k, m in enumerate(order):
        assert not any(m != o and m & o == m for o in order[k + 1 :])


def test_subdivision_order_is_checked():
    b = losev_manin_building_set(4)
    members = subdivision_members(b)
    with pytest.raises(InvalidIndexSet):
        nested_fan_by_subdivision(b, sorted(members, key=helpers.popcount))
    with pytest.raises(InvalidIndexSet):
        nested_fan_by_subdivision(b, members[:-1])


@pytest.mark.slow
def test_nested_construction_with_shuffled_orders():
    for b in connected_building_sets(4):
        assert check_nested_construction(b, orders=3, seed=5).passed


def test_enumerate_pi_pairs():
    pi = Caging.from_cage((2, 1))
    pairs = enumerate_pi_pairs(pi, losev_manin_building_set(2))
    assert len(pairs) == 9
    maximal = [p for p in pairs if helpers.popcount(p.I) == 1 and len(p.N) == 1]
    assert len(maximal) == 4


def test_enumerate_pi_pairs_identity():
    ground = GroundOrder.canonical(3)
    b = losev_manin_building_set(3)
    pairs = enumerate_pi_pairs(Caging.identity(ground), b)
    assert all(p.I == 0 for p in pairs)
    assert len(pairs) == len(enumerate_nested_sets(b))


def test_pi_pair_rejects_full_fiber():
    pi = Caging.from_cage((2, 1))
    empty = enumerate_nested_sets(losev_manin_building_set(2))[0]
    with pytest.raises(InvalidIndexSet):
        PiPair(pi, 0b011, empty)


def test_pi_pair_cone():
    pi = Caging.from_cage((2, 1))
    b = losev_manin_building_set(2)
    empty = NestedSet(b, [])
    assert pi_pair_cone(PiPair(pi, 0, empty)).generators == ()
    cone = pi_pair_cone(PiPair(pi, 0b001, NestedSet(b, [0b01])))
    assert cone.generators == ((1, 0), (1, 1))
    cone = pi_pair_cone(PiPair(pi, 0b010, NestedSet(b, [0b10])))
    assert cone.generators == ((-1, -1), (0, 1))


def test_connected_building_sets():
    assert len(connected_building_sets(1)) == 1
    assert len(connected_building_sets(2)) == 1
    assert len(connected_building_sets(3)) == 8
    for b in connected_building_sets(3):
        assert b.connected
        assert check_nested_construction(b).passed


def test_polystellahedral_building_set():
    b = polystellahedral_building_set(2)
    assert b.connected
    assert len(b) == 6
    assert b.describe() == "{0} {1} {2} {0,1} {0,2} {0,1,2}"
    assert fan_validate(nested_fan(b)).passed
    assert len(nested_fan(b).rays) == 5
    assert len(nested_fan(b).maximal_cones) == 5


def test_serialization():
    b = path_building_set(3)
    assert b.to_data()["members"][-1] == ["1", "2", "3"]
    assert BuildingSet.from_data(b.to_data()) == b

import pytest

from polyfan.caging import Caging, cage_spec, cages_up_to, set_partitions
from polyfan.errors import BadCage, GroundMismatch, ParseError
from polyfan.lattice import GroundOrder


def test_from_cage():
    pi = Caging.from_cage((2, 1))
    assert pi.fibers() == [0b011, 0b100]
    assert pi.cage == (2, 1)
    assert pi.uname == "2,1"
    assert pi.describe() == "{1,2} {3}"
    assert pi.source == GroundOrder.canonical(3)
    assert pi.target == GroundOrder.canonical(2)


def test_preimage_image_saturated():
    pi = Caging.from_cage((2, 1))
    assert pi.preimage(0b10) == 0b100
    assert pi.preimage(0b11) == 0b111
    assert pi.image(0b011) == 0b01
    assert pi.image(0b101) == 0b11
    assert pi.saturated(0b011) == 0b01
    assert pi.saturated(0b001) == 0


def test_bad_cages():
    with pytest.raises(BadCage):
        Caging.from_cage(())
    with pytest.raises(BadCage):
        Caging.from_cage((0, 1))
    with pytest.raises(ParseError):
        Caging.from_spec("2,x")
    with pytest.raises(BadCage):
        Caging(GroundOrder.canonical(2), GroundOrder.canonical(2), [0, 0])


def test_from_spec():
    assert Caging.from_spec("2,2,1") == Caging.from_cage((2, 2, 1))
    assert cage_spec((2, 2, 1)) == "2,2,1"


def test_identity():
    ground = GroundOrder.canonical(3)
    assert Caging.identity(ground).is_identity()
    assert not Caging.from_cage((2, 1)).is_identity()


def test_from_partition_keeps_block_order():
    pi = Caging.from_partition(GroundOrder.canonical(3), [0b100, 0b011])
    assert pi.cage == (1, 2)
    assert pi.describe() == "{3} {1,2}"
    with pytest.raises(BadCage):
        Caging.from_partition(GroundOrder.canonical(3), [0b001])


def test_refines():
    ground = GroundOrder.canonical(3)
    identity = Caging.identity(ground)
    coarse = Caging.from_cage((2, 1))
    assert identity.refines(coarse)
    assert not coarse.refines(identity)
    assert coarse.refines(coarse)
    with pytest.raises(GroundMismatch):
        coarse.refines(Caging.from_cage((1, 1)))


def test_restrict():
    pi = Caging.from_cage((2, 1, 3))
    restricted = pi.restrict(0b101)
    assert restricted.cage == (2, 3)
    assert list(restricted.source) == ["1", "2", "4", "5", "6"]
    assert list(restricted.target) == ["1", "3"]


def test_serialization():
    pi = Caging.from_cage((2, 1))
    assert pi.to_data()["map"] == {"1": "1", "2": "1", "3": "2"}
    assert Caging.from_data(pi.to_data()) == pi
    assert Caging.loads(pi.dumps()) == pi


def test_set_partitions():
    assert len(set_partitions(3)) == 5
    assert len(set_partitions(4)) == 15
    assert [0b011, 0b100] in set_partitions(3)


def test_cages_up_to():
    assert cages_up_to(3) == [(1,), (2,), (1, 1), (3,), (2, 1), (1, 1, 1)]
    assert len(cages_up_to(5)) == 18

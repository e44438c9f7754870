import pytest

from polyfan.errors import DependentGenerators, ParseError, PolyfanError, ZeroVector
from polyfan.lattice import (
    AmbientSpace,
    Cone,
    GroundOrder,
    IntVector,
    cone_is_smooth,
    extended_gcd,
    is_unimodular,
    primitive_vector,
    rank,
    unimodular_reducer,
)


def test_ground_order():
    ground = GroundOrder(["a", "b", "c"])
    assert ground.mask(["a", "c"]) == 0b101
    assert ground.labels(0b110) == ["b", "c"]
    assert ground.full_mask == 7
    assert ground.without(1) == GroundOrder(["a", "c"])
    assert GroundOrder.canonical(2) == GroundOrder(["1", "2"])
    with pytest.raises(ParseError):
        GroundOrder(["a", "a"])
    with pytest.raises(ParseError):
        GroundOrder(["a,b", "c"])
    with pytest.raises(ParseError):
        GroundOrder(["", "c"])
    with pytest.raises(ParseError):
        ground.mask(["z"])


def test_quotient_needs_ground():
    with pytest.raises(PolyfanError):
        AmbientSpace.quotient([])


def test_reduce_and_lift():
    quotient = AmbientSpace.quotient(GroundOrder.canonical(3))
    assert quotient.dim == 2
    assert quotient.reduce((3, 1, 2)) == (1, -1)
    assert quotient.lift((1, -1)) == (1, -1, 0)
    assert quotient.indicator(0b100) == (-1, -1)
    assert IntVector.from_raw(quotient, (2, 2, 2)).is_zero()
    with pytest.raises(ParseError):
        quotient.reduce((1, 2))


def test_ambient_roundtrip():
    quotient = AmbientSpace.quotient(GroundOrder.canonical(2))
    assert quotient.to_data() == {"ground": ["1", "2"], "quotient_by_all_ones": True}
    assert AmbientSpace.from_data(quotient.to_data()) == quotient
    assert AmbientSpace.full(GroundOrder.canonical(2)) != quotient


def test_primitive_vector():
    full = AmbientSpace.full(GroundOrder.canonical(3))
    assert primitive_vector((2, 4, 6), full).coords == (1, 2, 3)
    quotient = AmbientSpace.quotient(GroundOrder.canonical(3))
    assert primitive_vector((2, 1, 1), quotient).coords == (1, 0)
    with pytest.raises(ZeroVector):
        primitive_vector((1, 1, 1), quotient)
    with pytest.raises(ZeroVector):
        primitive_vector((0, 0, 0), full)


def test_int_vector_arithmetic():
    full = AmbientSpace.full(GroundOrder.canonical(2))
    u = IntVector(full, (1, 2))
    v = IntVector(full, (3, -1))
    assert (u + v).coords == (4, 1)
    assert (u - v).coords == (-2, 3)
    assert (-u).coords == (-1, -2)
    assert (2 * u).coords == (2, 4)
    assert (u * 3).primitive() == u
    with pytest.raises(ParseError):
        IntVector(full, (1, 2, 3))


def test_rank_and_unimodular():
    assert rank(((1, 0), (0, 1))) == 2
    assert rank(((1, 2), (2, 4))) == 1
    assert is_unimodular(((1, 0), (1, 1)))
    assert not is_unimodular(((1, 0), (1, 2)))
    assert is_unimodular(())


def test_cone_smoothness():
    full = AmbientSpace.full(GroundOrder.canonical(2))
    assert not cone_is_smooth(Cone(full, [(1, 0), (1, 2)]))
    assert cone_is_smooth(Cone(full, [(1, 0), (1, 1)]))
    assert cone_is_smooth(Cone(full))


def test_cone_generators_are_primitive_and_sorted():
    full = AmbientSpace.full(GroundOrder.canonical(2))
    cone = Cone(full, [(0, 3), (2, 0)])
    assert cone.generators == ((0, 1), (1, 0))
    assert cone.dim == 2
    assert cone.interior_point() == (1, 1)
    assert Cone(full, [(1, 0)]).is_face_of(cone)
    assert len(cone.faces()) == 4


def test_cone_rejects_dependent_generators():
    full = AmbientSpace.full(GroundOrder.canonical(2))
    with pytest.raises(DependentGenerators):
        Cone(full, [(1, 0), (0, 1), (1, 1)])
    with pytest.raises(ParseError):
        Cone(full, [(1, 0, 0)])


def test_cone_contains():
    full = AmbientSpace.full(GroundOrder.canonical(2))
    cone = Cone(full, [(1, 0), (1, 2)])
    assert cone.contains((2, 1))
    assert cone.contains((1, 0))
    assert not cone.contains((0, 1))
    assert cone.frame.contains_in_interior((2, 1))
    assert not cone.frame.contains_in_interior((1, 0))


def test_extended_gcd():
    g, x, y = extended_gcd(12, 18)
    assert g == 6
    assert 12 * x + 18 * y == 6
    assert extended_gcd(-4, 6)[0] == 2


def test_unimodular_reducer():
    rho = (2, 3, -5)
    matrix = unimodular_reducer(rho)
    image = [sum(a * b for a, b in zip(row, rho)) for row in matrix]
    assert image == [1, 0, 0]
    assert is_unimodular(tuple(tuple(row) for row in matrix))
    with pytest.raises(ZeroVector):
        unimodular_reducer((2, 4))

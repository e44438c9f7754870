from fractions import Fraction

import pytest

from polyfan.errors import NotInDomain, ParseError
from polyfan.weights import (
    WeightVector,
    in_fm_domain,
    in_toric_domain,
    is_losev_manin,
    predicate_signature,
    toric_building_indices,
)


def test_weight_vector_parsing():
    w = WeightVector.from_spec("0.6,1/3,1")
    assert w.weights == (Fraction(3, 5), Fraction(1, 3), Fraction(1))
    assert len(w) == 3
    assert w.total([0, 1]) == Fraction(14, 15)
    assert WeightVector(["1/2", 1]) == WeightVector([Fraction(1, 2), 1])
    with pytest.raises(ParseError):
        WeightVector.from_spec("a,b")
    with pytest.raises(ParseError):
        WeightVector([None])


def test_domains():
    assert in_fm_domain(WeightVector([1, 1, 1]))
    assert not in_fm_domain(WeightVector([0, 1, 1]))
    assert not in_fm_domain(WeightVector([2, 1, 1]))
    assert in_toric_domain(WeightVector.from_spec("0.6,0.6,0.6"))
    assert not in_toric_domain(WeightVector.from_spec("0.2,0.2,0.2"))


def test_losev_manin_weights():
    w = WeightVector.from_spec("1/3,1/3,1/3,1")
    assert is_losev_manin(w)
    result = toric_building_indices(w)
    assert result.losev_manin
    assert result.indices == [(1, 4), (2, 4), (3, 4), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
    assert all(4 in I for I in result.indices)


def test_heavy_weights():
    result = toric_building_indices(WeightVector([1, 1, 1]))
    assert result.indices == [(1, 2), (1, 3), (2, 3)]
    assert not result.losev_manin
    assert len(toric_building_indices(WeightVector([1, 1, 1, 1])).indices) == 10


def test_equal_weights():
    result = toric_building_indices(WeightVector.from_spec("0.6,0.6,0.6"), 3)
    assert result.indices == [(1, 2), (1, 3), (2, 3)]


def test_outside_domain():
    with pytest.raises(NotInDomain):
        toric_building_indices(WeightVector.from_spec("0.2,0.2,0.2"))
    with pytest.raises(NotInDomain):
        toric_building_indices(WeightVector([1, 1, 1]), 4)


def test_predicate_signature():
    assert predicate_signature(WeightVector([1, 1, 1])) == (True, True, True)
    light = WeightVector.from_spec("1/3,1/3,1")
    assert predicate_signature(light) == (False, True, True)

#!/usr/bin/env python
#
# Copyright (c) 2024, Ryan Galloway (ryan@rsgalloway.com)
#
# Redistribution and use in source and binary forms, with or without
# modification, are permitted provided that the following conditions are met:
#
#  - Redistributions of source code must retain the above copyright notice,
#    this list of conditions and the following disclaimer.
#
#  - Redistributions in binary form must reproduce the above copyright notice,
#    this list of conditions and the following disclaimer in the documentation
#    and/or other materials provided with the distribution.
#
#  - Neither the name of the software nor the names of its contributors
#    may be used to endorse or promote products derived from this software
#    without specific prior written permission.
#
# THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS "AS IS"
# AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT LIMITED TO, THE
# IMPLIED WARRANTIES OF MERCHANTABILITY AND FITNESS FOR A PARTICULAR PURPOSE
# ARE DISCLAIMED. IN NO EVENT SHALL THE COPYRIGHT HOLDER OR CONTRIBUTORS BE
# LIABLE FOR ANY DIRECT, INDIRECT, INCIDENTAL, SPECIAL, EXEMPLARY, OR
# CONSEQUENTIAL DAMAGES (INCLUDING, BUT NOT LIMITED TO, PROCUREMENT OF
# SUBSTITUTE GOODS OR SERVICES; LOSS OF USE, DATA, OR PROFITS; OR BUSINESS
# INTERRUPTION) HOWEVER CAUSED AND ON ANY THEORY OF LIABILITY, WHETHER IN
# CONTRACT, STRICT LIABILITY, OR TORT (INCLUDING NEGLIGENCE OR OTHERWISE)
# ARISING IN ANY WAY OUT OF THE USE OF THIS SOFTWARE, EVEN IF ADVISED OF THE
# POSSIBILITY OF SUCH DAMAGE.
#

__doc__ = """
Contains the ground orders, ambient spaces, integer vectors and simplicial
cones that every fan is built from, plus the exact linear algebra they use.

Vectors are stored in canonical coordinates of the effective lattice: ℤ^n in
full mode, and ℤ^n/ℤe for quotient mode, where the class of v is represented
by v - v_last * (1, ..., 1) with the last coordinate dropped.
"""

import functools
import itertools
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy import ZZ, Matrix
from sympy.matrices.normalforms import invariant_factors

from polyfan import config, helpers
from polyfan.enums import Mode
from polyfan.errors import (
    DependentGenerators,
    ParseError,
    PolyfanError,
    ZeroVector,
)

Coords = Tuple[int, ...]


class GroundOrder(object):
    """Ordered list of distinct element labels."""

    __slots__ = ("elements", "index")

    def __init__(self, elements: Iterable):
        elements = tuple(str(e) for e in elements)
        if len(set(elements)) != len(elements):
            raise ParseError(f"duplicate labels in ground {list(elements)}")
        # labels are comma-joined in rank tables and cage specs
        for label in elements:
            if not label or "," in label:
                raise ParseError(f"label {label!r} must be nonempty and free of commas")
        if len(elements) > config.POLYFAN_MAX_GROUND:
            raise PolyfanError(
                f"ground of size {len(elements)} exceeds {config.POLYFAN_MAX_GROUND} elements"
            )
        self.elements = elements
        self.index = {label: i for i, label in enumerate(elements)}

    @classmethod
    def canonical(cls, n: int, start: int = 1) -> "GroundOrder":
        """Returns the ground ("1", ..., "n")."""
        return cls(str(i) for i in range(start, start + n))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __eq__(self, other):
        return isinstance(other, GroundOrder) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return '<GroundOrder "{0}">'.format(",".join(self.elements))

    @property
    def full_mask(self) -> int:
        return helpers.full_mask(len(self.elements))

    def mask(self, labels: Iterable) -> int:
        """Returns the bitmask of a collection of labels."""
        try:
            return helpers.mask_of(self.index[str(label)] for label in labels)
        except KeyError as err:
            raise ParseError(f"unknown label {err.args[0]!r} for {self}")

    def labels(self, mask: int) -> List[str]:
        return [self.elements[i] for i in helpers.bits(mask)]

    def without(self, position: int) -> "GroundOrder":
        return GroundOrder(e for i, e in enumerate(self.elements) if i != position)


class AmbientSpace(object):
    """ℝ^ground, or ℝ^ground/ℝe_ground in quotient mode."""

    __slots__ = ("ground", "mode")

    def __init__(self, ground: GroundOrder, mode: Mode = Mode.FULL):
        if not isinstance(ground, GroundOrder):
            ground = GroundOrder(ground)
        mode = Mode(mode)
        if mode == Mode.QUOTIENT and len(ground) == 0:
            raise PolyfanError("quotient ambient needs a nonempty ground")
        self.ground = ground
        self.mode = mode

    @classmethod
    def full(cls, ground) -> "AmbientSpace":
        return cls(ground, Mode.FULL)

    @classmethod
    def quotient(cls, ground) -> "AmbientSpace":
        return cls(ground, Mode.QUOTIENT)

    @property
    def is_quotient(self) -> bool:
        return self.mode == Mode.QUOTIENT

    @property
    def dim(self) -> int:
        """Rank of the effective lattice."""
        return len(self.ground) - (1 if self.is_quotient else 0)

    def __eq__(self, other):
        return (
            isinstance(other, AmbientSpace)
            and self.ground == other.ground
            and self.mode == other.mode
        )

    def __hash__(self):
        return hash((self.ground, self.mode))

    def __repr__(self):
        if self.is_quotient:
            return '<AmbientSpace "R^{{{0}}}/R(1,...,1)">'.format(",".join(self.ground))
        return '<AmbientSpace "R^{{{0}}}">'.format(",".join(self.ground))

    def to_data(self) -> dict:
        return {"ground": list(self.ground), "quotient_by_all_ones": self.is_quotient}

    @classmethod
    def from_data(cls, data: dict) -> "AmbientSpace":
        try:
            mode = Mode.QUOTIENT if data["quotient_by_all_ones"] else Mode.FULL
            return cls(GroundOrder(data["ground"]), mode)
        except (KeyError, TypeError) as err:
            raise ParseError(f"malformed ambient: {err}")

    def reduce(self, raw: Sequence[int]) -> Coords:
        """
        Returns canonical coordinates of a raw vector with one entry per
        ground element.
        """
        if len(raw) != len(self.ground):
            raise ParseError(f"expected {len(self.ground)} coordinates, got {len(raw)}")
        raw = helpers.checked_vector(raw)
        if not self.is_quotient:
            return raw
        last = raw[-1]
        return helpers.checked_vector(x - last for x in raw[:-1])

    def lift(self, coords: Sequence[int]) -> Coords:
        """Returns the raw representative with last coordinate 0 in quotient mode."""
        if self.is_quotient:
            return tuple(coords) + (0,)
        return tuple(coords)

    def indicator(self, mask: int) -> Coords:
        """Returns canonical coordinates of e_S (ē_S in quotient mode)."""
        n = len(self.ground)
        return self.reduce([1 if mask >> i & 1 else 0 for i in range(n)])

    def unit(self, position: int) -> Coords:
        return self.indicator(1 << position)


class IntVector(object):
    """Integer vector in canonical coordinates of an ambient space."""

    __slots__ = ("ambient", "coords")

    def __init__(self, ambient: AmbientSpace, coords: Sequence[int]):
        coords = helpers.checked_vector(coords)
        if len(coords) != ambient.dim:
            raise ParseError(f"expected {ambient.dim} canonical coordinates, got {len(coords)}")
        self.ambient = ambient
        self.coords = coords

    @classmethod
    def from_raw(cls, ambient: AmbientSpace, raw: Sequence[int]) -> "IntVector":
        return cls(ambient, ambient.reduce(raw))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        return (
            isinstance(other, IntVector)
            and self.ambient == other.ambient
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other):
        return self.coords < other.coords

    def __add__(self, other):
        return IntVector(self.ambient, (a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return IntVector(self.ambient, (a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return IntVector(self.ambient, (-a for a in self.coords))

    def __mul__(self, k: int):
        return IntVector(self.ambient, (k * a for a in self.coords))

    __rmul__ = __mul__

    def __repr__(self):
        return "<IntVector {0}>".format(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def lift(self) -> Coords:
        return self.ambient.lift(self.coords)

    def primitive(self) -> "IntVector":
        return IntVector(self.ambient, primitive_coords(self.coords))


def primitive_coords(coords: Sequence[int]) -> Coords:
    """Divides canonical coordinates by their gcd."""
    g = helpers.gcd_all(coords)
    if g == 0:
        raise ZeroVector(f"{tuple(coords)} is zero in the effective lattice")
    return tuple(c // g for c in coords)


def primitive_vector(v, ambient: AmbientSpace) -> IntVector:
    """
    Returns the primitive generator of the ray through v.

    :param v: raw vector with one entry per ground element, or an IntVector
    :param ambient: the ambient space of the result
    :raise: ZeroVector if v is zero in the effective lattice
    :raise: Overflow on arithmetic overflow
    """
    if isinstance(v, IntVector):
        coords = v.coords
    else:
        coords = ambient.reduce(v)
    return IntVector(ambient, primitive_coords(coords))


# exact linear algebra -------------------------------------------------------


@functools.lru_cache(maxsize=None)
def rank(rows: Tuple[Coords, ...]) -> int:
    """Returns the rank of a tuple of integer rows."""
    if not rows or not rows[0]:
        return 0
    return Matrix(rows).rank()


def is_independent(rows: Sequence[Coords]) -> bool:
    return rank(tuple(rows)) == len(rows)


@functools.lru_cache(maxsize=None)
def is_unimodular(rows: Tuple[Coords, ...]) -> bool:
    """
    Returns True if independent integer rows extend to a lattice basis, i.e.
    all Smith invariant factors are 1.
    """
    if not rows:
        return True
    if not is_independent(rows):
        return False
    factors = invariant_factors(Matrix(rows), domain=ZZ)
    return all(abs(int(f)) == 1 for f in factors)


@functools.lru_cache(maxsize=None)
def nullspace(columns: Tuple[Coords, ...]) -> List[Tuple]:
    """Returns an exact rational basis of {x : Σ x_j columns[j] = 0}."""
    matrix = Matrix(columns).T
    return [tuple(v) for v in matrix.nullspace()]


class ConeFrame(object):
    """
    Exact coordinates with respect to independent generators. For a vector v
    in their span, numerators(v)[i] / det is the coefficient of generator i.
    """

    __slots__ = ("generators", "pivots", "adjugate", "det")

    def __init__(self, generators: Tuple[Coords, ...]):
        self.generators = generators
        k = len(generators)
        if k == 0:
            self.pivots, self.adjugate, self.det = (), (), 1
            return
        matrix = Matrix(generators)
        _, pivots = matrix.rref()
        if len(pivots) < k:
            raise DependentGenerators(generators)
        square = matrix.extract(list(range(k)), list(pivots))
        self.pivots = tuple(pivots)
        self.det = int(square.det())
        adjugate = square.adjugate()
        self.adjugate = tuple(tuple(int(adjugate[i, j]) for j in range(k)) for i in range(k))

    def numerators(self, v: Sequence[int]) -> Optional[Tuple[int, ...]]:
        """Returns det times the coefficients of v, or None if v is outside the span."""
        k = len(self.generators)
        if k == 0:
            return () if not any(v) else None
        vp = [v[p] for p in self.pivots]
        nums = tuple(sum(vp[j] * self.adjugate[j][i] for j in range(k)) for i in range(k))
        for axis in range(len(v)):
            total = sum(nums[i] * self.generators[i][axis] for i in range(k))
            if total != self.det * v[axis]:
                return None
        return nums

    def signs(self, v: Sequence[int]) -> Optional[Tuple[int, ...]]:
        """Returns the signs (-1, 0, 1) of the coefficients of v."""
        nums = self.numerators(v)
        if nums is None:
            return None
        s = 1 if self.det > 0 else -1
        return tuple((n * s > 0) - (n * s < 0) for n in nums)

    def contains(self, v: Sequence[int]) -> bool:
        signs = self.signs(v)
        return signs is not None and all(x >= 0 for x in signs)

    def contains_in_interior(self, v: Sequence[int]) -> bool:
        """True if v lies in the relative interior of the cone."""
        signs = self.signs(v)
        return signs is not None and all(x > 0 for x in signs)


@functools.lru_cache(maxsize=None)
def frame(generators: Tuple[Coords, ...]) -> ConeFrame:
    return ConeFrame(generators)


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Returns (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def unimodular_reducer(rho: Sequence[int]) -> List[List[int]]:
    """
    Returns a unimodular integer matrix U with U rho = e_0, for primitive rho.

    :raise: ZeroVector if rho is not primitive
    """
    d = len(rho)
    if helpers.gcd_all(rho) != 1:
        raise ZeroVector(f"{tuple(rho)} is not primitive")
    matrix = [[int(i == j) for j in range(d)] for i in range(d)]
    r = list(rho)
    for i in range(1, d):
        a, b = r[0], r[i]
        if b == 0:
            continue
        g, x, y = extended_gcd(a, b)
        row0 = [x * p + y * q for p, q in zip(matrix[0], matrix[i])]
        rowi = [(-b // g) * p + (a // g) * q for p, q in zip(matrix[0], matrix[i])]
        matrix[0], matrix[i] = row0, rowi
        r[0], r[i] = g, 0
    if r[0] == -1:
        matrix[0] = [-p for p in matrix[0]]
    return matrix


# cones ----------------------------------------------------------------------


class Cone(object):
    """
    Simplicial rational cone given by primitive, linearly independent
    generators, stored sorted. The zero cone has no generators.
    """

    __slots__ = ("ambient", "generators")

    def __init__(self, ambient: AmbientSpace, generators: Iterable = ()):
        gens = set()
        for g in generators:
            coords = g.coords if isinstance(g, IntVector) else tuple(g)
            if len(coords) != ambient.dim:
                raise ParseError(f"generator {coords} has wrong length for {ambient}")
            gens.add(primitive_coords(helpers.checked_vector(coords)))
        gens = tuple(sorted(gens))
        if not is_independent(gens):
            raise DependentGenerators(gens)
        self.ambient = ambient
        self.generators = gens

    def __eq__(self, other):
        return (
            isinstance(other, Cone)
            and self.ambient == other.ambient
            and self.generators == other.generators
        )

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return '<Cone "{0}">'.format(",".join(str(g) for g in self.generators))

    def __len__(self):
        return len(self.generators)

    @property
    def dim(self) -> int:
        return len(self.generators)

    def vectors(self) -> List[IntVector]:
        return [IntVector(self.ambient, g) for g in self.generators]

    @property
    def frame(self) -> ConeFrame:
        return frame(self.generators)

    def is_smooth(self) -> bool:
        return is_unimodular(self.generators)

    def interior_point(self) -> Coords:
        """Returns the sum of the generators."""
        return tuple(sum(col) for col in zip(*self.generators)) or (0,) * self.ambient.dim

    def contains(self, v) -> bool:
        coords = v.coords if isinstance(v, IntVector) else tuple(v)
        return self.frame.contains(coords)

    def faces(self) -> List["Cone"]:
        result = []
        for k in range(len(self.generators) + 1):
            for subset in itertools.combinations(self.generators, k):
                result.append(Cone(self.ambient, subset))
        return result

    def is_face_of(self, other: "Cone") -> bool:
        return set(self.generators) <= set(other.generators)


def cone_is_smooth(c: Cone) -> bool:
    """Returns True if the generators of c extend to a basis of the lattice."""
    return c.is_smooth()

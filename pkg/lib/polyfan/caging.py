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
Contains the Caging class, a surjection π: A → E recorded by its fibers.
"""

from typing import Iterable, List, Sequence, Tuple

from polyfan import helpers
from polyfan.base import Entity
from polyfan.errors import BadCage, GroundMismatch, ParseError
from polyfan.lattice import GroundOrder


class Caging(Entity):
    """
    Surjection π: A → E. The cage is the tuple of fiber sizes in target
    order; fibers need not be consecutive or sorted by size.

        >>> pi = Caging.from_cage((2, 1))
        >>> pi.fibers()
        [3, 4]
        >>> pi.cage
        (2, 1)
    """

    entity_type = "Caging"
    fields = ["map", "source", "target"]

    def __init__(self, source: GroundOrder, target: GroundOrder, mapping: Sequence[int]):
        """
        :param source: ground order of A
        :param target: ground order of E
        :param mapping: target position of each source position
        """
        mapping = tuple(int(j) for j in mapping)
        if len(mapping) != len(source):
            raise BadCage(f"map covers {len(mapping)} of {len(source)} source elements")
        if any(not 0 <= j < len(target) for j in mapping):
            raise BadCage("map points outside the target")
        if set(mapping) != set(range(len(target))):
            raise BadCage("map is not surjective")
        self.source = source
        self.target = target
        self.mapping = mapping
        self._fibers = [0] * len(target)
        for i, j in enumerate(mapping):
            self._fibers[j] |= 1 << i

    @classmethod
    def from_cage(cls, cage: Iterable[int]) -> "Caging":
        """Returns the canonical caging of a cage: consecutive blocks of labels."""
        cage = tuple(int(a) for a in cage)
        if not cage or any(a <= 0 for a in cage):
            raise BadCage(f"cage entries must be positive: {cage}")
        mapping = [j for j, a in enumerate(cage) for _ in range(a)]
        return cls(GroundOrder.canonical(len(mapping)), GroundOrder.canonical(len(cage)), mapping)

    @classmethod
    def from_spec(cls, spec: str) -> "Caging":
        """Parses a cage spec such as "2,2,1"."""
        return cls.from_cage(helpers.parse_int_list(spec, "cage"))

    @classmethod
    def identity(cls, ground: GroundOrder) -> "Caging":
        return cls(ground, ground, range(len(ground)))

    @classmethod
    def from_partition(cls, source: GroundOrder, blocks: Sequence[int]) -> "Caging":
        """Returns the caging whose fibers are the given masks, in order."""
        mapping = [None] * len(source)
        for j, block in enumerate(blocks):
            for i in helpers.bits(block):
                mapping[i] = j
        if None in mapping:
            raise BadCage("blocks do not cover the source")
        return cls(source, GroundOrder.canonical(len(blocks)), mapping)

    def __eq__(self, other):
        return (
            isinstance(other, Caging)
            and self.source == other.source
            and self.target == other.target
            and self.mapping == other.mapping
        )

    def __hash__(self):
        return hash((self.source, self.target, self.mapping))

    @property
    def uname(self) -> str:
        return cage_spec(self.cage)

    @property
    def cage(self) -> Tuple[int, ...]:
        return tuple(helpers.popcount(m) for m in self._fibers)

    def describe(self) -> str:
        """Returns the fibers as "{1,2} {3}"."""
        return " ".join("{" + ",".join(self.source.labels(m)) + "}" for m in self._fibers)

    def fibers(self) -> List[int]:
        """Returns the fiber masks over A, in target order."""
        return list(self._fibers)

    def fiber(self, j: int) -> int:
        return self._fibers[j]

    def preimage(self, mask: int) -> int:
        """Returns π⁻¹(S) as a mask over A."""
        result = 0
        for j in helpers.bits(mask):
            result |= self._fibers[j]
        return result

    def image(self, mask: int) -> int:
        """Returns π(S) as a mask over E."""
        return helpers.mask_of(self.mapping[i] for i in helpers.bits(mask))

    def saturated(self, mask: int) -> int:
        """Returns the mask of targets whose whole fiber lies in mask."""
        return helpers.mask_of(j for j, fiber in enumerate(self._fibers) if helpers.is_subset(fiber, mask))

    def is_identity(self) -> bool:
        return all(helpers.popcount(m) == 1 for m in self._fibers)

    def refines(self, other: "Caging") -> bool:
        """
        True if every fiber of self lies inside a fiber of other (π ⪰ π′).

        :raise: GroundMismatch if the sources differ
        """
        if self.source != other.source:
            raise GroundMismatch(other.source, self.source)
        return all(any(helpers.is_subset(f, g) for g in other.fibers()) for f in self._fibers)

    def restrict(self, targets: int) -> "Caging":
        """Returns π restricted to π⁻¹(targets) → targets, relabeled canonically."""
        sources = self.preimage(targets)
        positions = helpers.bits(sources)
        target_positions = helpers.bits(targets)
        where = {j: k for k, j in enumerate(target_positions)}
        return Caging(
            GroundOrder(self.source[i] for i in positions),
            GroundOrder(self.target[j] for j in target_positions),
            [where[self.mapping[i]] for i in positions],
        )

    def to_data(self) -> dict:
        return {
            "source": list(self.source),
            "target": list(self.target),
            "map": {self.source[i]: self.target[j] for i, j in enumerate(self.mapping)},
        }

    @classmethod
    def from_data(cls, data: dict) -> "Caging":
        try:
            source = GroundOrder(data["source"])
            target = GroundOrder(data["target"])
            mapping = [target.index[str(data["map"][label])] for label in source]
        except (KeyError, TypeError) as err:
            raise ParseError(f"malformed caging: {err}")
        return cls(source, target, mapping)


def set_partitions(n: int) -> List[List[int]]:
    """
    Returns every partition of {0..n-1} into nonempty blocks, as lists of
    masks ordered by lowest element.
    """
    result = []

    def extend(i: int, blocks: List[int]):
        if i == n:
            result.append(list(blocks))
            return
        for k in range(len(blocks)):
            blocks[k] |= 1 << i
            extend(i + 1, blocks)
            blocks[k] &= ~(1 << i)
        blocks.append(1 << i)
        extend(i + 1, blocks)
        blocks.pop()

    extend(0, [])
    return result


def cages_up_to(max_source: int) -> List[Tuple[int, ...]]:
    """Returns all nonincreasing cages with 1 <= |A| <= max_source."""
    result = []

    def extend(remaining: int, largest: int, prefix: Tuple[int, ...]):
        if prefix:
            result.append(prefix)
        for a in range(min(remaining, largest), 0, -1):
            extend(remaining - a, a, prefix + (a,))

    extend(max_source, max_source, ())
    return sorted(result, key=lambda c: (sum(c), len(c), tuple(-a for a in c)))


def cage_spec(cage: Sequence[int]) -> str:
    return ",".join(str(a) for a in cage)


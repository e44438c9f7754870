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
Contains the polyfan exception classes.
"""


class PolyfanError(ValueError):
    """Base class for all polyfan errors."""


class InvariantViolation(PolyfanError):
    """Raised when an internal consistency check fails."""


class ParseError(PolyfanError):
    """Raised when a cage spec, weight list or JSON document is malformed."""


class ZeroVector(PolyfanError):
    """Raised when a vector is zero in the effective lattice."""


class Overflow(PolyfanError, OverflowError):
    """Raised when a coordinate leaves the checked integer range."""

    def __init__(self, value: int, bits: int):
        self.value = value
        self.bits = bits
        super(Overflow, self).__init__(f"{value} does not fit in {bits}-bit arithmetic")


class DependentGenerators(PolyfanError):
    """Raised when cone generators are linearly dependent."""

    def __init__(self, generators):
        self.generators = generators
        super(DependentGenerators, self).__init__(f"generators {list(generators)} are dependent")


class AmbientMismatch(PolyfanError):
    """Raised when two objects live in different ambient spaces."""

    def __init__(self, first, second):
        self.first = first
        self.second = second
        super(AmbientMismatch, self).__init__(f"ambient mismatch: {first} vs {second}")


class ConeNotInFan(PolyfanError):
    """Raised when a cone is not a face of any cone of a fan."""

    def __init__(self, cone):
        self.cone = cone
        super(ConeNotInFan, self).__init__(f"{cone} is not a cone of the fan")


class NotARay(PolyfanError):
    """Raised when a vector does not span a ray of a fan."""

    def __init__(self, vector):
        self.vector = vector
        super(NotARay, self).__init__(f"{vector} is not a ray of the fan")


class RayAbsent(NotARay):
    """Raised when the distinguished ray is missing from a fan."""


class MissingSingleton(PolyfanError):
    def __init__(self, element: str):
        self.element = element
        super(MissingSingleton, self).__init__(f"singleton {{{element}}} is missing")


class UnionViolation(PolyfanError):
    """Raised when two intersecting members have a union outside the family."""

    def __init__(self, first, second):
        self.first = first
        self.second = second
        super(UnionViolation, self).__init__(
            f"members {sorted(first)} and {sorted(second)} intersect but their union is missing"
        )


class DisconnectedGraph(PolyfanError):
    """Raised when a graphical building set is requested for a disconnected graph."""


class GroundMismatch(PolyfanError):
    def __init__(self, expected, found):
        self.expected = expected
        self.found = found
        super(GroundMismatch, self).__init__(f"ground mismatch: expected {expected}, got {found}")


class NotConnected(PolyfanError):
    """Raised when a fan is requested for a disconnected building set."""


class NotNormalized(PolyfanError):
    def __init__(self, value):
        self.value = value
        super(NotNormalized, self).__init__(f"f(empty set) = {value}, expected 0")


class NotMonotone(PolyfanError):
    def __init__(self, smaller, larger):
        self.smaller = smaller
        self.larger = larger
        super(NotMonotone, self).__init__(
            f"f({sorted(smaller)}) > f({sorted(larger)}) although {sorted(smaller)} is a subset"
        )


class NotSubmodular(PolyfanError):
    def __init__(self, first, second):
        self.first = first
        self.second = second
        super(NotSubmodular, self).__init__(
            f"submodularity fails for {sorted(first)} and {sorted(second)}"
        )


class InvalidTriple(PolyfanError):
    """Raised when a compatible triple violates one of its clauses."""

    def __init__(self, clause: str):
        self.clause = clause
        super(InvalidTriple, self).__init__(f"invalid compatible triple: {clause}")


class BadCage(PolyfanError):
    """Raised for cages that are empty, nonpositive or too short."""


class InvalidIndexSet(PolyfanError):
    """Raised when an index set is outside the range an operation accepts."""


class NonToricLocus(PolyfanError):
    """Raised for a locus that is not torus invariant."""


class NotInDomain(PolyfanError):
    """Raised when a weight vector is outside the admissible domain."""


class NotARefinement(PolyfanError):
    """Raised when one caging does not refine the other."""


class EmptyVertexList(PolyfanError):
    """Raised when minimizing over no vertices."""

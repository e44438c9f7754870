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
Contains helper functions for bitmask subsets, checked integers and
canonical JSON.
"""

import json
import math
from fractions import Fraction
from typing import Iterable, Iterator, List, Sequence, Tuple

from polyfan import config
from polyfan.errors import Overflow, ParseError


def bits(mask: int) -> List[int]:
    """
    Returns the positions of the set bits of a mask, lowest first.

    Args:
        mask: A nonnegative integer bitmask.

    Returns:
        A list of bit positions.
    """
    result = []
    index = 0
    while mask:
        if mask & 1:
            result.append(index)
        mask >>= 1
        index += 1
    return result


def mask_of(indices: Iterable[int]) -> int:
    """Returns the bitmask with the given positions set."""
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def is_subset(small: int, large: int) -> bool:
    return small & ~large == 0


def submasks(mask: int) -> Iterator[int]:
    """
    Yields every submask of a mask, including 0 and the mask itself, in
    increasing numeric order.

    Args:
        mask: The bitmask to enumerate below.

    Yields:
        Each submask once.
    """
    positions = bits(mask)
    for i in range(1 << len(positions)):
        yield mask_of(positions[j] for j in range(len(positions)) if i >> j & 1)


def masks_by_size(n: int, descending: bool = True) -> List[int]:
    """
    Returns all masks on n elements ordered by cardinality, ties broken by
    mask value.

    Args:
        n: Number of ground elements.
        descending: Largest sets first when True.

    Returns:
        A list of bitmasks.
    """
    masks = list(range(1 << n))
    if descending:
        masks.sort(key=lambda m: (-popcount(m), m))
    else:
        masks.sort(key=lambda m: (popcount(m), m))
    return masks


def checked(value: int) -> int:
    """
    Returns value unchanged if it fits the configured integer width.

    Args:
        value: An integer produced by lattice arithmetic.

    Returns:
        The same integer.

    Raises:
        Overflow: If |value| needs more than POLYFAN_INT_BITS - 1 bits.
    """
    limit = 1 << (config.POLYFAN_INT_BITS - 1)
    if not -limit <= value < limit:
        raise Overflow(value, config.POLYFAN_INT_BITS)
    return value


def checked_vector(values: Iterable[int]) -> Tuple[int, ...]:
    return tuple(checked(int(v)) for v in values)


def gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return g


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def parse_int_list(spec: str, what: str = "cage") -> Tuple[int, ...]:
    """
    Parses a comma separated list of positive integers, e.g. "2,2,1".

    Args:
        spec: The string to parse.
        what: Name used in error messages.

    Returns:
        A tuple of positive integers.

    Raises:
        ParseError: If the string is empty or holds a nonpositive entry.
    """
    parts = [p.strip() for p in str(spec).split(",")]
    if not parts or any(not p for p in parts):
        raise ParseError(f"malformed {what} spec: {spec!r}")
    try:
        values = tuple(int(p) for p in parts)
    except ValueError:
        raise ParseError(f"malformed {what} spec: {spec!r}")
    if any(v <= 0 for v in values):
        raise ParseError(f"{what} entries must be positive: {spec!r}")
    return values


def parse_fraction_list(spec: str) -> Tuple[Fraction, ...]:
    """
    Parses a comma separated list of exact rationals such as "0.6,1/2,1".

    Args:
        spec: The string to parse.

    Returns:
        A tuple of Fractions.

    Raises:
        ParseError: If any entry is not a rational literal.
    """
    try:
        return tuple(Fraction(p.strip()) for p in str(spec).split(","))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"malformed weight spec: {spec!r}")


def canonical_json(data) -> str:
    """
    Returns the canonical JSON text of data: sorted keys, compact separators
    and a trailing newline, so equal data gives equal bytes.

    Args:
        data: A JSON-serializable structure.

    Returns:
        JSON text.
    """
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"

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
Contains weight vectors and the weight-domain filters that decide which
boundary loci are blown up.
"""

import itertools
from fractions import Fraction
from typing import Iterable, List, Tuple

from polyfan import helpers
from polyfan.errors import NotInDomain, ParseError
from polyfan.report import dotdict


class WeightVector(object):
    """Rational weights w_1, ..., w_n."""

    __slots__ = ("weights",)

    def __init__(self, weights: Iterable):
        try:
            self.weights = tuple(Fraction(w) for w in weights)
        except (TypeError, ValueError, ZeroDivisionError) as err:
            raise ParseError(f"invalid weights: {err}")

    @classmethod
    def from_spec(cls, spec: str) -> "WeightVector":
        """Parses "1/3,1/3,1"."""
        return cls(helpers.parse_fraction_list(spec))

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __eq__(self, other):
        return isinstance(other, WeightVector) and self.weights == other.weights

    def __hash__(self):
        return hash(self.weights)

    def __repr__(self):
        return '<WeightVector "{0}">'.format(",".join(str(w) for w in self.weights))

    def total(self, positions: Iterable[int]) -> Fraction:
        """Returns w_I for 0-based positions I."""
        return sum((self.weights[i] for i in positions), Fraction(0))


def in_fm_domain(w: WeightVector) -> bool:
    """True if 0 < w_i <= 1 for every i."""
    return all(0 < x <= 1 for x in w)


def in_toric_domain(w: WeightVector) -> bool:
    """True if w is in the admissible domain and w_{[n]} > 1."""
    return in_fm_domain(w) and w.total(range(len(w))) > 1


def is_losev_manin(w: WeightVector) -> bool:
    """True if w_{[n-1]} <= 1 and w_i + w_n > 1 for every i < n."""
    n = len(w)
    if n < 2:
        return False
    last = w.weights[-1]
    return w.total(range(n - 1)) <= 1 and all(x + last > 1 for x in w.weights[:-1])


def _index_sets(n: int) -> List[Tuple[int, ...]]:
    """Returns the proper subsets of 1..n with at least two elements."""
    result = []
    for k in range(2, n):
        result.extend(itertools.combinations(range(1, n + 1), k))
    return result


def toric_building_indices(w: WeightVector, n: int = None) -> dotdict:
    """
    Returns {indices, losev_manin}: the subsets I ⊊ [n] with |I| >= 2 and
    w_I > 1 as sorted 1-based tuples, and whether w satisfies the
    Losev-Manin condition (then every returned I contains n).

    :raise: NotInDomain unless w is in the toric domain
    """
    n = len(w) if n is None else n
    if len(w) != n:
        raise NotInDomain(f"{w} has {len(w)} weights, expected {n}")
    if not in_toric_domain(w):
        raise NotInDomain(f"{w} is outside the toric weight domain")
    indices = [I for I in _index_sets(n) if w.total(i - 1 for i in I) > 1]
    return dotdict({"indices": indices, "losev_manin": is_losev_manin(w)})


def predicate_signature(w: WeightVector, n: int = None) -> Tuple[bool, ...]:
    """Returns the outcomes of w_I > 1 for every I ⊊ [n] with |I| >= 2."""
    n = len(w) if n is None else n
    return tuple(w.total(i - 1 for i in I) > 1 for I in _index_sets(n))

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
Contains building sets, nested sets, π-pairs and the two constructions of
the nested fan.
"""

import itertools
import random
from typing import FrozenSet, Iterable, List, Sequence

import networkx as nx

from polyfan import config, helpers
from polyfan.base import Entity
from polyfan.caging import Caging
from polyfan.errors import (
    DisconnectedGraph,
    GroundMismatch,
    InvalidIndexSet,
    InvariantViolation,
    MissingSingleton,
    NotConnected,
    ParseError,
    UnionViolation,
)
from polyfan.fan import Fan, fan_equal, simplex_fan, star_subdivision
from polyfan.lattice import AmbientSpace, Cone, GroundOrder
from polyfan.logger import log
from polyfan.report import Report


def _size_order(mask: int):
    return (helpers.popcount(mask), mask)


class BuildingSet(Entity):
    """
    Family of nonempty subsets of a ground set, stored as bitmasks, that
    contains every singleton and the union of any two intersecting members.
    """

    entity_type = "BuildingSet"
    fields = ["ground", "members"]

    def __init__(self, ground: GroundOrder, members: Iterable[int]):
        members = frozenset(int(m) for m in members)
        for m in members:
            if m <= 0 or not helpers.is_subset(m, ground.full_mask):
                raise ParseError(f"member mask {m} is not a nonempty subset of {ground}")
        self.ground = ground
        self.members = members
        _check_axioms(ground, members)

    def __contains__(self, mask: int):
        return mask in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members, key=_size_order))

    def __eq__(self, other):
        return isinstance(other, BuildingSet) and self.ground == other.ground and self.members == other.members

    def __hash__(self):
        return hash((self.ground, self.members))

    @property
    def uname(self) -> str:
        return f"{len(self.members)} members on {len(self.ground)}"

    def describe(self) -> str:
        """Returns the members as "{1} {2} {1,2}"."""
        return " ".join("{" + ",".join(self.ground.labels(m)) + "}" for m in self)

    def maximal(self) -> List[int]:
        """Returns B_max, the inclusion-maximal members."""
        return sorted(
            (m for m in self.members if not any(m != o and helpers.is_subset(m, o) for o in self.members)),
            key=_size_order,
        )

    @property
    def connected(self) -> bool:
        return self.maximal() == [self.ground.full_mask]

    def proper(self) -> List[int]:
        """Returns B ∖ B_max in size order."""
        top = set(self.maximal())
        return [m for m in self if m not in top]

    def factors(self, mask: int) -> List[int]:
        """Returns the maximal members contained in mask."""
        inside = [m for m in self.members if helpers.is_subset(m, mask)]
        return sorted(
            (m for m in inside if not any(m != o and helpers.is_subset(m, o) for o in inside)),
            key=_size_order,
        )

    def to_data(self) -> dict:
        return {
            "ground": list(self.ground),
            "members": [self.ground.labels(m) for m in self],
        }

    @classmethod
    def from_data(cls, data: dict) -> "BuildingSet":
        try:
            return validate_building_set(GroundOrder(data["ground"]), data["members"])
        except (KeyError, TypeError) as err:
            raise ParseError(f"malformed building set: {err}")


def _check_axioms(ground: GroundOrder, members: FrozenSet[int]) -> None:
    for i, label in enumerate(ground):
        if 1 << i not in members:
            raise MissingSingleton(label)
    ordered = sorted(members, key=_size_order)
    for first, second in itertools.combinations(ordered, 2):
        if first & second and (first | second) not in members:
            raise UnionViolation(ground.labels(first), ground.labels(second))


def validate_building_set(ground: GroundOrder, members: Iterable) -> BuildingSet:
    """
    Returns the building set with the given members.

    :param ground: ground order of E
    :param members: label collections or bitmasks
    :raise: MissingSingleton, UnionViolation
    """
    masks = []
    for m in members:
        if isinstance(m, int):
            masks.append(m)
        else:
            labels = list(m)
            if not labels:
                raise ParseError("building set members must be nonempty")
            masks.append(ground.mask(labels))
    return BuildingSet(ground, masks)


def boolean_building_set(ground: GroundOrder) -> BuildingSet:
    """Returns 2^E ∖ {∅}."""
    return BuildingSet(ground, range(1, ground.full_mask + 1))


def losev_manin_building_set(n: int) -> BuildingSet:
    """Returns the boolean building set on ("1", ..., "n")."""
    return boolean_building_set(GroundOrder.canonical(n))


def graphical_building_set(edges: Iterable[Sequence], ground: GroundOrder = None) -> BuildingSet:
    """
    Returns the graphical building set of a connected graph: the vertex sets
    inducing connected subgraphs.

    :param edges: pairs of vertex labels
    :param ground: vertex order, defaults to sorted labels
    :raise: DisconnectedGraph
    """
    graph = nx.Graph()
    graph.add_edges_from((str(u), str(v)) for u, v in edges)
    if ground is None:
        ground = GroundOrder(sorted(graph.nodes, key=lambda x: (len(x), x)))
    graph.add_nodes_from(ground)
    if set(graph.nodes) != set(ground):
        raise GroundMismatch(list(ground), sorted(graph.nodes))
    if not nx.is_connected(graph):
        raise DisconnectedGraph(f"graph on {list(ground)} is not connected")
    members = []
    for mask in range(1, ground.full_mask + 1):
        if nx.is_connected(graph.subgraph(ground.labels(mask))):
            members.append(mask)
    return BuildingSet(ground, members)


def path_building_set(n: int) -> BuildingSet:
    """Graphical building set of the path 1-2-...-n (intervals)."""
    ground = GroundOrder.canonical(n)
    return graphical_building_set(zip(ground, ground[1:]), ground) if n > 1 else boolean_building_set(ground)


def star_building_set(n: int) -> BuildingSet:
    """Graphical building set of the star with center 1."""
    ground = GroundOrder.canonical(n)
    return graphical_building_set(((ground[0], leaf) for leaf in ground[1:]), ground) if n > 1 else boolean_building_set(ground)


def polystellahedral_building_set(n: int) -> BuildingSet:
    """
    Returns the building set on {0, 1, ..., n} with members {i} and {0} ∪ S
    for S ⊆ [n]; its nested fan is the stellahedral fan.
    """
    ground = GroundOrder(str(i) for i in range(n + 1))
    members = [1 << i for i in range(n + 1)]
    members.extend(1 | (s << 1) for s in range(1 << n))
    return BuildingSet(ground, members)


def pullback_building_set(b: BuildingSet, pi: Caging) -> BuildingSet:
    """
    Returns π*B = {{i} | i ∈ A} ∪ {π⁻¹(I) | I ∈ B}.

    :raise: GroundMismatch if π does not map onto the ground of b
    """
    if pi.target != b.ground:
        raise GroundMismatch(list(b.ground), list(pi.target))
    members = {1 << i for i in range(len(pi.source))}
    members.update(pi.preimage(m) for m in b.members)
    return BuildingSet(pi.source, members)


# nested sets ----------------------------------------------------------------


class NestedSet(object):
    """Subfamily of B ∖ B_max whose incomparable members never union into B."""

    __slots__ = ("parent", "members")

    def __init__(self, parent: BuildingSet, members: Iterable[int]):
        members = frozenset(members)
        if not is_nested(parent, members):
            raise InvalidIndexSet(f"{[parent.ground.labels(m) for m in members]} is not nested")
        self.parent = parent
        self.members = members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members, key=_size_order))

    def __eq__(self, other):
        return isinstance(other, NestedSet) and self.parent == other.parent and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return '<NestedSet "{0}">'.format(
            " ".join("{" + ",".join(self.parent.ground.labels(m)) + "}" for m in self)
        )

    def cone(self) -> Cone:
        """Returns σ_N = cone(ē_S | S ∈ N)."""
        ambient = AmbientSpace.quotient(self.parent.ground)
        return Cone(ambient, [ambient.indicator(m) for m in self])


def _compatible(b: BuildingSet, members: Sequence[int], candidate: int) -> bool:
    """True if members ∪ {candidate} stays nested, given members is nested."""
    disjoint = []
    for m in members:
        if m & candidate:
            if not (helpers.is_subset(m, candidate) or helpers.is_subset(candidate, m)):
                return False
        else:
            disjoint.append(m)
    for k in range(1, len(disjoint) + 1):
        for group in itertools.combinations(disjoint, k):
            if any(helpers.is_subset(x, y) or helpers.is_subset(y, x) for x, y in itertools.combinations(group, 2)):
                continue
            union = candidate
            for m in group:
                union |= m
            if union in b.members:
                return False
    return True


def is_nested(b: BuildingSet, members: Iterable[int]) -> bool:
    members = sorted(members, key=_size_order)
    top = set(b.maximal())
    chosen = []
    for m in members:
        if m not in b.members or m in top or not _compatible(b, chosen, m):
            return False
        chosen.append(m)
    return True


def _nested_families(b: BuildingSet, maximal_only: bool = False) -> List[FrozenSet[int]]:
    candidates = b.proper()
    result = []

    def extend(position: int, chosen: List[int]):
        if position == len(candidates):
            if maximal_only and any(
                c not in chosen and _compatible(b, chosen, c) for c in candidates
            ):
                return
            result.append(frozenset(chosen))
            return
        candidate = candidates[position]
        if _compatible(b, chosen, candidate):
            chosen.append(candidate)
            extend(position + 1, chosen)
            chosen.pop()
        extend(position + 1, chosen)

    extend(0, [])
    return result


def enumerate_nested_sets(b: BuildingSet) -> List[NestedSet]:
    """
    Returns all nested sets of a connected building set, the empty one
    included, ordered by size.

    :raise: NotConnected
    """
    if not b.connected:
        raise NotConnected(f"{b} is not connected")
    families = sorted(_nested_families(b), key=lambda s: (len(s), sorted(s)))
    return [NestedSet(b, family) for family in families]


def nested_fan(b: BuildingSet) -> Fan:
    """
    Returns Σ(B) in ℝ^E/ℝe_E, with a cone cone(ē_S | S ∈ N) for every
    nested set N.

    :raise: NotConnected
    """
    if not b.connected:
        raise NotConnected(f"{b} is not connected")
    ambient = AmbientSpace.quotient(b.ground)
    families = _nested_families(b, maximal_only=True)
    log.debug(f"nested fan of {b}: {len(families)} maximal nested sets")
    return Fan.from_cones(ambient, [[ambient.indicator(m) for m in family] for family in families])


def _check_member_order(order: Sequence[int], expected: Iterable[int]) -> List[int]:
    order = list(order)
    if sorted(order) != sorted(expected):
        raise InvalidIndexSet(f"subdivision order {order} does not list the new members exactly once")
    for k, member in enumerate(order):
        later = [m for m in order[k + 1 :] if m != member and helpers.is_subset(member, m)]
        if later:
            raise InvalidIndexSet(f"member {member:b} comes before its superset {later[0]:b}")
    return order


def shuffled_member_order(members: Iterable[int], rng: random.Random) -> List[int]:
    """
    Returns a random order of members in which no member comes after one of
    its subsets.
    """
    remaining = set(members)
    order = []
    while remaining:
        tops = sorted(m for m in remaining if not any(m != o and helpers.is_subset(m, o) for o in remaining))
        member = rng.choice(tops)
        order.append(member)
        remaining.discard(member)
    return order


def subdivide_along_members(
    f: Fan, start: BuildingSet, extra: Iterable[int], order: Sequence[int] = None
) -> Fan:
    """
    Star-subdivides the nested fan f of start along σ_G for each new member
    G. σ_G is spanned by ē of the maximal members of the current family
    inside G.

    :param order: the new members, supersets before subsets; defaults to
        nonincreasing cardinality with ties broken by mask
    :raise: InvalidIndexSet if order is not inclusion nonincreasing
    """
    ambient = f.ambient
    current = set(start.members)
    new = set(extra) - current
    if order is None:
        order = sorted(new, key=lambda m: (-helpers.popcount(m), m))
    else:
        order = _check_member_order(order, new)
    for member in order:
        inside = [m for m in current if helpers.is_subset(m, member)]
        factors = [m for m in inside if not any(m != o and helpers.is_subset(m, o) for o in inside)]
        tau = Cone(ambient, [ambient.indicator(m) for m in factors])
        f = star_subdivision(f, tau)
        current.add(member)
    return f


def subdivision_members(b: BuildingSet) -> List[int]:
    """Returns the members along which Σ_E is subdivided: |I| ≥ 2, I ≠ E."""
    return [m for m in b.members if helpers.popcount(m) >= 2 and m != b.ground.full_mask]


def nested_fan_by_subdivision(b: BuildingSet, order: Sequence[int] = None) -> Fan:
    """
    Returns Σ(B) built from Σ_E by star subdivisions along cone(ē_i | i ∈ I)
    for the nonsingleton members I ≠ E, largest first unless an inclusion
    nonincreasing order is given.

    :raise: NotConnected
    :raise: InvalidIndexSet
    """
    if not b.connected:
        raise NotConnected(f"{b} is not connected")
    singletons = BuildingSet(b.ground, [1 << i for i in range(len(b.ground))])
    return subdivide_along_members(simplex_fan(b.ground), singletons, subdivision_members(b), order)


# pi-pairs -------------------------------------------------------------------


class PiPair(object):
    """
    Pair (I, N) with I ⊊ A containing no fiber of π and N a nested set of
    the building set on E.
    """

    __slots__ = ("caging", "I", "N")

    def __init__(self, caging: Caging, I: int, N: NestedSet):
        if caging.saturated(I):
            raise InvalidIndexSet(f"I = {caging.source.labels(I)} contains a fiber")
        if N.parent.ground != caging.target:
            raise GroundMismatch(list(caging.target), list(N.parent.ground))
        self.caging = caging
        self.I = I
        self.N = N

    def __repr__(self):
        return '<PiPair "I={0} N={1}">'.format(self.caging.source.labels(self.I), self.N)

    def nested_members(self) -> FrozenSet[int]:
        """Returns the nested set {{i} | i ∈ I} ∪ {π⁻¹(S) | S ∈ N} of π*B."""
        members = {1 << i for i in helpers.bits(self.I)}
        members.update(self.caging.preimage(m) for m in self.N.members)
        return frozenset(members)


def enumerate_pi_pairs(pi: Caging, b: BuildingSet) -> List[PiPair]:
    """
    Returns all π-pairs, after checking that they correspond one to one with
    the nested sets of π*B.

    :raise: NotConnected, GroundMismatch
    """
    if not b.connected:
        raise NotConnected(f"{b} is not connected")
    nested = enumerate_nested_sets(b)
    free = [I for I in range(pi.source.full_mask + 1) if not pi.saturated(I)]
    pairs = [PiPair(pi, I, N) for I in free for N in nested]
    images = set(p.nested_members() for p in pairs)
    expected = set(n.members for n in enumerate_nested_sets(pullback_building_set(b, pi)))
    if len(images) != len(pairs) or images != expected:
        raise InvariantViolation(
            f"{len(pairs)} pi-pairs vs {len(expected)} nested sets of the pullback"
        )
    return pairs


def pi_pair_cone(p: PiPair) -> Cone:
    """Returns σ_(I,N) = cone(ē_i | i ∈ I) + cone(ē_π⁻¹(S) | S ∈ N)."""
    ambient = AmbientSpace.quotient(p.caging.source)
    gens = [ambient.unit(i) for i in helpers.bits(p.I)]
    gens.extend(ambient.indicator(p.caging.preimage(m)) for m in p.N)
    return Cone(ambient, gens)


def connected_building_sets(n: int) -> List[BuildingSet]:
    """Returns every connected building set on ("1", ..., "n")."""
    ground = GroundOrder.canonical(n)
    full = ground.full_mask
    singletons = [1 << i for i in range(n)]
    optional = [m for m in range(1, full) if helpers.popcount(m) >= 2]
    result = []
    for choice in range(1 << len(optional)):
        members = set(singletons)
        members.add(full)
        members.update(optional[k] for k in range(len(optional)) if choice >> k & 1)
        if any(a & b and (a | b) not in members for a, b in itertools.combinations(members, 2)):
            continue
        result.append(BuildingSet(ground, members))
    return result


def check_nested_construction(b: BuildingSet, orders: int = 2, seed: int = None) -> Report:
    """
    Checks that both constructions of the nested fan agree, for the default
    subdivision order and for orders - 1 seeded inclusion nonincreasing
    shuffles.
    """
    report = Report("nested-construction", b.describe())
    rng = random.Random(config.POLYFAN_SEED if seed is None else seed)
    direct = nested_fan(b)
    schedules = [None]
    for _ in range(max(0, orders - 1)):
        schedules.append(shuffled_member_order(subdivision_members(b), rng))
    for order in schedules:
        subdivided = nested_fan_by_subdivision(b, order)
        report.require(
            fan_equal(direct, subdivided),
            {"direct": direct.uname, "subdivided": subdivided.uname, "order": order},
        )
    return report

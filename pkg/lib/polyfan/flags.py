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
Contains compatible triples and the fans they index: the interpolating fans
Δ_{π,s} between the product of projective spaces (s = 0) and the
polystellahedral fan (s = |E|), the polypermutohedral fan, and the checks
tying them together (subdivision chain, product blow-up, facet star,
fibration splitting, T^a_LM blow-up and refinement chains).
"""

import itertools
import math
import random
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from polyfan import config, helpers
from polyfan.buildingset import (
    BuildingSet,
    boolean_building_set,
    enumerate_nested_sets,
    is_nested,
    nested_fan,
    pullback_building_set,
    subdivide_along_members,
)
from polyfan.caging import Caging, cage_spec, set_partitions
from polyfan.enums import OrderPolicy
from polyfan.errors import (
    BadCage,
    ConeNotInFan,
    DependentGenerators,
    InvalidIndexSet,
    InvalidTriple,
    InvariantViolation,
    NonToricLocus,
    NotARefinement,
    NotConnected,
    RayAbsent,
)
from polyfan.fan import (
    Fan,
    fan_equal,
    fan_refines,
    fan_validate,
    open_star_subfans,
    product_of_fans,
    simplex_fan,
    star_of_ray,
    star_subdivision,
)
from polyfan.lattice import AmbientSpace, Cone, GroundOrder
from polyfan.logger import log
from polyfan.report import Report


def _negated(coords: Sequence[int]) -> Tuple[int, ...]:
    return tuple(-x for x in coords)


# compatible triples ---------------------------------------------------------


def _violated_clause(pi: Caging, I: int, flag: Sequence[int], top: int, J: int) -> Optional[str]:
    """Returns the first clause the data (I, F, J) violates, or None."""
    source_mask = pi.source.full_mask
    target_mask = pi.target.full_mask
    if not helpers.is_subset(I, source_mask):
        return "I must be a subset of A"
    if not helpers.is_subset(J, target_mask) or not helpers.is_subset(top, target_mask):
        return "J and the top set must be subsets of E"
    if top & J:
        return "the top set must be disjoint from J"
    for smaller, larger in zip(flag, flag[1:]):
        if smaller == larger or not helpers.is_subset(smaller, larger):
            return "the flag must be strictly increasing"
    for member in flag:
        if member == top or not helpers.is_subset(member, top):
            return "every flag member must be a proper subset of the top set"
    covered = pi.saturated(I)
    if flag:
        if not helpers.is_subset(covered, flag[0]):
            return "every S with π⁻¹(S) ⊆ I must lie in F_1"
    elif covered & J:
        return "every S with π⁻¹(S) ⊆ I must be disjoint from J"
    return None


class CompatibleTriple(object):
    """
    Triple (I, F, J) for a caging π: A → E. I ⊆ A, F is a strictly
    increasing flag F_1 ⊊ ... ⊊ F_k (possibly empty) of proper subsets of
    the top set F_{k+1} ⊆ E ∖ J, and J ⊆ E. Compatible pairs are the triples
    with top set E and J empty.
    """

    __slots__ = ("caging", "I", "flag", "top", "J")

    def __init__(self, caging: Caging, I: int, flag: Sequence[int], top: int, J: int):
        flag = tuple(flag)
        clause = _violated_clause(caging, I, flag, top, J)
        if clause:
            raise InvalidTriple(clause)
        self.caging = caging
        self.I = I
        self.flag = flag
        self.top = top
        self.J = J

    @classmethod
    def pair(cls, caging: Caging, I: int, flag: Sequence[int]) -> "CompatibleTriple":
        """Returns the compatible pair (I ≤ F), the triple with top E and J = ∅."""
        return cls(caging, I, flag, caging.target.full_mask, 0)

    def __eq__(self, other):
        return isinstance(other, CompatibleTriple) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        source, target = self.caging.source, self.caging.target
        flag = " ⊊ ".join("{" + ",".join(target.labels(m)) + "}" for m in self.flag + (self.top,))
        return '<CompatibleTriple "I={0} F={1} J={2}">'.format(
            source.labels(self.I), flag, target.labels(self.J)
        )

    def key(self) -> tuple:
        return (self.caging, self.I, self.flag, self.top, self.J)

    @property
    def s(self) -> int:
        return helpers.popcount(self.top)

    def cone(self) -> Cone:
        return triple_cone(self)


def triple_cone(t: CompatibleTriple) -> Cone:
    """
    Returns C_{I,F,J} = cone(e_i | i ∈ I) + cone(-e_{A∖π⁻¹(F_l)} | l ≤ k)
    + cone(-e_{π⁻¹(j)} | j ∈ J) in ℝ^A.

    :raise: InvariantViolation if the listed vectors are not the primitive
        generators of a smooth cone
    """
    pi = t.caging
    ambient = AmbientSpace.full(pi.source)
    target_mask = pi.target.full_mask
    listed = [ambient.unit(i) for i in helpers.bits(t.I)]
    listed.extend(_negated(ambient.indicator(pi.preimage(target_mask & ~f))) for f in t.flag)
    listed.extend(_negated(ambient.indicator(pi.fiber(j))) for j in helpers.bits(t.J))
    if len(set(listed)) != len(listed):
        raise InvariantViolation(f"{t} lists a generator twice")
    try:
        cone = Cone(ambient, listed)
    except DependentGenerators as err:
        raise InvariantViolation(f"{t} has dependent generators: {err}")
    if set(cone.generators) != set(listed):
        raise InvariantViolation(f"{t} lists non-primitive generators")
    if not cone.is_smooth():
        raise InvariantViolation(f"{t} spans a singular cone")
    return cone


def _sections(pi: Caging, targets: int) -> Iterator[int]:
    """Yields the masks θ(targets) of every choice of one element per fiber."""
    fibers = [helpers.bits(pi.fiber(j)) for j in helpers.bits(targets)]
    for choice in itertools.product(*fibers):
        yield helpers.mask_of(choice)


def _lowest(mask: int, count: int) -> int:
    return helpers.mask_of(helpers.bits(mask)[:count])


def _check_s(pi: Caging, s: int) -> int:
    s = int(s)
    if not 0 <= s <= len(pi.target):
        raise InvalidTriple(f"s = {s} is outside 0 <= s <= {len(pi.target)}")
    return s


def maximal_triples(pi: Caging, s: int) -> List[CompatibleTriple]:
    """
    Returns the compatible triples with |F_{k+1}| = s indexing the maximal
    cones of Δ_{π,s}. They come in two forms:

    * empty flag: |J| ≤ |E| - s, I = A ∖ θ(J) for a section θ over J, and
      the top set is any s-subset of E ∖ J (the lowest is used, the cone
      does not depend on it);
    * nonempty flag (s ≥ 1): |J| = |E| - s, top = E ∖ J, the flag grows
      from F_1 one element at a time, and I = A ∖ θ(E ∖ F_1).
    """
    s = _check_s(pi, s)
    n = len(pi.target)
    source_mask = pi.source.full_mask
    target_mask = pi.target.full_mask
    result = []
    for J in range(target_mask + 1):
        if helpers.popcount(J) > n - s:
            continue
        top = _lowest(target_mask & ~J, s)
        for theta in _sections(pi, J):
            result.append(CompatibleTriple(pi, source_mask & ~theta, (), top, J))
    if s == 0:
        return result
    for J in range(target_mask + 1):
        if helpers.popcount(J) != n - s:
            continue
        top = target_mask & ~J
        for first in helpers.submasks(top):
            if first == top:
                continue
            remaining = helpers.bits(top & ~first)
            for steps in itertools.permutations(remaining, len(remaining) - 1):
                flag = [first]
                for p in steps:
                    flag.append(flag[-1] | 1 << p)
                for theta in _sections(pi, target_mask & ~first):
                    result.append(CompatibleTriple(pi, source_mask & ~theta, flag, top, J))
    return result


def _chains_below(top: int) -> Iterator[Tuple[int, ...]]:
    """Yields every strictly increasing chain of proper subsets of top."""
    proper = [m for m in helpers.submasks(top) if m != top]

    def extend(chain: Tuple[int, ...]):
        yield chain
        for m in proper:
            if not chain or (m != chain[-1] and helpers.is_subset(chain[-1], m)):
                yield from extend(chain + (m,))

    yield from extend(())


def enumerate_triples(pi: Caging, s: int = None) -> List[CompatibleTriple]:
    """
    Returns every compatible triple (with |F_{k+1}| = s if given) by brute
    force filtering. Used to cross-check maximal_triples.
    """
    target_mask = pi.target.full_mask
    sizes = range(len(pi.target) + 1) if s is None else [_check_s(pi, s)]
    result = []
    for J in range(target_mask + 1):
        rest = target_mask & ~J
        for top in helpers.submasks(rest):
            if helpers.popcount(top) not in sizes:
                continue
            for flag in _chains_below(top):
                for I in range(pi.source.full_mask + 1):
                    if _violated_clause(pi, I, flag, top, J) is None:
                        result.append(CompatibleTriple(pi, I, flag, top, J))
    return result


def delta_fan(pi: Caging, s: int) -> Fan:
    """Returns Δ_{π,s} in ℝ^A, the fan of all C_{I,F,J} with |F_{k+1}| = s."""
    triples = maximal_triples(pi, s)
    ambient = AmbientSpace.full(pi.source)
    fan = Fan.from_cones(ambient, [triple_cone(t).generators for t in triples])
    log.debug(f"delta fan cage={pi.uname} s={s}: {fan.uname}")
    return fan


def product_fan(pi: Caging) -> Fan:
    """Returns Δ_{π,0}, the fan of ℙ^{a_1} × ... × ℙ^{a_n}."""
    return delta_fan(pi, 0)


def polystellahedral_fan(pi: Caging) -> Fan:
    """Returns Δ_{π,|E|}, whose cones are indexed by compatible pairs."""
    return delta_fan(pi, len(pi.target))


def polypermutohedral_fan(pi: Caging) -> Fan:
    """Returns the nested fan of the pulled back boolean building set, in ℝ^A/ℝe_A."""
    return nested_fan(pullback_building_set(boolean_building_set(pi.target), pi))


def check_face_closure(pi: Caging, s: int) -> Report:
    """
    Checks that the faces of the maximal cones of Δ_{π,s} are exactly the
    cones C_{I,F,J} of all compatible triples with |F_{k+1}| = s.
    """
    report = Report("face-closure", f"cage {pi.uname} s={s}")
    fan = delta_fan(pi, s)
    faces = set(frozenset(fan.generators(c)) for c in fan.faces())
    triples = set(frozenset(triple_cone(t).generators) for t in enumerate_triples(pi, s))
    for extra in sorted(sorted(c) for c in faces - triples):
        report.fail({"face_without_triple": [list(g) for g in extra]})
    for extra in sorted(sorted(c) for c in triples - faces):
        report.fail({"triple_outside_fan": [list(g) for g in extra]})
    report["faces"] = len(faces)
    return report


# subdivision chain and blow-up ---------------------------------------------


def blowup_center(pi: Caging, J: int) -> Cone:
    """Returns C_J = cone(-e_{π⁻¹(j)} | j ∈ J) in ℝ^A."""
    ambient = AmbientSpace.full(pi.source)
    return Cone(ambient, [_negated(ambient.indicator(pi.fiber(j))) for j in helpers.bits(J)])


def _face_of(fan: Fan, rays: Tuple[int, ...], cone: Cone) -> bool:
    return all(fan.index_of(g) in rays for g in cone.generators)


def check_subdivision_chain(pi: Caging, orders: int = 2, seed: int = None) -> Report:
    """
    Checks that Δ_{π,s+1} is Δ_{π,s} star-subdivided along every C_J with
    |J| = |E| - s, for each s and for several orders of the J (sorted,
    reversed, then seeded shuffles). Also checks that no maximal cone of
    Δ_{π,s} contains two of those C_J, and that every Δ_{π,s} is a
    complete smooth fan.
    """
    report = Report("subdivision-chain", f"cage {pi.uname}")
    rng = random.Random(config.POLYFAN_SEED if seed is None else seed)
    n = len(pi.target)
    fans = [delta_fan(pi, s) for s in range(n + 1)]
    for s, fan in enumerate(fans):
        report.merge(fan_validate(fan), prefix=f"fan-validate s={s}")

    for s in range(n):
        targets = [J for J in range(1, pi.target.full_mask + 1) if helpers.popcount(J) == n - s]
        centers = {J: blowup_center(pi, J) for J in targets}
        for cone in fans[s].maximal_cones:
            rays = set(cone)
            inside = [J for J in targets if _face_of(fans[s], rays, centers[J])]
            report.require(
                len(inside) <= 1,
                {"s": s, "cone": list(cone), "centers": [pi.target.labels(J) for J in inside]},
            )
        schedules = [sorted(targets), sorted(targets, reverse=True)]
        for _ in range(max(0, orders - 2)):
            shuffled = list(targets)
            rng.shuffle(shuffled)
            schedules.append(shuffled)
        for order in schedules[: max(1, orders)]:
            fan = fans[s]
            try:
                for J in order:
                    fan = star_subdivision(fan, centers[J])
            except ConeNotInFan as err:
                report.fail({"s": s, "order": [pi.target.labels(J) for J in order], "error": str(err)})
                continue
            report.require(
                fan_equal(fan, fans[s + 1]),
                {"s": s, "order": [pi.target.labels(J) for J in order], "got": fan.uname},
            )
    report["rays"] = [len(f.rays) for f in fans]
    report["maximal_cones"] = [len(f.maximal_cones) for f in fans]
    return report


def blowup_product_fan(pi: Caging, order_policy: OrderPolicy = OrderPolicy.DEEPEST_FIRST) -> Fan:
    """
    Star-subdivides Δ_{π,0} along C_J for every nonempty J ⊆ E, with |J|
    nonincreasing (deepest_first) or nondecreasing (smallest_first).

    :raise: ConeNotInFan if the policy reaches a C_J an earlier step destroyed
    """
    policy = OrderPolicy(order_policy)
    sign = -1 if policy == OrderPolicy.DEEPEST_FIRST else 1
    fan = product_fan(pi)
    for J in sorted(range(1, pi.target.full_mask + 1), key=lambda m: (sign * helpers.popcount(m), m)):
        fan = star_subdivision(fan, blowup_center(pi, J))
    return fan


def check_blowup(pi: Caging, order_policy: OrderPolicy = OrderPolicy.DEEPEST_FIRST) -> Report:
    """Checks that blowup_product_fan under a policy is the polystellahedral fan."""
    policy = OrderPolicy(order_policy)
    report = Report("blowup", f"cage {pi.uname} {policy}")
    try:
        fan = blowup_product_fan(pi, policy)
    except ConeNotInFan as err:
        report.fail({"policy": policy.value, "error": str(err)})
        return report
    report.require(fan_equal(fan, polystellahedral_fan(pi)), {"policy": policy.value, "got": fan.uname})
    return report


def blowup_policy_ledger(pi: Caging) -> Report:
    """
    Runs both blow-up order policies and records whether each reproduces the
    polystellahedral fan. Passes iff deepest_first does.
    """
    report = Report("blowup-ledger", f"cage {pi.uname}")
    entries = []
    for policy in OrderPolicy:
        outcome = check_blowup(pi, policy)
        entry = {"policy": policy.value, "matches": outcome.passed}
        errors = [w["error"] for w in outcome.witnesses if "error" in w]
        if errors:
            entry["error"] = errors[0]
        entries.append(entry)
        if policy == OrderPolicy.DEEPEST_FIRST:
            report.require(outcome.passed, entry)
    report["policies"] = entries
    return report


# facet star -----------------------------------------------------------------


def check_facet_star(pi: Caging) -> Report:
    """
    Checks that the star of the ray -e_A in the polystellahedral fan is the
    polypermutohedral fan, and records the open subfans Σ', Σ''.

    :raise: RayAbsent if -e_A is not a ray of the polystellahedral fan
    """
    report = Report("facet-star", f"cage {pi.uname}")
    fan = polystellahedral_fan(pi)
    deep = (-1,) * len(pi.source)
    ray = fan.index_of(deep)
    if ray is None:
        raise RayAbsent(deep)
    star = star_of_ray(fan, deep)
    expected = polypermutohedral_fan(pi)
    report.require(
        fan_equal(star, expected),
        {"star": star.to_data(), "polypermutohedral": expected.to_data()},
    )
    sigma_prime, sigma_double_prime = open_star_subfans(fan, deep)
    report["star_cones"] = len(fan.cones_containing(ray))
    report.require(
        len(star.maximal_cones) == report["star_cones"],
        {"star_maximal_cones": len(star.maximal_cones), "cones_containing_ray": report["star_cones"]},
    )
    report["sigma_prime_cones"] = len(sigma_prime.maximal_cones)
    report["sigma_double_prime_cones"] = len(sigma_double_prime.maximal_cones)
    report["e_A_is_ray"] = fan.index_of((1,) * len(pi.source)) is not None
    return report


# splitting ------------------------------------------------------------------


def _fiber_blocks(pi: Caging) -> List[List[int]]:
    return [helpers.bits(pi.fiber(j)) for j in range(len(pi.target))]


def fiber_product_fan(pi: Caging) -> Fan:
    """Returns Σ_{A_1} × ... × Σ_{A_n}, one simplex fan per fiber."""
    blocks = _fiber_blocks(pi)
    labels = [pi.source[i] for block in blocks for i in block[:-1]]
    fans = [simplex_fan(GroundOrder(pi.source[i] for i in block)) for block in blocks]
    return product_of_fans(fans, GroundOrder(labels))


def fiber_projection(pi: Caging, raw: Sequence[int]) -> Tuple[int, ...]:
    """
    Returns φ(x): per fiber, the coordinates minus the fiber's last one,
    which is dropped. Kills e_A, so it is defined on ℝ^A/ℝe_A.
    """
    result = []
    for block in _fiber_blocks(pi):
        last = raw[block[-1]]
        result.extend(raw[i] - last for i in block[:-1])
    return tuple(result)


def check_splitting(pi: Caging, b: BuildingSet) -> Report:
    """
    Checks that Σ(π*B) splits as the fan of a fibration with base Σ(B) and
    fiber Σ_{A_1} × ... × Σ_{A_n}:

    (a) ι: ē_S ↦ ē_{π⁻¹(S)} maps every cone of Σ(B) onto a cone of Σ(π*B);
    (b) the cones σ_(I,∅) form a subfan mapped by φ one to one onto the
        fiber product fan, primitive generators to primitive generators;
    (c) every maximal cone is σ_(I,∅) + ι(σ_N) for a π-pair (I, N).

    Also checks |max Σ(π*B)| = |max fiber| · |max Σ(B)| with the fiber count
    measured on the fiber fan, which must equal a_1 ⋯ a_n.

    :raise: NotConnected, GroundMismatch
    """
    if not b.connected:
        raise NotConnected(f"{b} is not connected")
    report = Report("splitting", f"cage {pi.uname} B={b.describe()}")
    pulled = pullback_building_set(b, pi)
    total = nested_fan(pulled)
    base = nested_fan(b)
    ambient = total.ambient

    for nested in enumerate_nested_sets(b):
        image = [total.index_of(ambient.indicator(pi.preimage(m))) for m in nested]
        report.require(
            None not in image and total.has_cone(image),
            {"condition": "a", "nested": [b.ground.labels(m) for m in nested]},
        )

    fiber = fiber_product_fan(pi)
    images = set()
    for theta in _sections(pi, pi.target.full_mask):
        I = pi.source.full_mask & ~theta
        rays = [total.index_of(ambient.unit(i)) for i in helpers.bits(I)]
        witness = {"condition": "b", "I": pi.source.labels(I)}
        if None in rays or not total.has_cone(rays):
            report.fail(witness)
            continue
        projected = [fiber_projection(pi, ambient.lift(total.rays[r])) for r in rays]
        if any(helpers.gcd_all(v) != 1 for v in projected):
            report.fail(dict(witness, reason="image is not primitive"))
            continue
        try:
            cone = Cone(fiber.ambient, projected)
        except DependentGenerators:
            report.fail(dict(witness, reason="image is not a cone"))
            continue
        report.require(cone.is_smooth(), dict(witness, reason="image is singular"))
        images.add(cone.generators)
    report.require(
        len(images) == len(fiber.maximal_cones)
        and fan_equal(Fan.from_cones(fiber.ambient, images), fiber),
        {"condition": "b", "images": len(images), "fiber_cones": len(fiber.maximal_cones)},
    )

    members = {ambient.indicator(m): m for m in pulled.proper()}
    for cone in total.maximal_cones:
        I, downstairs, stray = 0, [], []
        for r in cone:
            m = members.get(total.rays[r])
            if m is not None and pi.preimage(pi.image(m)) == m:
                downstairs.append(pi.image(m))
            elif m is not None and helpers.popcount(m) == 1:
                I |= m
            else:
                stray.append(list(total.rays[r]))
        report.require(
            not stray and not pi.saturated(I) and is_nested(b, downstairs),
            {"condition": "c", "cone": list(cone), "stray": stray},
        )

    fiber_count = len(fiber.maximal_cones)
    report.require(fiber_count == math.prod(pi.cage), {"condition": "count", "fiber": fiber_count})
    counts = {
        "total": len(total.maximal_cones),
        "fiber": fiber_count,
        "base": len(base.maximal_cones),
    }
    report.require(counts["total"] == fiber_count * counts["base"], dict(counts, condition="count"))
    report["counts"] = counts
    return report


# T^a_LM ---------------------------------------------------------------------


def _check_tlm_cage(a: Sequence[int]) -> Tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if len(a) < 2:
        raise BadCage(f"cage {a} needs at least two entries")
    if any(x <= 0 for x in a):
        raise BadCage(f"cage entries must be positive: {a}")
    return a


def lower_caging(a: Sequence[int]) -> Caging:
    """Returns ρ: A⁻ → [n-1], the caging a restricted to π⁻¹([n-1])."""
    a = _check_tlm_cage(a)
    return Caging.from_cage(a).restrict(helpers.full_mask(len(a) - 1))


def delta_I_cone(a: Sequence[int], I: Iterable[int]) -> Cone:
    """
    Returns cone(ē_j | j ∈ ρ⁻¹(I ∖ {n})) in ℝ^{A⁻}/ℝe, the cone of the
    torus invariant locus δ_I.

    :param I: subset of 1..n containing n, 2 <= |I| < n
    :raise: NonToricLocus if n ∉ I
    :raise: InvalidIndexSet if I is out of range
    """
    a = _check_tlm_cage(a)
    n = len(a)
    I = set(int(i) for i in I)
    if n not in I:
        raise NonToricLocus(f"δ_I for I = {sorted(I)} is not torus invariant")
    if not I <= set(range(1, n + 1)) or not 2 <= len(I) < n:
        raise InvalidIndexSet(f"I = {sorted(I)} must satisfy 2 <= |I| < {n} inside 1..{n}")
    rho = lower_caging(a)
    ambient = AmbientSpace.quotient(rho.source)
    K = helpers.mask_of(i - 1 for i in I if i != n)
    return Cone(ambient, [ambient.unit(j) for j in helpers.bits(rho.preimage(K))])


def tlm_blowup_fan(a: Sequence[int], verify: bool = True) -> Fan:
    """
    Returns the fan of T^a_LM: the fan of ℙ^{|A⁻|-1} star-subdivided along
    every δ_I cone (n ∈ I ⊊ [n], |I| ≥ 2) with |I| nonincreasing. Cones that
    are rays leave the fan unchanged.

    :raise: BadCage
    :raise: InvariantViolation if verify is set and the result differs from
        the polypermutohedral fan of ρ
    """
    a = _check_tlm_cage(a)
    n = len(a)
    rho = lower_caging(a)
    fan = simplex_fan(rho.source)
    lower = helpers.full_mask(n - 1)
    for K in sorted(range(1, lower), key=lambda m: (-helpers.popcount(m), m)):
        I = [i + 1 for i in helpers.bits(K)] + [n]
        fan = star_subdivision(fan, delta_I_cone(a, I))
    if verify and not fan_equal(fan, polypermutohedral_fan(rho)):
        raise InvariantViolation(f"T^a_LM fan for cage {a} is not polypermutohedral")
    return fan


def check_tlm_blowup(a: Sequence[int]) -> Report:
    """Checks the T^a_LM blow-up fan against the polypermutohedral fan of ρ."""
    a = _check_tlm_cage(a)
    report = Report("tlm", f"cage {cage_spec(a)}")
    fan = tlm_blowup_fan(a, verify=False)
    expected = polypermutohedral_fan(lower_caging(a))
    report.require(fan_equal(fan, expected), {"got": fan.uname, "expected": expected.uname})
    report["maximal_cones"] = len(fan.maximal_cones)
    return report


# refinement -----------------------------------------------------------------


def check_refinement_chain(pi: Caging, pi_prime: Caging) -> Report:
    """
    Checks, for π finer than π' on the same source, that
    (a) π'*B'_LM ⊆ π*B_LM, (b) Σ(π*B_LM) refines Σ(π'*B'_LM), and
    (c) subdividing Σ(π'*B'_LM) along σ_G for the new members G, largest
    first, gives Σ(π*B_LM).

    :raise: NotARefinement, GroundMismatch
    """
    if not pi.refines(pi_prime):
        raise NotARefinement(f"{pi.describe()} does not refine {pi_prime.describe()}")
    report = Report("refinement", f"{pi.describe()} -> {pi_prime.describe()}")
    fine = pullback_building_set(boolean_building_set(pi.target), pi)
    coarse = pullback_building_set(boolean_building_set(pi_prime.target), pi_prime)
    fine_fan = nested_fan(fine)
    coarse_fan = nested_fan(coarse)
    missing = coarse.members - fine.members
    report.require(not missing, {"condition": "a", "missing": [pi.source.labels(m) for m in sorted(missing)]})
    report.require(fan_refines(fine_fan, coarse_fan), {"condition": "b"})
    extra = fine.members - coarse.members
    subdivided = subdivide_along_members(coarse_fan, coarse, extra)
    report.require(
        fan_equal(subdivided, fine_fan),
        {"condition": "c", "got": subdivided.uname, "expected": fine_fan.uname},
    )
    report["subdivisions"] = len(extra)
    return report


def _partition_key(pi: Caging) -> Tuple[int, ...]:
    return tuple(sorted(pi.fibers()))


def identity_over_coarse_chain(a: Sequence[int]) -> Report:
    """
    Checks the chain of cagings from the identity on A⁻ to ρ, merging one
    element into its ρ-fiber at a time; each step is a refinement chain.
    """
    rho = lower_caging(a)
    report = Report("identity-over-coarse", f"cage {cage_spec(a)}")
    blocks = [1 << i for i in range(len(rho.source))]
    chain = [Caging.from_partition(rho.source, blocks)]
    report.require(chain[0].is_identity(), {"chain_start": chain[0].uname})
    for fiber in rho.fibers():
        positions = helpers.bits(fiber)
        for i in positions[1:]:
            blocks = [blk for blk in blocks if blk != 1 << i]
            head = next(k for k, blk in enumerate(blocks) if blk >> positions[0] & 1)
            blocks[head] |= 1 << i
            chain.append(Caging.from_partition(rho.source, blocks))
    for finer, coarser in zip(chain, chain[1:]):
        report.merge(check_refinement_chain(finer, coarser))
    report.require(_partition_key(chain[-1]) == _partition_key(rho), {"chain_end": chain[-1].uname})
    report["steps"] = len(chain) - 1
    return report


def refinement_pairs(size: int) -> List[Tuple[Caging, Caging]]:
    """Returns every pair (π, π') of cagings of {1..size} with π finer than π'."""
    source = GroundOrder.canonical(size)
    cagings = [Caging.from_partition(source, blocks) for blocks in set_partitions(size)]
    return [(pi, other) for pi in cagings for other in cagings if pi.refines(other)]

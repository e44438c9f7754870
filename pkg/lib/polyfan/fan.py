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
Contains the Fan class and the fan operations: validation, star
subdivision, comparison and the star of a ray.
"""

import itertools
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from polyfan import helpers
from polyfan.base import Entity
from polyfan.errors import (
    AmbientMismatch,
    ConeNotInFan,
    DependentGenerators,
    NotARay,
    ParseError,
)
from polyfan.lattice import (
    AmbientSpace,
    Coords,
    Cone,
    GroundOrder,
    IntVector,
    frame,
    is_independent,
    is_unimodular,
    nullspace,
    primitive_coords,
    unimodular_reducer,
)
from polyfan.logger import log
from polyfan.report import Report

# attempts at finding a generic interior point before giving up
GENERIC_POINT_ATTEMPTS = 8


class Fan(Entity):
    """
    Simplicial fan stored by its rays (primitive, canonical coordinates) and
    its maximal cones (sorted ray index tuples). Rays and cones are kept in
    canonical order, so two fans with the same cones compare equal.
    """

    entity_type = "Fan"
    fields = ["ambient", "maximal_cones", "rays"]
    extension = ".fan.json"

    def __init__(self, ambient: AmbientSpace, rays: Iterable, maximal_cones: Iterable):
        """
        :param ambient: the ambient space
        :param rays: canonical coordinates (or IntVectors) of the rays
        :param maximal_cones: iterables of indices into rays
        """
        rays = [r.coords if isinstance(r, IntVector) else tuple(r) for r in rays]
        cones = []
        for cone in maximal_cones:
            cone = tuple(cone)
            for i in cone:
                if not isinstance(i, int) or not 0 <= i < len(rays):
                    raise ParseError(f"ray index {i!r} out of range")
            cones.append([rays[i] for i in cone])
        self._build(ambient, cones)

    @classmethod
    def from_cones(cls, ambient: AmbientSpace, cones: Iterable[Iterable]) -> "Fan":
        """Returns the fan whose maximal cones are spanned by the given generator lists."""
        fan = cls.__new__(cls)
        fan._build(ambient, [[g.coords if isinstance(g, IntVector) else tuple(g) for g in c] for c in cones])
        return fan

    def _build(self, ambient: AmbientSpace, cones: List[List[Coords]]):
        ray_set = set()
        generator_sets = []
        for cone in cones:
            gens = set()
            for g in cone:
                if len(g) != ambient.dim:
                    raise ParseError(f"ray {g} has wrong length for {ambient}")
                gens.add(primitive_coords(helpers.checked_vector(g)))
            ray_set.update(gens)
            generator_sets.append(frozenset(gens))
        rays = tuple(sorted(ray_set))
        index = {r: i for i, r in enumerate(rays)}
        unique = set(frozenset(index[g] for g in gens) for gens in generator_sets)
        maximal = [c for c in unique if not any(c < other for other in unique)]
        self.ambient = ambient
        self.rays = rays
        self.ray_index = index
        self.maximal_cones = tuple(sorted(tuple(sorted(c)) for c in maximal))

    def __eq__(self, other):
        return (
            isinstance(other, Fan)
            and self.ambient == other.ambient
            and self.rays == other.rays
            and self.maximal_cones == other.maximal_cones
        )

    def __hash__(self):
        return hash((self.rays, self.maximal_cones))

    @property
    def uname(self) -> str:
        return f"{len(self.rays)} rays, {len(self.maximal_cones)} cones"

    @property
    def dim(self) -> int:
        return self.ambient.dim

    def generators(self, cone: Sequence[int]) -> Tuple[Coords, ...]:
        return tuple(self.rays[i] for i in cone)

    def cone(self, position: int) -> Cone:
        """Returns maximal cone number position as a Cone."""
        return Cone(self.ambient, self.generators(self.maximal_cones[position]))

    def cones(self) -> List[Cone]:
        return [self.cone(i) for i in range(len(self.maximal_cones))]

    def ray_vectors(self) -> List[IntVector]:
        return [IntVector(self.ambient, r) for r in self.rays]

    def index_of(self, v) -> Optional[int]:
        """Returns the index of the ray through v, or None."""
        coords = v.coords if isinstance(v, IntVector) else tuple(v)
        if not any(coords):
            return None
        return self.ray_index.get(primitive_coords(coords))

    def cones_containing(self, ray: int) -> List[Tuple[int, ...]]:
        return [c for c in self.maximal_cones if ray in c]

    def has_cone(self, rays: Iterable[int]) -> bool:
        """True if the ray index set spans a face of some maximal cone."""
        rays = set(rays)
        return any(rays <= set(c) for c in self.maximal_cones)

    def faces(self) -> List[Tuple[int, ...]]:
        """Returns all cones of the fan as sorted ray index tuples."""
        result = set()
        for c in self.maximal_cones:
            for k in range(len(c) + 1):
                result.update(itertools.combinations(c, k))
        return sorted(result, key=lambda c: (len(c), c))

    def to_data(self) -> dict:
        return {
            "ambient": self.ambient.to_data(),
            "rays": [list(r) for r in self.rays],
            "maximal_cones": [list(c) for c in self.maximal_cones],
        }

    @classmethod
    def from_data(cls, data: dict) -> "Fan":
        try:
            ambient = AmbientSpace.from_data(data["ambient"])
            return cls(ambient, [tuple(int(x) for x in r) for r in data["rays"]], data["maximal_cones"])
        except (KeyError, TypeError) as err:
            raise ParseError(f"malformed fan: {err}")


def simplex_fan(ground: GroundOrder) -> Fan:
    """
    Returns Σ_E, the normal fan of the simplex, in ℝ^E/ℝe_E: rays ē_i and a
    maximal cone for every set of n-1 of them.
    """
    ambient = AmbientSpace.quotient(ground)
    n = len(ground)
    if n == 1:
        return Fan.from_cones(ambient, [[]])
    units = [ambient.unit(i) for i in range(n)]
    return Fan.from_cones(ambient, itertools.combinations(units, n - 1))


def product_of_fans(fans: Sequence[Fan], ground: GroundOrder) -> Fan:
    """
    Returns the product fan in full mode over ground, whose coordinates are
    the concatenated canonical coordinates of the factors.
    """
    total = sum(f.dim for f in fans)
    if total != len(ground):
        raise ParseError(f"product of dimension {total} does not match {ground}")
    ambient = AmbientSpace.full(ground)
    offsets = list(itertools.accumulate([0] + [f.dim for f in fans]))

    def pad(ray, k):
        return (0,) * offsets[k] + tuple(ray) + (0,) * (total - offsets[k] - len(ray))

    cones = []
    for choice in itertools.product(*[f.maximal_cones for f in fans]):
        cones.append([pad(fans[k].rays[i], k) for k, cone in enumerate(choice) for i in cone])
    return Fan.from_cones(ambient, cones)


# validation -----------------------------------------------------------------


def _facet_map(f: Fan) -> Dict[Tuple[int, ...], List[Tuple[int, int]]]:
    """Returns facet -> [(cone position, opposite ray)]."""
    facets = {}
    for position, cone in enumerate(f.maximal_cones):
        for ray in cone:
            facet = tuple(i for i in cone if i != ray)
            facets.setdefault(facet, []).append((position, ray))
    return facets


def _opposite_sides(f: Fan, first: Tuple[int, int], second: Tuple[int, int]) -> bool:
    """True if the opposite rays of two cones sharing a facet lie on opposite sides."""
    cone = f.maximal_cones[first[0]]
    signs = frame(f.generators(cone)).signs(f.rays[second[1]])
    return signs is not None and signs[cone.index(first[1])] < 0


def _degree(f: Fan) -> Optional[int]:
    """
    Returns the number of maximal cones containing a generic point of the
    first cone in their interior, or None if no generic point was found.
    """
    base = f.generators(f.maximal_cones[0])
    frames = [frame(f.generators(c)) for c in f.maximal_cones]
    for attempt in range(GENERIC_POINT_ATTEMPTS):
        weights = [1 + j + attempt * j * j for j in range(len(base))]
        point = tuple(sum(w * g[axis] for w, g in zip(weights, base)) for axis in range(f.dim))
        count = 0
        generic = True
        for fr in frames:
            signs = fr.signs(point)
            if signs is None:
                continue
            if all(s > 0 for s in signs):
                count += 1
            elif all(s >= 0 for s in signs):
                generic = False
                break
        if generic:
            return count
    return None


def _separates(f: Fan, first: Tuple[int, ...], second: Tuple[int, ...]) -> bool:
    """
    True if the dual functional of first summed over its rays outside second
    is nonpositive on second, which certifies first ∩ second is their common face.
    """
    fr = frame(f.generators(first))
    shared = set(first) & set(second)
    positions = [k for k, i in enumerate(first) if i not in shared]
    sign = 1 if fr.det > 0 else -1
    for i in second:
        if i in shared:
            continue
        nums = fr.numerators(f.rays[i])
        if nums is None:
            return False
        if sign * sum(nums[k] for k in positions) > 0:
            return False
    return True


def _relation(f: Fan, first: Tuple[int, ...], second: Tuple[int, ...]) -> Optional[Dict[str, str]]:
    """
    Returns a relation Σ α g - Σ β h + Σ γ s = 0 with α, β ≥ 0 not all zero,
    g, h the rays of first and second outside their common face and s the
    shared rays, or None. Such a relation exists iff no hyperplane separates
    the two cones along their common face, so None certifies that first ∩
    second is that face. Only minimal supports are searched, since the
    extreme rays of the cone of relations have one-dimensional kernels.
    """
    shared = [i for i in first if i in second]
    own = [(i, 1) for i in first if i not in shared] + [(i, -1) for i in second if i not in shared]
    common = [f.rays[i] for i in shared]
    for size in range(1, len(own) + 1):
        for support in itertools.combinations(own, size):
            columns = [tuple(s * x for x in f.rays[i]) for i, s in support] + common
            basis = nullspace(tuple(columns))
            if len(basis) != 1:
                continue
            head = [Fraction(int(c.p), int(c.q)) for c in basis[0][:size]]
            if all(c > 0 for c in head) or all(c < 0 for c in head):
                scale = 1 if head[0] > 0 else -1
                return {("+" if s > 0 else "-") + str(i): str(scale * c) for c, (i, s) in zip(head, support)}
    return None


def completeness_witnesses(f: Fan) -> List[Coords]:
    """
    Returns the test directions for coverage: ±rays, pairwise ray sums and a
    point just across each facet of each maximal cone.
    """
    points = set()
    for r in f.rays:
        points.add(r)
        points.add(tuple(-x for x in r))
    for a, b in itertools.combinations(f.rays, 2):
        s = tuple(x + y for x, y in zip(a, b))
        if any(s):
            points.add(s)
    for cone in f.maximal_cones:
        gens = f.generators(cone)
        for k in range(len(gens)):
            w = tuple(
                sum(g[axis] for j, g in enumerate(gens) if j != k) - gens[k][axis]
                for axis in range(f.dim)
            )
            if any(w):
                points.add(w)
    return sorted(points)


def fan_locate(f: Fan, point: Sequence[int], candidates: Iterable[int] = None) -> Optional[int]:
    """Returns the position of a maximal cone containing point, or None."""
    order = list(candidates or []) + list(range(len(f.maximal_cones)))
    seen = set()
    for position in order:
        if position in seen:
            continue
        seen.add(position)
        cone = f.maximal_cones[position]
        try:
            if frame(f.generators(cone)).contains(point):
                return position
        except DependentGenerators:
            continue
    return None


def fan_validate(f: Fan) -> Report:
    """
    Returns a report with the flags is_fan, is_simplicial, is_smooth and
    is_complete. Failures are described in the witnesses.
    """
    report = Report("fan-validate", f.uname)
    flags = {"is_fan": True, "is_simplicial": True, "is_smooth": True, "is_complete": True}

    def flag(name, witness):
        flags[name] = False
        report.fail(dict(witness, flag=name))

    if not f.maximal_cones:
        flag("is_complete", {"reason": "no cones"})
    for cone in f.maximal_cones:
        gens = f.generators(cone)
        if not is_independent(gens):
            flag("is_simplicial", {"cone": list(cone)})
            flags["is_smooth"] = False
        elif not is_unimodular(gens):
            flag("is_smooth", {"cone": list(cone)})
    if not flags["is_simplicial"]:
        flag("is_fan", {"reason": "non-simplicial cones are not checked"})
        flags["is_complete"] = False
        report.update(flags)
        return report

    if f.dim == 0:
        report.update(flags)
        return report

    pure = all(len(c) == f.dim for c in f.maximal_cones) and bool(f.maximal_cones)
    closed = False
    if pure:
        facets = _facet_map(f)
        closed = True
        for facet, owners in sorted(facets.items()):
            if len(owners) == 1:
                closed = False
            elif len(owners) > 2:
                flag("is_fan", {"facet": list(facet), "cones": [o[0] for o in owners]})
            elif not _opposite_sides(f, owners[0], owners[1]):
                flag("is_fan", {"facet": list(facet), "cones": [o[0] for o in owners], "reason": "same side"})
    if pure and closed and flags["is_fan"]:
        degree = _degree(f)
        if degree == 1:
            report.update(flags)
            return report
        if degree is not None:
            flag("is_fan", {"reason": "covering degree", "degree": degree})
            report.update(flags)
            return report

    if flags["is_fan"]:
        for first, second in itertools.combinations(f.maximal_cones, 2):
            if _separates(f, first, second) or _separates(f, second, first):
                continue
            relation = _relation(f, first, second)
            if relation is not None:
                flag("is_fan", {"cones": [list(first), list(second)], "relation": relation})
                break

    if not (pure and closed):
        uncovered = []
        for w in completeness_witnesses(f):
            if fan_locate(f, w) is None:
                uncovered.append(list(w))
        flag("is_complete", {"uncovered": uncovered[:10], "pure": pure})
    report.update(flags)
    return report


# operations -----------------------------------------------------------------


def _check_ambient(f: Fan, g) -> None:
    if f.ambient != g.ambient:
        raise AmbientMismatch(f.ambient, g.ambient)


def star_subdivision(f: Fan, tau: Cone) -> Fan:
    """
    Returns the barycentric subdivision of f along tau: every cone containing
    tau is replaced by the cones obtained by swapping one generator of tau for
    the primitive generator of the sum of tau's generators.

    :raise: ConeNotInFan if tau is not a cone of f
    """
    _check_ambient(f, tau)
    rays = [f.ray_index.get(g) for g in tau.generators]
    if None in rays or not f.has_cone(rays):
        raise ConeNotInFan(tau)
    if len(rays) <= 1:
        return f
    new_ray = primitive_coords(tau.interior_point())
    rays = set(rays)
    cones = []
    for cone in f.maximal_cones:
        if rays <= set(cone):
            for v in rays:
                cones.append([f.rays[i] for i in cone if i != v] + [new_ray])
        else:
            cones.append(list(f.generators(cone)))
    log.debug(f"subdivided {len(cones)} cones along {tau}")
    return Fan.from_cones(f.ambient, cones)


def fan_equal(f: Fan, g: Fan) -> bool:
    """
    True iff f and g have the same rays and maximal cones.

    :raise: AmbientMismatch
    """
    _check_ambient(f, g)
    return f.rays == g.rays and f.maximal_cones == g.maximal_cones


def _covers(coarse: Fan, cone: Tuple[int, ...], fine: Fan, inside: List[Tuple[int, ...]]) -> bool:
    """
    True if the fine cones inside a coarse cone cover it: every facet of a
    top-dimensional fine cone is either shared within the cone or lies on
    the boundary of the coarse cone.
    """
    top = [c for c in inside if len(c) == len(cone)]
    if not top:
        return False
    if not cone:
        return True
    coarse_frame = frame(coarse.generators(cone))
    facets = {}
    for c in top:
        for ray in c:
            facets.setdefault(tuple(i for i in c if i != ray), []).append(c)
    for facet, owners in facets.items():
        if len(owners) == 2:
            continue
        if len(owners) > 2:
            return False
        zero = set(range(len(cone)))
        for i in facet:
            signs = coarse_frame.signs(fine.rays[i])
            zero &= {k for k, s in enumerate(signs) if s == 0}
        if not zero:
            return False
    return True


def fan_refines(fine: Fan, coarse: Fan) -> bool:
    """
    True iff fine and coarse have the same support and every maximal cone of
    fine lies in a cone of coarse.

    :raise: AmbientMismatch
    """
    _check_ambient(fine, coarse)
    frames = {c: frame(coarse.generators(c)) for c in coarse.maximal_cones}
    inside = {c: [] for c in coarse.maximal_cones}
    for cone in fine.maximal_cones:
        gens = fine.generators(cone)
        hosts = [c for c, fr in frames.items() if all(fr.contains(g) for g in gens)]
        if not hosts:
            return False
        for c in hosts:
            inside[c].append(cone)
    return all(_covers(coarse, c, fine, inside[c]) for c in coarse.maximal_cones)


def _quotient_by_ray(ambient: AmbientSpace, rho: Coords):
    """
    Returns (ambient, projection) for the lattice quotient by ℤrho, using the
    canonical quotient when rho = ±(1,...,1) in full mode, the elimination of
    a ±1 coordinate when there is one, and a unimodular reduction otherwise.
    """
    d = len(rho)
    if not ambient.is_quotient and set(rho) in ({1}, {-1}) and d > 0:
        target = AmbientSpace.quotient(ambient.ground)
        return target, target.reduce
    labels = list(ambient.ground)[:d]
    units = [k for k in range(d) if abs(rho[k]) == 1]
    if units:
        k = units[-1]
        target = AmbientSpace.full(GroundOrder(labels[:k] + labels[k + 1:]))

        def project(v):
            return tuple(v[i] - rho[k] * v[k] * rho[i] for i in range(d) if i != k)

        return target, project
    matrix = unimodular_reducer(rho)
    target = AmbientSpace.full(GroundOrder(f"u{i}" for i in range(1, d)))

    def project(v):
        return tuple(helpers.dot(row, v) for row in matrix[1:])

    return target, project


def star_of_ray(f: Fan, rho) -> Fan:
    """
    Returns the fan in N/ℤρ formed by the images of the cones of f that
    contain ρ.

    :param rho: IntVector, or raw vector with one entry per ground element
    :raise: NotARay
    """
    coords = rho.coords if isinstance(rho, IntVector) else f.ambient.reduce(rho)
    i = f.index_of(coords)
    if i is None:
        raise NotARay(coords)
    ray = f.rays[i]
    ambient, project = _quotient_by_ray(f.ambient, ray)
    cones = []
    for cone in f.cones_containing(i):
        cones.append([project(f.rays[j]) for j in cone if j != i])
    return Fan.from_cones(ambient, cones)


def open_star_subfans(f: Fan, rho) -> Tuple[Fan, Fan]:
    """
    Returns (Σ', Σ''): the cones of f that are faces of a cone containing ρ,
    and among those the ones not containing ρ.

    :raise: NotARay
    """
    coords = rho.coords if isinstance(rho, IntVector) else f.ambient.reduce(rho)
    i = f.index_of(coords)
    if i is None:
        raise NotARay(coords)
    containing = f.cones_containing(i)
    sigma_prime = Fan.from_cones(f.ambient, [f.generators(c) for c in containing])
    sigma_double_prime = Fan.from_cones(
        f.ambient, [[f.rays[j] for j in c if j != i] for c in containing]
    )
    return sigma_prime, sigma_double_prime

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
Contains integer polymatroid rank functions, their independence and base
polytopes, greedy vertices and the lattice-point checks.
"""

import itertools
import random
from typing import Iterable, List, Sequence, Tuple

from polyfan import config, helpers
from polyfan.base import Entity
from polyfan.caging import Caging
from polyfan.errors import (
    GroundMismatch,
    InvariantViolation,
    NotMonotone,
    NotNormalized,
    NotSubmodular,
    ParseError,
    PolyfanError,
)
from polyfan.lattice import GroundOrder
from polyfan.logger import log
from polyfan.report import Report

Point = Tuple[int, ...]


def _subset_key(ground: GroundOrder, mask: int) -> str:
    return ",".join(ground.labels(mask))


class RankFunction(Entity):
    """
    Normalized, monotone, submodular integer set function, stored as a table
    indexed by bitmask. The axioms are checked on construction.
    """

    entity_type = "RankFunction"
    fields = ["ground", "values"]

    def __init__(self, ground: GroundOrder, values: Sequence[int]):
        values = tuple(int(v) for v in values)
        if len(values) != 1 << len(ground):
            raise ParseError(f"expected {1 << len(ground)} values, got {len(values)}")
        self.ground = ground
        self.values = values
        self._check_axioms()

    def _check_axioms(self):
        f = self.values
        n = len(self.ground)
        if f[0] != 0:
            raise NotNormalized(f[0])
        for mask in range(1 << n):
            for i in range(n):
                bigger = mask | 1 << i
                if bigger != mask and f[mask] > f[bigger]:
                    raise NotMonotone(self.ground.labels(mask), self.ground.labels(bigger))
        for mask in range(1 << n):
            outside = [i for i in range(n) if not mask >> i & 1]
            for i, j in itertools.combinations(outside, 2):
                first, second = mask | 1 << i, mask | 1 << j
                if f[first] + f[second] < f[first | second] + f[mask]:
                    raise NotSubmodular(self.ground.labels(first), self.ground.labels(second))

    def __call__(self, mask: int) -> int:
        return self.values[mask]

    def __eq__(self, other):
        return isinstance(other, RankFunction) and self.ground == other.ground and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    @property
    def uname(self) -> str:
        return f"rank on {len(self.ground)}, f(E)={self.values[-1]}"

    def value(self, labels: Iterable) -> int:
        return self.values[self.ground.mask(labels)]

    def to_data(self) -> dict:
        return {
            "ground": list(self.ground),
            "values": {_subset_key(self.ground, m): v for m, v in enumerate(self.values)},
        }

    @classmethod
    def from_data(cls, data: dict) -> "RankFunction":
        try:
            ground = GroundOrder(data["ground"])
            table = {}
            for key, value in data["values"].items():
                labels = [k for k in key.split(",") if k]
                table[ground.mask(labels)] = int(value)
        except (KeyError, TypeError, AttributeError) as err:
            raise ParseError(f"malformed rank function: {err}")
        return validate_rank(ground, table)


def validate_rank(ground: GroundOrder, table) -> RankFunction:
    """
    Returns the rank function given by table.

    :param table: sequence indexed by mask, or dict mask -> value
    :raise: ParseError if a subset is missing
    :raise: NotNormalized, NotMonotone, NotSubmodular
    """
    if isinstance(table, dict):
        missing = [m for m in range(1 << len(ground)) if m not in table]
        if missing:
            raise ParseError(f"no value for {ground.labels(missing[0])}")
        table = [table[m] for m in range(1 << len(ground))]
    return RankFunction(ground, table)


def perm_rank(n: int) -> RankFunction:
    """Returns f(S) = n + (n-1) + ... + (n-|S|+1) on ("1", ..., "n")."""
    ground = GroundOrder.canonical(n)
    return RankFunction(ground, [sum(n - t for t in range(helpers.popcount(m))) for m in range(1 << n)])


def stellahedron_rank(n: int) -> RankFunction:
    """Rank function whose independence polytope is the stellahedron."""
    return perm_rank(n)


def expansion(f: RankFunction, pi: Caging) -> RankFunction:
    """
    Returns the rank function S ↦ f(π(S)) on the source of π.

    :raise: GroundMismatch
    """
    if pi.target != f.ground:
        raise GroundMismatch(list(f.ground), list(pi.target))
    return RankFunction(pi.source, [f(pi.image(m)) for m in range(1 << len(pi.source))])


def random_rank(n: int, seed: int = None) -> RankFunction:
    """
    Returns a random polymatroid on n elements: a modular function capped by
    random truncations S ↦ c + |S ∩ T|·d, each kept only if the result is
    still a polymatroid.
    """
    rng = random.Random(config.POLYFAN_SEED if seed is None else seed)
    ground = GroundOrder.canonical(n)
    weights = [rng.randint(0, 3) for _ in range(n)]
    values = [sum(weights[i] for i in helpers.bits(m)) for m in range(1 << n)]
    for _ in range(rng.randint(1, 4)):
        T = rng.randint(0, (1 << n) - 1)
        c = rng.randint(0, 4)
        d = rng.randint(0, 2)
        capped = [0] + [min(values[m], c + helpers.popcount(m & T) * d) for m in range(1, 1 << n)]
        try:
            RankFunction(ground, capped)
        except PolyfanError:
            continue
        values = capped
    return RankFunction(ground, values)


class IndependencePolytope(Entity):
    """
    I(f) = {x ≥ 0 : x_S ≤ f(S) for all S}, or the base polytope B(f) when
    base is set (adds x_E = f(E)).
    """

    entity_type = "IndependencePolytope"
    fields = ["base", "ground", "inequalities"]

    def __init__(self, rank: RankFunction, base: bool = False):
        self.rank = rank
        self.base = bool(base)
        self._vertices = None

    @property
    def uname(self) -> str:
        return ("B" if self.base else "I") + f"({self.rank.uname})"

    @property
    def dim(self) -> int:
        return len(self.rank.ground)

    def inequalities(self) -> List[Tuple[int, int]]:
        """Returns (mask, bound) for every x_S ≤ f(S), S nonempty."""
        return [(m, self.rank(m)) for m in range(1, 1 << self.dim)]

    def box(self) -> Point:
        """Returns upper bounds f({i}); the lower bounds are 0."""
        return tuple(self.rank(1 << i) for i in range(self.dim))

    def contains(self, x: Sequence[int]) -> bool:
        if len(x) != self.dim or any(v < 0 for v in x):
            return False
        for mask, bound in self.inequalities():
            if sum(x[i] for i in helpers.bits(mask)) > bound:
                return False
        return not self.base or sum(x) == self.rank(self.rank.ground.full_mask)

    def vertices(self) -> "VertexList":
        if self._vertices is None:
            self._vertices = greedy_vertices(self)
        return self._vertices

    def to_data(self) -> dict:
        ground = self.rank.ground
        return {
            "ground": list(ground),
            "base": self.base,
            "inequalities": [{"subset": ground.labels(m), "bound": b} for m, b in self.inequalities()],
        }

    @classmethod
    def from_data(cls, data: dict) -> "IndependencePolytope":
        try:
            ground = GroundOrder(data["ground"])
            table = {0: 0}
            for row in data["inequalities"]:
                table[ground.mask(row["subset"])] = int(row["bound"])
            return cls(validate_rank(ground, table), base=data["base"])
        except (KeyError, TypeError) as err:
            raise ParseError(f"malformed polytope: {err}")


def independence_polytope(f: RankFunction) -> IndependencePolytope:
    return IndependencePolytope(f, base=False)


def base_polytope(f: RankFunction) -> IndependencePolytope:
    return IndependencePolytope(f, base=True)


class VertexList(Entity):
    """Deduplicated, sorted integer points; complete marks a vertex superset."""

    entity_type = "VertexList"
    fields = ["complete", "vertices"]

    def __init__(self, vertices: Iterable[Sequence[int]], complete: bool = True):
        self.vertices = tuple(sorted(set(tuple(int(x) for x in v) for v in vertices)))
        self.complete = bool(complete)

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]

    @property
    def uname(self) -> str:
        return f"{len(self.vertices)} vertices"

    def to_data(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices], "complete": self.complete}

    @classmethod
    def from_data(cls, data: dict) -> "VertexList":
        try:
            return cls(data["vertices"], data["complete"])
        except (KeyError, TypeError) as err:
            raise ParseError(f"malformed vertex list: {err}")


def _greedy_point(f: RankFunction, order: Sequence[int], m: int) -> Point:
    point = [0] * m
    prefix = 0
    for i in order:
        point[i] = f(prefix | 1 << i) - f(prefix)
        prefix |= 1 << i
    return tuple(point)


def greedy_vertices(p: IndependencePolytope) -> VertexList:
    """
    Returns the greedy points of p: for every total order (base polytope) or
    every ordered subset (independence polytope), the point whose k-th
    coordinate in the order is the rank increment at step k.

    :raise: InvariantViolation if a greedy point violates an inequality
    """
    m = p.dim
    if p.base:
        orders = itertools.permutations(range(m))
    else:
        orders = itertools.chain.from_iterable(itertools.permutations(range(m), k) for k in range(m + 1))
    points = set(_greedy_point(p.rank, order, m) for order in orders)
    for point in points:
        if not p.contains(point):
            raise InvariantViolation(f"greedy point {point} is outside {p}")
    log.debug(f"{p}: {len(points)} greedy vertices")
    return VertexList(points, complete=True)


def lattice_points(p: IndependencePolytope) -> List[Point]:
    """Returns the lattice points of p, found in the box [0, f({i})]."""
    return [x for x in itertools.product(*(range(b + 1) for b in p.box())) if p.contains(x)]


def vertex_oracle_check(p: IndependencePolytope, radius: int = None) -> Report:
    """
    Compares the greedy vertex list with the lattice points of p: for every
    integer direction with entries in [-radius, radius] the two maxima must
    agree. Since p is integral this certifies the greedy list contains every
    vertex. Only run for |A| ≤ POLYFAN_ORACLE_MAX.
    """
    report = Report("vertex-oracle", p.uname)
    if p.dim > config.POLYFAN_ORACLE_MAX:
        report["skipped"] = True
        return report
    radius = radius or max(p.dim, 1)
    points = lattice_points(p)
    vertices = p.vertices().vertices
    members = set(points)
    for v in vertices:
        report.require(v in members, {"greedy_point_outside": list(v)})
    for w in itertools.product(range(-radius, radius + 1), repeat=p.dim):
        best = max(helpers.dot(w, x) for x in points)
        greedy = max(helpers.dot(w, x) for x in vertices)
        report.require(best == greedy, {"direction": list(w), "lattice_max": best, "greedy_max": greedy})
    report["lattice_points"] = len(points)
    return report


def recover_rank(p: IndependencePolytope) -> RankFunction:
    """Returns f_Q(S) = max{x_S | x ∈ Q}, maximizing over the greedy vertices."""
    vertices = p.vertices().vertices
    values = []
    for mask in range(1 << p.dim):
        positions = helpers.bits(mask)
        values.append(max(sum(v[i] for i in positions) for v in vertices))
    return RankFunction(p.rank.ground, values)


def _dominated(u: Point, v: Point) -> bool:
    return all(a <= b for a, b in zip(u, v))


def check_independence_characterization(points: Iterable[Sequence[int]], box: Sequence[int]) -> Report:
    """
    Checks that a set of lattice points in the box [0, box] is the set of
    lattice points of a polymatroid independence polytope: (1) it is closed
    downward, and (2) for every v in the box all maximal points below v have
    the same coordinate sum.
    """
    points = set(tuple(int(x) for x in p) for p in points)
    report = Report("independence-characterization", f"{len(points)} points")
    missing = set()
    for u in sorted(points):
        for v in itertools.product(*(range(x + 1) for x in u)):
            if v not in points and v not in missing:
                missing.add(v)
                report.fail({"condition": 1, "point": list(u), "missing": list(v)})
    for v in itertools.product(*(range(b + 1) for b in box)):
        below = [u for u in points if _dominated(u, v)]
        maximal = [u for u in below if not any(w != u and _dominated(u, w) for w in below)]
        sums = set(sum(u) for u in maximal)
        if len(sums) > 1:
            report.fail({"condition": 2, "v": list(v), "maximal": sorted(list(u) for u in maximal)})
    return report


def pushforward(x: Sequence[int], pi: Caging) -> Point:
    """Returns p_π(x), summing coordinates over each fiber."""
    result = [0] * len(pi.target)
    for i, j in enumerate(pi.mapping):
        result[j] += x[i]
    return tuple(result)


def expansion_lattice_check(f: RankFunction, pi: Caging) -> Report:
    """Checks that I(π*f) ∩ ℤ^A is the p_π-preimage of I(f) ∩ ℤ^E in the box."""
    expanded = independence_polytope(expansion(f, pi))
    target = independence_polytope(f)
    report = Report("expansion-lattice", f"cage {pi.uname}")
    for x in itertools.product(*(range(b + 1) for b in expanded.box())):
        left = expanded.contains(x)
        right = target.contains(pushforward(x, pi))
        report.require(left == right, {"point": list(x), "expanded": left, "pushforward": right})
    return report


def stellahedron_truncation_check(n: int) -> Report:
    """Checks I(f) ∩ ℤ^n = {u ≥ 0 | u ≤ v for some v ∈ B(f) ∩ ℤ^n} for f = perm_rank(n)."""
    f = perm_rank(n)
    independent = independence_polytope(f)
    bases = lattice_points(base_polytope(f))
    report = Report("stellahedron-truncation", f"n={n}")
    for u in itertools.product(*(range(b + 1) for b in independent.box())):
        left = independent.contains(u)
        right = any(_dominated(u, v) for v in bases)
        report.require(left == right, {"point": list(u)})
    return report


def check_polymatroid(f: RankFunction, instance: str = None) -> Report:
    """
    Checks that the greedy vertices of I(f) recover f, that its lattice
    points satisfy the independence characterization and, for small ground
    sets, the vertex oracle.
    """
    report = Report("polymatroid", instance or f.uname)
    p = independence_polytope(f)
    recovered = recover_rank(p)
    report.require(recovered == f, {"recovered": recovered.to_data()["values"]})
    report.merge(check_independence_characterization(lattice_points(p), p.box()))
    if p.dim <= config.POLYFAN_ORACLE_MAX:
        report.merge(vertex_oracle_check(p))
    report["vertices"] = len(p.vertices())
    return report

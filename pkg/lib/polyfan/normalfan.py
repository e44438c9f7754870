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
Contains exact minimization over vertex lists and the inner normal fan check.

The inner normal fan uses the minimizer convention: the normal cone of a face
F is {w : <w, x> <= <w, y> for x in F, y in P}. Directions in quotient mode
are lifted with last coordinate 0, which is well defined on base polytopes.
"""

from fractions import Fraction
from typing import Tuple

from polyfan import helpers
from polyfan.enums import Mode
from polyfan.errors import EmptyVertexList
from polyfan.fan import Fan
from polyfan.lattice import IntVector
from polyfan.polymatroid import IndependencePolytope, VertexList
from polyfan.report import Report


class MinimizationResult(object):
    """Minimizers of <w, .> over a vertex list, by vertex index."""

    __slots__ = ("direction", "optimal_value", "optimal_face")

    def __init__(self, direction: Tuple[int, ...], optimal_value: Fraction, optimal_face: Tuple[int, ...]):
        self.direction = direction
        self.optimal_value = optimal_value
        self.optimal_face = optimal_face

    def __repr__(self):
        return '<MinimizationResult "{0} at {1}">'.format(self.optimal_value, list(self.optimal_face))

    @property
    def unique(self) -> bool:
        return len(self.optimal_face) == 1


def _raw_direction(w) -> Tuple[int, ...]:
    if isinstance(w, IntVector):
        return w.lift()
    return tuple(w)


def min_face(w, vertices: VertexList) -> MinimizationResult:
    """
    Returns the vertices minimizing <w, x>.

    :param w: IntVector, lifted in quotient mode, or a raw vector
    :param vertices: complete vertex list
    :raise: EmptyVertexList
    """
    points = vertices.vertices if isinstance(vertices, VertexList) else tuple(vertices)
    if not points:
        raise EmptyVertexList("cannot minimize over an empty vertex list")
    direction = _raw_direction(w)
    values = [helpers.dot(direction, x) for x in points]
    best = min(values)
    face = tuple(i for i, v in enumerate(values) if v == best)
    return MinimizationResult(direction, Fraction(best), face)


def _expected_mode(p: IndependencePolytope) -> Mode:
    return Mode.QUOTIENT if p.base else Mode.FULL


def check_inner_normal_fan(f: Fan, p: IndependencePolytope) -> Report:
    """
    Checks that f is the inner normal fan of p:

    (a) at the ray sum of every maximal cone the minimizer is one vertex;
    (b) that vertex also attains the minimum at each ray of the cone;
    (c) cones and vertices correspond one to one.

    Base polytopes pair with quotient fans, independence polytopes with full
    fans; any other pairing fails.
    """
    report = Report("inner-normal-fan", f"{f.uname} vs {p.uname}")
    if f.ambient.mode != _expected_mode(p) or len(f.ambient.ground) != p.dim:
        report.fail({"ambient": repr(f.ambient), "polytope": p.uname})
        return report

    vertices = p.vertices()
    if not vertices.complete:
        report.fail({"reason": "vertex list is not complete"})
        return report
    assigned = {}
    for cone in f.maximal_cones:
        gens = f.generators(cone)
        interior = tuple(sum(col) for col in zip(*gens)) if gens else (0,) * f.dim
        result = min_face(IntVector(f.ambient, interior), vertices)
        if not result.unique:
            report.fail({"condition": "a", "cone": list(cone), "face": [list(vertices[i]) for i in result.optimal_face]})
            continue
        vertex = result.optimal_face[0]
        for ray in gens:
            per_ray = min_face(IntVector(f.ambient, ray), vertices)
            report.require(
                vertex in per_ray.optimal_face,
                {"condition": "b", "cone": list(cone), "ray": list(ray), "vertex": list(vertices[vertex])},
            )
        assigned[cone] = vertex

    used = sorted(set(assigned.values()))
    report.require(
        len(used) == len(assigned) == len(f.maximal_cones) == len(vertices),
        {
            "condition": "c",
            "cones": len(f.maximal_cones),
            "vertices": len(vertices),
            "assigned": len(used),
        },
    )
    report["bijection"] = {",".join(str(i) for i in cone): list(vertices[v]) for cone, v in sorted(assigned.items())}
    return report


def negated_fan(f: Fan) -> Fan:
    """Returns the fan with every ray negated."""
    return Fan.from_cones(f.ambient, [[tuple(-x for x in g) for g in f.generators(c)] for c in f.maximal_cones])
